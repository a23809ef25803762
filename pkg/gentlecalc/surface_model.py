"""
Combinatorial marked surfaces.

A :class:`PolygonComplex` records a simple coordinate as polygons glued along
arcs. Each arc has two edge slots, tagged ``+`` and ``-``. Boundary polygons list
their edges clockwise starting after their ∘-point; puncture polygons surround
a ∘-puncture. Arrows of the coordinate's algebra sit at polygon corners, from
an edge to its clockwise successor.

A :class:`Curve` carries no geometry: it is the sequence of arcs it crosses,
the side it enters each one from, and the move (successor or predecessor
edge) it makes inside each polygon between crossings.
"""

import functools
import logging
import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from gentlecalc.algebra_core import Arrow, GentleAlgebra, forbidden_threads
from gentlecalc.exceptions import (
    CurveError,
    DuplicateIdError,
    InfiniteDimensionError,
    ParseError,
    SurfaceError,
    UnknownReferenceError,
)
from gentlecalc.strings_bands import (
    Letter,
    Walk,
    canonical_band,
    canonical_string,
    injective_string,
    is_band,
    is_string,
    make_walk,
    projective_string,
)

logger = logging.getLogger(__name__)

BOUNDARY = "boundary"
PUNCTURE = "puncture"
SIDES = ("+", "-")

SUCC = "succ"
PRED = "pred"
JUMP = "jump"

Slot = Tuple[str, str]


def other_side(side: str) -> str:
    return "-" if side == "+" else "+"


def _start(slot: Slot) -> Tuple[str, int]:
    """Arc end where an edge slot begins: ``+`` runs from end 0 to end 1."""
    return (slot[0], 0 if slot[1] == "+" else 1)


def _finish(slot: Slot) -> Tuple[str, int]:
    return (slot[0], 1 if slot[1] == "+" else 0)


# ========== POLYGON COMPLEX ==========


@dataclass(frozen=True)
class Polygon:
    """
    One cell of the dissection.

    Attributes:
        id: Polygon name
        kind: "boundary" or "puncture"
        edges: Clockwise (arc, side) slots; boundary polygons start after the ∘-point
        arrows: Optional corner labels; corner k joins edge k to edge k+1
    """

    id: str
    kind: str
    edges: Tuple[Slot, ...]
    arrows: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in (BOUNDARY, PUNCTURE):
            raise SurfaceError(f"polygon {self.id}: unknown kind '{self.kind}'")
        if not self.edges:
            raise SurfaceError(f"polygon {self.id} has no edges")
        if self.arrows and len(self.arrows) != self.corner_count:
            raise SurfaceError(
                f"polygon {self.id}: {len(self.arrows)} arrow labels "
                f"for {self.corner_count} corners"
            )

    @property
    def size(self) -> int:
        return len(self.edges)

    @property
    def corner_count(self) -> int:
        return self.size if self.kind == PUNCTURE else self.size - 1

    @property
    def is_puncture(self) -> bool:
        return self.kind == PUNCTURE


@dataclass(frozen=True)
class SurfaceSummary:
    """Topological data derived from a polygon complex."""

    arcs: int
    polygons: int
    marked_points: int
    boundary_components: int
    punctures: int
    euler_characteristic: int
    genus: int
    orientable: bool = True

    def __str__(self) -> str:
        return (
            f"arcs={self.arcs} polygons={self.polygons} marked_points={self.marked_points} "
            f"boundary_components={self.boundary_components} punctures={self.punctures} "
            f"euler_characteristic={self.euler_characteristic} genus={self.genus} "
            f"orientable={str(self.orientable).lower()}"
        )


@dataclass(frozen=True)
class PolygonComplex:
    """
    A marked surface with a simple coordinate, as glued polygons.

    Raises:
        SurfaceError: If an arc is not used exactly twice, is glued with equal
            side tags, or a polygon is malformed
    """

    arcs: Tuple[str, ...]
    polygons: Tuple[Polygon, ...]
    _slots: Dict[Slot, Tuple[int, int]] = field(
        default_factory=dict, init=False, repr=False, compare=False
    )
    _corners: Dict[str, Tuple[int, int]] = field(
        default_factory=dict, init=False, repr=False, compare=False
    )

    def __post_init__(self):
        if len(set(self.arcs)) != len(self.arcs):
            raise SurfaceError("arc ids must be unique")
        if len({p.id for p in self.polygons}) != len(self.polygons):
            raise SurfaceError("polygon ids must be unique")
        uses: Dict[str, List[str]] = {a: [] for a in self.arcs}
        slots: Dict[Slot, Tuple[int, int]] = {}
        for pi, poly in enumerate(self.polygons):
            for k, (arc, side) in enumerate(poly.edges):
                if arc not in uses:
                    raise SurfaceError(f"polygon {poly.id} uses unknown arc '{arc}'")
                if side not in SIDES:
                    raise SurfaceError(f"polygon {poly.id}: bad side tag '{side}' on arc {arc}")
                uses[arc].append(side)
                slots[(arc, side)] = (pi, k)
        for arc, sides in uses.items():
            if len(sides) != 2:
                raise SurfaceError(f"arc {arc} is used {len(sides)} times (expected 2)")
            if sides[0] == sides[1]:
                raise SurfaceError(f"arc {arc} is glued non-orientably (both sides '{sides[0]}')")
        corners: Dict[str, Tuple[int, int]] = {}
        for pi, poly in enumerate(self.polygons):
            for k in range(poly.corner_count):
                name = self._corner_name(pi, k)
                if name in corners:
                    raise SurfaceError(f"duplicate corner label '{name}'")
                corners[name] = (pi, k)
        object.__setattr__(self, "_slots", slots)
        object.__setattr__(self, "_corners", corners)

    def _corner_name(self, pi: int, k: int) -> str:
        poly = self.polygons[pi]
        return poly.arrows[k] if poly.arrows else f"{poly.id}.{k + 1}"

    # ---------- lookups ----------

    def locate(self, slot: Slot) -> Tuple[int, int]:
        """(polygon index, edge index) of a slot."""
        try:
            return self._slots[slot]
        except KeyError:
            raise UnknownReferenceError("arc slot", f"{slot[0]}:{slot[1]}") from None

    def polygon_at(self, slot: Slot) -> Polygon:
        return self.polygons[self.locate(slot)[0]]

    def slot_at(self, pi: int, k: int) -> Slot:
        poly = self.polygons[pi]
        return poly.edges[k % poly.size]

    def corner_arrow(self, pi: int, k: int) -> str:
        """Name of the arrow at corner k of polygon pi (edge k to edge k+1)."""
        return self._corner_name(pi, k % self.polygons[pi].size)

    def corner_of(self, arrow: str) -> Tuple[int, int]:
        try:
            return self._corners[arrow]
        except KeyError:
            raise UnknownReferenceError("arrow", arrow) from None

    def polygon_index(self, polygon_id: str) -> int:
        for pi, poly in enumerate(self.polygons):
            if poly.id == polygon_id:
                return pi
        raise UnknownReferenceError("polygon", polygon_id)

    def successor(self, pi: int, k: int) -> Optional[int]:
        poly = self.polygons[pi]
        if poly.is_puncture:
            return (k + 1) % poly.size
        return k + 1 if k + 1 < poly.size else None

    def predecessor(self, pi: int, k: int) -> Optional[int]:
        poly = self.polygons[pi]
        if poly.is_puncture:
            return (k - 1) % poly.size
        return k - 1 if k >= 1 else None

    # ---------- topology ----------

    def marked_point_classes(self) -> Dict[Tuple[str, int], int]:
        """
        Union arc ends at polygon corners into ●-points.

        The ``+`` slot runs from end 0 to end 1, the ``-`` slot from end 1 to end 0;
        a corner glues the finish of one edge to the start of the next.
        """
        graph = nx.Graph()
        for arc in self.arcs:
            graph.add_node((arc, 0))
            graph.add_node((arc, 1))
        for pi, poly in enumerate(self.polygons):
            for k in range(poly.corner_count):
                graph.add_edge(_finish(poly.edges[k]), _start(self.slot_at(pi, k + 1)))
        classes: Dict[Tuple[str, int], int] = {}
        for idx, comp in enumerate(
            sorted(nx.connected_components(graph), key=lambda c: sorted(map(str, c)))
        ):
            for end in comp:
                classes[end] = idx
        return classes

    def summary(self) -> SurfaceSummary:
        """Euler characteristic, genus, boundary components, punctures and orientability."""
        classes = self.marked_point_classes()
        bullets = len(set(classes.values()))
        punctures = sum(1 for p in self.polygons if p.is_puncture)
        boundary = nx.MultiGraph()
        boundary.add_nodes_from(set(classes.values()))
        for poly in self.polygons:
            if poly.is_puncture:
                continue
            boundary.add_edge(classes[_start(poly.edges[0])], classes[_finish(poly.edges[-1])])
        b = nx.number_connected_components(boundary) if bullets else 0
        chi = bullets - len(self.arcs) + punctures
        genus = (2 - chi - b) // 2
        return SurfaceSummary(
            arcs=len(self.arcs),
            polygons=len(self.polygons),
            marked_points=bullets,
            boundary_components=b,
            punctures=punctures,
            euler_characteristic=chi,
            genus=genus,
            orientable=all((arc, side) in self._slots for arc in self.arcs for side in SIDES),
        )


# ========== BUILD / SERIALIZE ==========

_ARC_RE = re.compile(r"^arc\s+(\S+)$")
_POLY_RE = re.compile(r"^polygon\s+(\S+)\s+(.*)$")


def build_coordinate_complex(text: str, source: str = "<surface>") -> PolygonComplex:
    """
    Parse and validate the surface text format.

    Lines::

        arc <id>
        polygon <id> kind=<boundary|puncture> edges=<arc:side,...> [arrows=<name,...>]

    Raises:
        ParseError: On malformed lines
        SurfaceError: On invariant violations
    """
    arcs: List[str] = []
    polygons: List[Polygon] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if m := _ARC_RE.match(line):
            if m.group(1) in arcs:
                raise DuplicateIdError("arc", m.group(1), line_no, source)
            arcs.append(m.group(1))
            continue
        m = _POLY_RE.match(line)
        if m is None:
            raise ParseError(source, line_no, f"unrecognized line '{raw.strip()}'")
        fields_ = dict(
            part.split("=", 1) for part in m.group(2).split() if "=" in part
        )
        if "kind" not in fields_ or "edges" not in fields_:
            raise ParseError(source, line_no, "polygon needs kind= and edges=")
        edges = []
        for item in fields_["edges"].split(","):
            if ":" not in item:
                raise ParseError(source, line_no, f"edge '{item}' needs arc:side")
            arc, side = item.rsplit(":", 1)
            if arc not in arcs:
                raise UnknownReferenceError("arc", arc, line_no, source)
            edges.append((arc, side))
        labels = tuple(fields_["arrows"].split(",")) if fields_.get("arrows") else ()
        polygons.append(Polygon(m.group(1), fields_["kind"], tuple(edges), labels))
    pc = PolygonComplex(tuple(arcs), tuple(polygons))
    logger.debug("built coordinate complex: %s", pc.summary())
    return pc


def serialize_surface(pc: PolygonComplex) -> str:
    """Emit the surface text format (with corner labels)."""
    lines = [f"arc {a}" for a in pc.arcs]
    for pi, poly in enumerate(pc.polygons):
        edges = ",".join(f"{a}:{s}" for a, s in poly.edges)
        line = f"polygon {poly.id} kind={poly.kind} edges={edges}"
        if poly.corner_count:
            labels = ",".join(pc.corner_arrow(pi, k) for k in range(poly.corner_count))
            line += f" arrows={labels}"
        lines.append(line)
    return "\n".join(lines) + "\n"


@functools.lru_cache(maxsize=64)
def algebra_of_coordinate(pc: PolygonComplex) -> GentleAlgebra:
    """
    The gentle algebra of a simple coordinate.

    Vertices are arcs; each polygon corner gives an arrow from an edge to its
    clockwise successor; two arrows compose to zero exactly when they are
    consecutive corners of one polygon.
    """
    arrows: List[Arrow] = []
    relations: List[Tuple[str, str]] = []
    for pi, poly in enumerate(pc.polygons):
        names = [pc.corner_arrow(pi, k) for k in range(poly.corner_count)]
        for k, name in enumerate(names):
            arrows.append(Arrow(name, pc.slot_at(pi, k)[0], pc.slot_at(pi, k + 1)[0]))
        for k in range(len(names) - 1):
            relations.append((names[k], names[k + 1]))
        if poly.is_puncture and names:
            relations.append((names[-1], names[0]))
    return GentleAlgebra(pc.arcs, tuple(arrows), tuple(relations))


def surface_of_algebra(algebra: GentleAlgebra) -> PolygonComplex:
    """
    The polygon complex whose coordinate algebra is ``algebra``.

    Polygons are the forbidden threads: linear threads become boundary polygons,
    relation cycles become puncture polygons, trivial threads become monogons.
    Arrow names are kept as corner labels.
    """
    seen: Dict[str, int] = {v: 0 for v in algebra.vertices}
    polygons: List[Polygon] = []
    for i, thread in enumerate(forbidden_threads(algebra), start=1):
        edges = []
        for v in thread.vertices:
            edges.append((v, SIDES[seen[v]]))
            seen[v] += 1
        kind = PUNCTURE if thread.cyclic else BOUNDARY
        polygons.append(Polygon(f"P{i}", kind, tuple(edges), thread.arrows))
    return PolygonComplex(algebra.vertices, tuple(polygons))


# ========== CURVES ==========


@dataclass(frozen=True)
class Curve:
    """
    A curve as an endpoint-anchored crossing sequence.

    Attributes:
        crossings: (arc, entry side) per crossing; the curve arrives through the
            slot ``(arc, side)`` and leaves through the other slot
        moves: One of "succ", "pred", "jump" per polygon traversed between
            crossings (closed curves also close the last step)
        closed: Closed curve flag
    """

    crossings: Tuple[Slot, ...]
    moves: Tuple[str, ...] = ()
    closed: bool = False

    def __post_init__(self):
        if not self.crossings:
            raise CurveError("a curve must cross at least one arc")
        expected = len(self.crossings) if self.closed else len(self.crossings) - 1
        if len(self.moves) != expected:
            raise CurveError(f"{len(self.moves)} moves for {len(self.crossings)} crossings")
        for move in self.moves:
            if move not in (SUCC, PRED, JUMP):
                raise CurveError(f"unknown move '{move}'")

    @property
    def arcs(self) -> Tuple[str, ...]:
        return tuple(arc for arc, _ in self.crossings)

    def entry(self, i: int) -> Slot:
        return self.crossings[i % len(self.crossings)]

    def exit(self, i: int) -> Slot:
        arc, side = self.crossings[i % len(self.crossings)]
        return (arc, other_side(side))

    def inverse(self) -> "Curve":
        crossings = tuple((arc, other_side(side)) for arc, side in reversed(self.crossings))
        swap = {SUCC: PRED, PRED: SUCC, JUMP: JUMP}
        if self.closed:
            moves = tuple(swap[m] for m in reversed(self.moves[:-1])) + (swap[self.moves[-1]],)
        else:
            moves = tuple(swap[m] for m in reversed(self.moves))
        return Curve(crossings, moves, self.closed)

    def __str__(self) -> str:
        body = " ".join(f"{a}{s}" for a, s in self.crossings)
        return f"curve({body}{' closed' if self.closed else ''})"


@dataclass(frozen=True)
class Endpoint:
    """The ∘-point at one end of an open curve."""

    polygon: str
    index: int
    size: int
    puncture: bool


def endpoint(pc: PolygonComplex, c: Curve, end: str) -> Endpoint:
    """
    Endpoint polygon and 1-based edge index of the first crossed arc from that end.

    Args:
        end: "left" or "right"
    """
    if c.closed:
        raise CurveError("closed curves have no endpoints")
    slot = c.entry(0) if end == "left" else c.exit(len(c.crossings) - 1)
    pi, k = pc.locate(slot)
    poly = pc.polygons[pi]
    return Endpoint(poly.id, k + 1, poly.size, poly.is_puncture)


def _step(pc: PolygonComplex, c: Curve, i: int) -> Tuple[int, int, int]:
    """Polygon and edge indices of step i (from crossing i to crossing i+1)."""
    pi, k = pc.locate(c.exit(i))
    pj, k2 = pc.locate(c.entry(i + 1))
    if pi != pj:
        raise CurveError(f"crossings {i} and {i + 1} do not share a polygon")
    return pi, k, k2


def is_zigzag(pc: PolygonComplex, c: Curve) -> bool:
    """True iff every step is an adjacent-edge move in its polygon."""
    try:
        for i, move in enumerate(c.moves):
            pi, k, k2 = _step(pc, c, i)
            if move == SUCC and pc.successor(pi, k) != k2:
                return False
            if move == PRED and pc.predecessor(pi, k) != k2:
                return False
            if move == JUMP:
                return False
    except (CurveError, UnknownReferenceError):
        return False
    return True


def curve_to_string(pc: PolygonComplex, c: Curve) -> Walk:
    """
    The walk of a zigzag curve over algebra_of_coordinate(pc).

    A successor move reads the corner arrow, a predecessor move its inverse;
    closed curves give bands.

    Raises:
        CurveError: If the curve is not zigzag
    """
    if not is_zigzag(pc, c):
        raise CurveError(f"{c} is not zigzag")
    algebra = algebra_of_coordinate(pc)
    letters = []
    for i, move in enumerate(c.moves):
        pi, k, _ = _step(pc, c, i)
        if move == SUCC:
            letters.append(Letter(pc.corner_arrow(pi, k)))
        else:
            letters.append(Letter(pc.corner_arrow(pi, k - 1), True))
    if not letters:
        arc = c.crossings[0][0]
        return Walk(arc, arc)
    return make_walk(algebra, letters)


def _slot_after(pc: PolygonComplex, arrow: str) -> Tuple[Slot, Slot]:
    """(slot the arrow leaves, slot it enters) in its polygon."""
    pi, k = pc.corner_of(arrow)
    return pc.slot_at(pi, k), pc.slot_at(pi, k + 1)


def trivial_curve(pc: PolygonComplex, arc: str) -> Curve:
    """
    The dual arc crossing only ``arc``.

    It enters from the polygon holding the corner of the first declared arrow
    leaving ``arc`` (the ``+`` slot when there is none).
    """
    algebra = algebra_of_coordinate(pc)
    outs = algebra.out_arrows(arc)
    if outs:
        leave, _ = _slot_after(pc, outs[0])
        return Curve(((arc, leave[1]),))
    return Curve(((arc, "+"),))


def string_to_curve(pc: PolygonComplex, w: Walk, band: bool = False) -> Curve:
    """
    The zigzag curve of a string, or the closed curve of a band, over algebra_of_coordinate(pc).

    A closed string such as ``a5 a7^- a6`` stays an open curve unless ``band`` is set.

    Raises:
        CurveError: If w is not a string (or not a band when ``band`` is set)
            over this coordinate
    """
    algebra = algebra_of_coordinate(pc)
    try:
        for l in w.letters:
            algebra.arrow(l.arrow)
    except UnknownReferenceError as e:
        raise CurveError(f"walk {w} is not over this coordinate: {e}") from None
    if band and not is_band(algebra, w):
        raise CurveError(f"walk {w} is not a band")
    if not w.letters:
        return trivial_curve(pc, w.start)
    closed = band
    if not closed and not is_string(algebra, w):
        raise CurveError(f"walk {w} is not a string")

    exits: List[Slot] = []
    entries: List[Slot] = []
    moves: List[str] = []
    for l in w.letters:
        leave, arrive = _slot_after(pc, l.arrow)
        if l.inverse:
            leave, arrive = arrive, leave
        exits.append(leave)
        entries.append(arrive)
        moves.append(PRED if l.inverse else SUCC)

    crossings: List[Slot] = [(exits[0][0], other_side(exits[0][1]))]
    for i in range(1, len(w.letters)):
        if entries[i - 1] == exits[i]:
            raise CurveError(f"walk {w} reuses a slot at letter {i}")
        crossings.append(entries[i - 1])
    if closed:
        if entries[-1] == exits[0]:
            raise CurveError(f"band {w} reuses a slot at its closing letter")
        crossings[0] = entries[-1]
        return Curve(tuple(crossings), tuple(moves), closed=True)
    crossings.append(entries[-1])
    return Curve(tuple(crossings), tuple(moves))


def canonical_curve_key(pc: PolygonComplex, c: Curve) -> Walk:
    """Canonical string or band of a zigzag curve (equal keys = same curve)."""
    algebra = algebra_of_coordinate(pc)
    w = curve_to_string(pc, c)
    if c.closed:
        return canonical_band(algebra, w)
    if not w.letters:
        return w
    return canonical_string(algebra, w)


def weight(pc: PolygonComplex, c: Curve, end: str) -> int:
    """
    Weight n - m at a boundary endpoint.

    Raises:
        InfiniteDimensionError: If the endpoint is a puncture
    """
    ep = endpoint(pc, c, end)
    if ep.puncture:
        raise InfiniteDimensionError(f"weight at {end} end")
    return ep.size - ep.index


def co_weight(pc: PolygonComplex, c: Curve, end: str) -> int:
    """Co-weight m - 1 at a boundary endpoint."""
    ep = endpoint(pc, c, end)
    if ep.puncture:
        raise InfiniteDimensionError(f"co-weight at {end} end")
    return ep.index - 1


def projective_arc(pc: PolygonComplex, arc: str) -> Curve:
    """The twist of the dual arc at ``arc``: its string is that of P_arc."""
    return string_to_curve(pc, projective_string(algebra_of_coordinate(pc), arc))


def injective_arc(pc: PolygonComplex, arc: str) -> Curve:
    """The anti-twist of the dual arc at ``arc``: its string is that of I_arc."""
    return string_to_curve(pc, injective_string(algebra_of_coordinate(pc), arc))


def smooth(pc: PolygonComplex, first: Curve, second: Curve, move: Optional[str] = None) -> Curve:
    """
    Join the right end of ``first`` to the left end of ``second``.

    The ends must lie in one polygon; the joining step is a successor or
    predecessor move when the edges are adjacent, otherwise a jump.

    Raises:
        CurveError: If the ends are not in a common polygon or a curve is closed
    """
    if first.closed or second.closed:
        raise CurveError("closed curves have no ends to smooth")
    pi, k = pc.locate(first.exit(len(first.crossings) - 1))
    pj, k2 = pc.locate(second.entry(0))
    if pi != pj:
        raise CurveError(
            f"ends lie in different polygons ({pc.polygons[pi].id}, {pc.polygons[pj].id})"
        )
    if move is None:
        if pc.successor(pi, k) == k2:
            move = SUCC
        elif pc.predecessor(pi, k) == k2:
            move = PRED
        else:
            move = JUMP
    return Curve(first.crossings + second.crossings, first.moves + (move,) + second.moves)


def split_at_repeat(c: Curve, i: int, j: int) -> Tuple[Curve, Curve]:
    """
    Smooth an open curve at a repeated crossing.

    If crossings i < j coincide (same arc, same entry side), the segment
    between them closes up and the remainder is an open curve.
    """
    if c.closed or not (0 <= i < j < len(c.crossings)) or c.crossings[i] != c.crossings[j]:
        raise CurveError(f"crossings {i} and {j} do not repeat")
    loop = Curve(c.crossings[i:j], c.moves[i:j], closed=True)
    rest = Curve(c.crossings[:i] + c.crossings[j:], c.moves[:i] + c.moves[j:])
    return loop, rest


def dual_arcs(pc: PolygonComplex) -> Dict[str, Curve]:
    """The dual dissection: one trivial curve per coordinate arc."""
    return {arc: trivial_curve(pc, arc) for arc in pc.arcs}



# ========== TWIST ==========

CIRCLE = "∘"
BULLET = "●"


@dataclass(frozen=True, order=True)
class MarkedPoint:
    """A ∘-point (named by its polygon) or a ●-point (named by its class index)."""

    kind: str
    name: str

    def __str__(self) -> str:
        return f"{self.kind}{self.name}"


def boundary_rotation(pc: PolygonComplex) -> Dict[MarkedPoint, MarkedPoint]:
    """
    The clockwise successor of every boundary marked point.

    Along the boundary segment of a boundary polygon the ●-point finishing its last
    edge comes first, then the polygon's ∘-point, then the ●-point starting its first
    edge. The map is a permutation whose cycles are the boundary components.

    Raises:
        SurfaceError: If two segments leave one ●-point or a ●-point is on no segment
    """
    classes = pc.marked_point_classes()
    rotation: Dict[MarkedPoint, MarkedPoint] = {}
    for poly in pc.polygons:
        if poly.is_puncture:
            continue
        circle = MarkedPoint(CIRCLE, poly.id)
        first = MarkedPoint(BULLET, str(classes[_start(poly.edges[0])]))
        last = MarkedPoint(BULLET, str(classes[_finish(poly.edges[-1])]))
        if last in rotation:
            raise SurfaceError(f"two boundary segments leave {last}")
        rotation[last] = circle
        rotation[circle] = first
    bullets = {MarkedPoint(BULLET, str(c)) for c in classes.values()}
    if set(rotation.values()) != set(rotation) or not bullets <= set(rotation):
        raise SurfaceError("boundary segments do not close up into cycles")
    return rotation


def boundary_cycles(pc: PolygonComplex) -> List[Tuple[MarkedPoint, ...]]:
    """Marked points of each boundary component in clockwise order."""
    rotation = boundary_rotation(pc)
    cycles = []
    seen = set()
    for point in sorted(rotation):
        if point in seen:
            continue
        cycle = [point]
        while rotation[cycle[-1]] != point:
            cycle.append(rotation[cycle[-1]])
        seen.update(cycle)
        cycles.append(tuple(cycle))
    return cycles


def arc_ends(pc: PolygonComplex, arc: str) -> Tuple[MarkedPoint, MarkedPoint]:
    """The ●-points at end 0 and end 1 of a coordinate arc."""
    classes = pc.marked_point_classes()
    try:
        return (
            MarkedPoint(BULLET, str(classes[(arc, 0)])),
            MarkedPoint(BULLET, str(classes[(arc, 1)])),
        )
    except KeyError:
        raise UnknownReferenceError("arc", arc) from None


def curve_ends(pc: PolygonComplex, c: Curve) -> Tuple[MarkedPoint, MarkedPoint]:
    """The ∘-points at the left and right ends of an open curve."""
    return (
        MarkedPoint(CIRCLE, endpoint(pc, c, "left").polygon),
        MarkedPoint(CIRCLE, endpoint(pc, c, "right").polygon),
    )


def twist(
    pc: PolygonComplex, ends: Sequence[MarkedPoint], inverse: bool = False
) -> Tuple[MarkedPoint, ...]:
    """
    Rotate arc ends one step clockwise (anti-clockwise with ``inverse``).

    ●-ends move to ∘-points and ∘-ends on the boundary move to ●-points;
    ∘-punctures stay where they are.

    Raises:
        UnknownReferenceError: If an end is not a marked point of pc
    """
    rotation = boundary_rotation(pc)
    if inverse:
        rotation = {after: before for before, after in rotation.items()}
    punctures = {MarkedPoint(CIRCLE, p.id) for p in pc.polygons if p.is_puncture}
    moved = []
    for point in ends:
        if point in rotation:
            moved.append(rotation[point])
        elif point in punctures:
            moved.append(point)
        else:
            raise UnknownReferenceError("marked point", str(point))
    return tuple(moved)
