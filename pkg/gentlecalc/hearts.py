"""
Simple-minded dissections and the gentle algebras of their hearts.

A dissection is a set of graded zigzag arcs over the coordinate of an algebra.
Around each ∘-point the arc ends form a clockwise fan; consecutive ends give
the arrows of the heart's graded algebra, and the arrows of degree zero give
the algebra whose module category is the heart.
"""

import functools
import logging
import re
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from gentlecalc.algebra_core import GentleAlgebra, validate_gentle
from gentlecalc.exceptions import (
    CurveError,
    DuplicateIdError,
    InvalidWalkError,
    NotGentleError,
    ParseError,
    SurfaceError,
)
from gentlecalc.ext_yoneda import clockwise_order, ext_dimension, interior_intersections, oriented
from gentlecalc.strings_bands import (
    Walk,
    enumerate_bands,
    enumerate_strings,
    is_string,
    parse_walk,
)
from gentlecalc.surface_model import (
    BOUNDARY,
    PUNCTURE,
    Curve,
    Endpoint,
    Polygon,
    PolygonComplex,
    SurfaceSummary,
    algebra_of_coordinate,
    curve_to_string,
    endpoint,
    is_zigzag,
    string_to_curve,
    surface_of_algebra,
    trivial_curve,
)

logger = logging.getLogger(__name__)

ENDS = ("left", "right")


# ========== DATA MODEL ==========


@dataclass(frozen=True)
class DissectionArc:
    """
    One graded arc.

    Attributes:
        name: Arc name (a vertex of the heart algebra)
        walk: The string of the arc over the ambient algebra
        curve: Its zigzag curve over the ambient coordinate
        grade: Shift of the arc's object, so the arc stands for M_walk[grade]
    """

    name: str
    walk: Walk
    curve: Curve
    grade: int = 0

    def __str__(self) -> str:
        return f"{self.name}: {self.walk} grade={self.grade}"


@dataclass(frozen=True)
class GradedDissection:
    """Graded arcs over the coordinate complex of ``algebra``."""

    algebra: GentleAlgebra
    arcs: Tuple[DissectionArc, ...]
    surface: PolygonComplex = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.arcs:
            raise SurfaceError("a dissection needs at least one arc")
        names = [a.name for a in self.arcs]
        if len(set(names)) != len(names):
            raise SurfaceError("dissection arc names must be unique")
        for arc in self.arcs:
            if arc.curve.closed:
                raise CurveError(f"dissection arc {arc.name} is closed")
        object.__setattr__(self, "surface", surface_of_algebra(self.algebra))

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(a.name for a in self.arcs)

    def arc(self, name: str) -> DissectionArc:
        for a in self.arcs:
            if a.name == name:
                return a
        raise KeyError(name)


@dataclass(frozen=True)
class GradedGentle:
    """A gentle algebra with an integer degree on every arrow."""

    algebra: GentleAlgebra
    degrees: Dict[str, int]

    def __post_init__(self):
        names = {a.name for a in self.algebra.arrows}
        missing = names - set(self.degrees)
        if missing:
            raise ValueError(f"arrows without a degree: {sorted(missing)}")
        extra = set(self.degrees) - names
        if extra:
            raise ValueError(f"degrees for unknown arrows: {sorted(extra)}")

    def degree(self, arrow: str) -> int:
        return self.degrees[arrow]

    def degree_zero(self) -> GentleAlgebra:
        return self.algebra.degree_zero_subalgebra(self.degrees)


@dataclass(frozen=True)
class ArcEnd:
    """An arc end at a ∘-point with the value of the arc's grading there."""

    arc: str
    end: str
    point: Endpoint
    value: int


@dataclass(frozen=True)
class Fan:
    """Arc ends at one ∘-point in clockwise order."""

    polygon: str
    puncture: bool
    size: int
    ends: Tuple[ArcEnd, ...]


@dataclass(frozen=True)
class FanArrow:
    """
    Consecutive ends of one fan.

    ``grading`` is the jump of the arc gradings across the angle; the dual
    arrow of the heart algebra carries ``1 - grading``.
    """

    name: str
    source: str
    target: str
    polygon: str
    grading: int

    @property
    def dual_degree(self) -> int:
        return 1 - self.grading


@dataclass(frozen=True)
class DissectionViolation:
    """One failed condition of a simple-minded dissection."""

    check: str
    subject: str
    message: str

    def __str__(self) -> str:
        return f"{self.check} at {self.subject}: {self.message}"


@dataclass(frozen=True)
class CutSurface:
    """
    The surface cut along a dissection.

    ``dual`` is the coordinate complex of the dual dissection: one polygon per
    ∘-point with the fan as its edges. Each of its marked points is one piece of
    the cut surface; ``pieces`` lists the arc ends bounding it.
    """

    dual: PolygonComplex
    pieces: Tuple[Tuple[Tuple[str, int], ...], ...]
    summary: SurfaceSummary


@dataclass(frozen=True)
class HeartObject:
    """An indecomposable of the heart: a string or band of its algebra and its curve."""

    walk: Walk
    curve: Curve

    @property
    def is_band(self) -> bool:
        return self.curve.closed


# ========== TEXT FORMAT ==========

_DISSECTION_RE = re.compile(r"^arc\s+(\S+?)\s*:\s*(.+?)\s+grade=(-?\d+)$")


def _make_arc(pc: PolygonComplex, algebra: GentleAlgebra, name: str, w: Walk, grade: int):
    if not is_string(algebra, w):
        raise InvalidWalkError(w, "dissection arcs must be strings")
    return DissectionArc(name, w, string_to_curve(pc, w), grade)


def parse_dissection(
    text: str, algebra: GentleAlgebra, source: str = "<dissection>"
) -> GradedDissection:
    """
    Parse graded arcs, one per line::

        arc <name>: <walk> grade=<int>

    Raises:
        ParseError: On malformed lines or duplicate arc names
        InvalidWalkError: If a walk is not a string
    """
    pc = surface_of_algebra(algebra)
    arcs: List[DissectionArc] = []
    seen = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _DISSECTION_RE.match(line)
        if m is None:
            raise ParseError(source, line_no, f"unrecognized line '{raw.strip()}'")
        name, walk_text, grade = m.group(1), m.group(2), int(m.group(3))
        if name in seen:
            raise DuplicateIdError("arc", name, line_no, source)
        seen.add(name)
        arcs.append(_make_arc(pc, algebra, name, parse_walk(algebra, walk_text), grade))
    if not arcs:
        raise ParseError(source, None, "no arcs")
    logger.debug("parsed %d dissection arcs from %s", len(arcs), source)
    return GradedDissection(algebra, tuple(arcs))


def serialize_dissection(gd: GradedDissection) -> str:
    return "".join(f"arc {a}\n" for a in gd.arcs)


def standard_dissection(algebra: GentleAlgebra) -> GradedDissection:
    """The dual arcs of the coordinate, all in degree zero: the simples of mod A."""
    pc = surface_of_algebra(algebra)
    arcs = tuple(DissectionArc(v, Walk(v, v), trivial_curve(pc, v), 0) for v in algebra.vertices)
    return GradedDissection(algebra, arcs)


# ========== FANS ==========


def end_value(point: Endpoint, grade: int) -> int:
    """Grading of an arc at a ∘-point: minus the weight there, shifted by the grade."""
    return (point.index - point.size) - grade


def _compare(gd: GradedDissection, first: ArcEnd, second: ArcEnd) -> int:
    if first.point.index != second.point.index:
        return first.point.index - second.point.index
    order = clockwise_order(
        oriented(gd.arc(first.arc).curve, first.end),
        oriented(gd.arc(second.arc).curve, second.end),
    )
    if order:
        return order
    return gd.names.index(first.arc) - gd.names.index(second.arc)


def fans(gd: GradedDissection) -> List[Fan]:
    """Clockwise fans of arc ends, in polygon order; ∘-points with no ends are omitted."""
    pc = gd.surface
    by_polygon: Dict[str, List[ArcEnd]] = defaultdict(list)
    for arc in gd.arcs:
        for end in ENDS:
            point = endpoint(pc, arc.curve, end)
            by_polygon[point.polygon].append(
                ArcEnd(arc.name, end, point, end_value(point, arc.grade))
            )
    result = []
    for poly in pc.polygons:
        ends = by_polygon.get(poly.id)
        if not ends:
            continue
        ordered = sorted(ends, key=functools.cmp_to_key(lambda x, y: _compare(gd, x, y)))
        result.append(Fan(poly.id, poly.is_puncture, poly.size, tuple(ordered)))
    return result


def fan_arrows(gd: GradedDissection, fan_list: Optional[Sequence[Fan]] = None) -> List[FanArrow]:
    """
    Arrows between consecutive ends of each fan.

    Puncture fans close up: the last end is followed by the first, and the
    grading across that angle gains the polygon size.
    """
    if fan_list is None:
        fan_list = fans(gd)
    arrows: List[FanArrow] = []
    used: Dict[str, int] = {}
    for fan in fan_list:
        pairs = list(zip(fan.ends, fan.ends[1:]))
        if fan.puncture:
            pairs.append((fan.ends[-1], fan.ends[0]))
        for k, (x, y) in enumerate(pairs):
            grading = y.value - x.value
            if fan.puncture and k == len(pairs) - 1:
                grading += fan.size
            base = f"{x.arc}>{y.arc}"
            used[base] = used.get(base, 0) + 1
            name = base if used[base] == 1 else f"{base}'{used[base] - 1}"
            arrows.append(FanArrow(name, x.arc, y.arc, fan.polygon, grading))
    return arrows


# ========== CUTTING ==========


def _crossing_violations(gd: GradedDissection) -> List[DissectionViolation]:
    pc = gd.surface
    found = []
    for i, first in enumerate(gd.arcs):
        if interior_intersections(pc, first.curve, first.curve):
            found.append(DissectionViolation("crossing", first.name, "arc crosses itself"))
        for second in gd.arcs[i + 1 :]:
            if interior_intersections(pc, first.curve, second.curve) or interior_intersections(
                pc, second.curve, first.curve
            ):
                found.append(
                    DissectionViolation(
                        "crossing", f"{first.name},{second.name}", "arcs cross in the interior"
                    )
                )
    return found


def _dual_complex(gd: GradedDissection, fan_list: Sequence[Fan]) -> PolygonComplex:
    arrows = iter(fan_arrows(gd, fan_list))
    polygons = []
    for fan in fan_list:
        edges = tuple((e.arc, "+" if e.end == "left" else "-") for e in fan.ends)
        corners = len(edges) if fan.puncture else len(edges) - 1
        labels = tuple(next(arrows).name for _ in range(corners))
        kind = PUNCTURE if fan.puncture else BOUNDARY
        polygons.append(Polygon(fan.polygon, kind, edges, labels))
    return PolygonComplex(gd.names, tuple(polygons))


def cut_surface(gd: GradedDissection) -> CutSurface:
    """
    Cut the surface along the dissection.

    Raises:
        SurfaceError: If arcs cross in the interior or the complement is not
            a union of polygons
    """
    crossings = _crossing_violations(gd)
    if crossings:
        raise SurfaceError(f"cannot cut along crossing arcs: {crossings[0]}")
    dual = _dual_complex(gd, fans(gd))
    pieces: Dict[int, List[Tuple[str, int]]] = defaultdict(list)
    for end, piece in dual.marked_point_classes().items():
        pieces[piece].append(end)
    summary = dual.summary()
    logger.debug("cut surface: %d pieces, %s", len(pieces), summary)
    return CutSurface(dual, tuple(tuple(sorted(pieces[k])) for k in sorted(pieces)), summary)


def dual_coordinate(pc: PolygonComplex) -> PolygonComplex:
    """
    The coordinate complex of the dual arcs of pc.

    Each fan of dual arcs runs through the edges of one polygon of pc in order, so
    the result is pc with every arc traded for its dual arc, and applying it twice
    returns pc up to relabeling.
    """
    return cut_surface(standard_dissection(algebra_of_coordinate(pc))).dual


# ========== VALIDATION ==========


def _hom_violations(gd: GradedDissection) -> List[DissectionViolation]:
    """Hom(X, Y[k]) vanishes for k < 0, and for k = 0 unless X = Y where it is one-dimensional."""
    found = []
    for x in gd.arcs:
        for y in gd.arcs:
            for omega in range(0, y.grade - x.grade + 1):
                expected = 1 if (x.name == y.name and omega == 0) else 0
                actual = ext_dimension(gd.algebra, x.walk, y.walk, omega)
                if actual != expected:
                    found.append(
                        DissectionViolation(
                            "hom",
                            f"{x.name},{y.name}",
                            f"dim Hom({x.name}, {y.name}[{x.grade - y.grade + omega}]) = "
                            f"{actual}, expected {expected}",
                        )
                    )
    return found


def validate_simple_minded_dissection(gd: GradedDissection) -> List[DissectionViolation]:
    """
    Check that gd is a simple-minded dissection; an empty list means valid.

    Checks zigzag arcs, interior disjointness, the arc count, that every
    ∘-point is reached, that the cut surface matches the ambient one, the strict
    increase of gradings along every fan, and Hom-vanishing between the arc
    objects in non-positive shifts. Generation of the derived category is
    assumed.
    """
    pc = gd.surface
    found: List[DissectionViolation] = []
    for arc in gd.arcs:
        if not is_zigzag(pc, arc.curve):
            found.append(DissectionViolation("zigzag", arc.name, "arc is not zigzag"))
    found += _crossing_violations(gd)
    if len(gd.arcs) != len(gd.algebra.vertices):
        found.append(
            DissectionViolation(
                "count",
                "dissection",
                f"{len(gd.arcs)} arcs for {len(gd.algebra.vertices)} vertices",
            )
        )
    fan_list = fans(gd)
    reached = {f.polygon for f in fan_list}
    for poly in pc.polygons:
        if poly.id not in reached:
            found.append(DissectionViolation("fan", poly.id, "no arc ends at this ∘-point"))

    if not found:
        try:
            summary = _dual_complex(gd, fan_list).summary()
        except SurfaceError as e:
            found.append(DissectionViolation("surface", "dissection", str(e)))
        else:
            ambient = pc.summary()
            if (summary.marked_points, summary.genus, summary.boundary_components) != (
                ambient.marked_points,
                ambient.genus,
                ambient.boundary_components,
            ):
                found.append(
                    DissectionViolation(
                        "surface", "dissection", f"cut pieces give {summary}, expected {ambient}"
                    )
                )

    for arrow in fan_arrows(gd, fan_list):
        if arrow.grading < 1:
            found.append(
                DissectionViolation(
                    "grading",
                    f"{arrow.polygon}:{arrow.source}>{arrow.target}",
                    f"grading does not increase clockwise (jump {arrow.grading})",
                )
            )
    found += _hom_violations(gd)
    if found:
        logger.info("dissection has %d violations", len(found))
    return found


# ========== HEART ALGEBRA ==========


def induced_gradings(gd: GradedDissection) -> Tuple[Dict[str, int], Dict[str, int]]:
    """(F, F*) keyed by arrow name, with F*(a) = 1 - F(a)."""
    arrows = fan_arrows(gd)
    return (
        {a.name: a.grading for a in arrows},
        {a.name: a.dual_degree for a in arrows},
    )


def heart_algebra(gd: GradedDissection) -> Tuple[GradedGentle, GentleAlgebra]:
    """
    The graded algebra of the dual dissection and its degree-zero part.

    Raises:
        SurfaceError: If the arcs cross
        NotGentleError: If the degree-zero part is not gentle
    """
    dual = cut_surface(gd).dual
    _, dual_degrees = induced_gradings(gd)
    graded = GradedGentle(algebra_of_coordinate(dual), dual_degrees)
    gamma = graded.degree_zero()
    violations = validate_gentle(gamma)
    if violations:
        raise NotGentleError(violations)
    dropped = len(graded.algebra.arrows) - len(gamma.arrows)
    logger.info("heart algebra: %s (%d arrows of nonzero degree)", gamma, dropped)
    return graded, gamma


def is_graded_zigzag(pc: PolygonComplex, c: Curve, degrees: Dict[str, int]) -> bool:
    """True iff c is zigzag over pc and only passes angles of degree zero."""
    if not is_zigzag(pc, c):
        return False
    w = curve_to_string(pc, c)
    return all(degrees.get(l.arrow, 0) == 0 for l in w.letters)


def enumerate_heart_indecomposables(gd: GradedDissection, max_len: int) -> List[HeartObject]:
    """Strings then bands of the heart algebra up to max_len, with their curves."""
    dual = cut_surface(gd).dual
    graded, gamma = heart_algebra(gd)
    objects = []
    walks = [(w, False) for w in enumerate_strings(gamma, max_len)]
    walks += [(w, True) for w in enumerate_bands(gamma, max_len)]
    for w, band in walks:
        c = string_to_curve(dual, w, band=band)
        if not is_graded_zigzag(dual, c, graded.degrees):
            raise CurveError(f"{w} leaves the degree-zero part")
        objects.append(HeartObject(w, c))
    return objects


def format_gradings(gd: GradedDissection) -> List[str]:
    """One line per fan arrow: name, ∘-point, F and F*."""
    return [f"{a.name} at {a.polygon}: F={a.grading} F*={a.dual_degree}" for a in fan_arrows(gd)]
