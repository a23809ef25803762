"""
Homotopy strings, projective complexes and minimal resolutions.

The homology completion of a string keeps its inner segments, completes its end
segments and attaches relation-chained tails; with the canonical grading its
complex of projectives is the minimal projective resolution. Injective
resolutions are computed over the opposite algebra and dualized.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from gentlecalc.algebra_core import GentleAlgebra, Path
from gentlecalc.exceptions import GentleCalcError, InvalidWalkError, OracleMismatchError
from gentlecalc.strings_bands import (
    BandDatum,
    Letter,
    Walk,
    is_band,
    injective_string,
    is_string,
    rotate,
)
from gentlecalc.surface_model import (
    endpoint,
    string_to_curve,
    surface_of_algebra,
)

logger = logging.getLogger(__name__)

INFINITE = math.inf
Dimension = Union[int, float]


# ========== HOMOTOPY STRINGS ==========


@dataclass(frozen=True)
class Segment:
    """A maximal direct path, or the inverse of one (read from its target)."""

    path: Path
    inverse: bool = False

    @property
    def start(self) -> str:
        return self.path.target if self.inverse else self.path.source

    @property
    def end(self) -> str:
        return self.path.source if self.inverse else self.path.target

    def flipped(self) -> "Segment":
        """The same step read over the opposite algebra."""
        p = self.path
        return Segment(Path(p.target, p.source, tuple(reversed(p.arrows))), not self.inverse)

    def __str__(self) -> str:
        body = " ".join(self.path.arrows)
        if not self.inverse:
            return f"({body})"
        if len(self.path.arrows) == 1:
            return f"({body}^-)"
        return f"({body})^-"


@dataclass(frozen=True)
class HomotopyString:
    """
    A completed string: finite segments plus optional periodic tails.

    Attributes:
        segments: Segments of the finite part, left to right
        anchor: Vertex of the finite part's left end (the only vertex when segments is empty)
        left_cycle: Arrows of a periodic inverse tail, nearest first
        right_cycle: Arrows of a periodic direct tail, nearest first
    """

    segments: Tuple[Segment, ...]
    anchor: str
    left_cycle: Tuple[str, ...] = ()
    right_cycle: Tuple[str, ...] = ()

    @property
    def vertices(self) -> List[str]:
        return [self.anchor] + [s.end for s in self.segments]

    @property
    def is_finite(self) -> bool:
        return not self.left_cycle and not self.right_cycle

    def degrees(self) -> List[int]:
        """Canonical grading of the finite part: max 0, -1 across direct, +1 across inverse."""
        mu = [0]
        for s in self.segments:
            mu.append(mu[-1] + (1 if s.inverse else -1))
        top = max(mu)
        return [m - top for m in mu]

    def __str__(self) -> str:
        parts = []
        if self.left_cycle:
            parts.append("[" + "".join(f"({a}^-)" for a in reversed(self.left_cycle)) + "]^∞")
        parts += [str(s) for s in self.segments]
        if self.right_cycle:
            parts.append("[" + "".join(f"({a})" for a in self.right_cycle) + "]^∞")
        return "".join(parts) if parts else f"(e{self.anchor})"


def segments_of(algebra: GentleAlgebra, w: Walk) -> List[Segment]:
    """Split a string into maximal direct and inverse segments."""
    segments: List[Segment] = []
    run: List[Letter] = []
    for letter in w.letters:
        if run and run[-1].inverse != letter.inverse:
            segments.append(_segment(algebra, run))
            run = []
        run.append(letter)
    if run:
        segments.append(_segment(algebra, run))
    return segments


def _segment(algebra: GentleAlgebra, run: Sequence[Letter]) -> Segment:
    if run[0].inverse:
        names = [l.arrow for l in reversed(run)]
    else:
        names = [l.arrow for l in run]
    path = algebra.make_path(names)
    if path is None:
        raise InvalidWalkError(" ".join(str(l) for l in run), "segment contains a relation")
    return Segment(path, run[0].inverse)


def _one_more(algebra: GentleAlgebra, path: Path) -> Optional[Path]:
    """The path followed by its nonzero continuation arrow, if there is one."""
    nxt = algebra.continuation_after(path.arrows[-1])
    if nxt is None:
        return None
    return Path(path.source, algebra.target(nxt), path.arrows + (nxt,))


def left_completion(algebra: GentleAlgebra, segment: Segment) -> Optional[Segment]:
    """
    Completion of an inverse first segment by one more arrow.

    Direct segments are unchanged. Returns None when the inverse segment is
    already maximal, in which case it contributes nothing to the resolution.
    """
    if not segment.inverse:
        return segment
    longer = _one_more(algebra, segment.path)
    return Segment(longer, True) if longer is not None else None


def right_completion(algebra: GentleAlgebra, segment: Segment) -> Optional[Segment]:
    """Completion of a direct last segment by one more arrow; None when it is maximal."""
    if segment.inverse:
        return segment
    longer = _one_more(algebra, segment.path)
    return Segment(longer) if longer is not None else None


def _other_out(algebra: GentleAlgebra, v: str, used: str) -> Optional[str]:
    others = [a for a in algebra.out_arrows(v) if a != used]
    return others[0] if others else None


def _chain(algebra: GentleAlgebra, first: Optional[str]) -> Tuple[List[str], Tuple[str, ...]]:
    """Relation chain from ``first``: (finite arrows, ()) or ([], repeating cycle)."""
    if first is None:
        return [], ()
    seq = [first]
    while True:
        nxt = algebra.relation_after(seq[-1])
        if nxt is None:
            return seq, ()
        if nxt == seq[0]:
            return [], tuple(seq)
        if nxt in seq:
            raise GentleCalcError(f"relation chain from {first} is not a simple cycle")
        seq.append(nxt)


def homology_completion(algebra: GentleAlgebra, w: Walk) -> HomotopyString:
    """
    Complete a string to the homotopy string of its minimal projective resolution.

    Raises:
        InvalidWalkError: If w is not a string
    """
    if not is_string(algebra, w):
        raise InvalidWalkError(w, "not a string")

    start = w.start
    if w.is_trivial:
        outs = algebra.out_arrows(w.start)
        left_first = outs[0] if outs else None
        right_first = outs[1] if len(outs) > 1 else None
        core: List[Segment] = []
    else:
        core = segments_of(algebra, w)
        first, last = core[0], core[-1]
        head = left_completion(algebra, first)
        tail = right_completion(algebra, last)
        if len(core) == 1:
            core = [head if first.inverse else tail]
        else:
            core = [head] + core[1:-1] + [tail]
        core = [s for s in core if s is not None]
        if first.inverse:
            left_first = algebra.relation_after(head.path.arrows[-1]) if head else None
        else:
            left_first = _other_out(algebra, first.path.source, first.path.arrows[0])
        if last.inverse:
            right_first = _other_out(algebra, last.path.source, last.path.arrows[0])
        else:
            right_first = algebra.relation_after(tail.path.arrows[-1]) if tail else None
        if head is None:
            start = first.end

    left, left_cycle = _chain(algebra, left_first)
    right, right_cycle = _chain(algebra, right_first)

    left_segments = [Segment(Path(algebra.source(a), algebra.target(a), (a,)), True) for a in left]
    right_segments = [Segment(Path(algebra.source(a), algebra.target(a), (a,))) for a in right]
    segments = tuple(reversed(left_segments)) + tuple(core) + tuple(right_segments)
    anchor = segments[0].start if segments else start
    hs = HomotopyString(segments, anchor, left_cycle, right_cycle)
    logger.debug("homology completion of %s: %s", w, hs)
    return hs


def flip_walk(w: Walk) -> Walk:
    """The same walk read over the opposite algebra (every letter changes direction)."""
    return Walk(w.start, w.end, tuple(l.flipped() for l in w.letters))


def flip_homotopy_string(hs: HomotopyString) -> HomotopyString:
    return HomotopyString(
        tuple(s.flipped() for s in hs.segments), hs.anchor, hs.left_cycle, hs.right_cycle
    )


def cohomology_completion(algebra: GentleAlgebra, w: Walk) -> HomotopyString:
    """
    Dual completion, read over ``algebra``: direct left tails, inverse right tails.

    Computed as the flip of the homology completion of the flipped walk over the
    opposite algebra.
    """
    if not is_string(algebra, w):
        raise InvalidWalkError(w, "not a string")
    return flip_homotopy_string(homology_completion(algebra.opposite(), flip_walk(w)))


# ========== COMPLEXES ==========


@dataclass(frozen=True)
class Summand:
    """An indecomposable projective (or injective) summand P_vertex^mult."""

    vertex: str
    position: int
    mult: int = 1


@dataclass(frozen=True)
class Entry:
    """
    Nonzero entry of d_degree: C_degree -> C_degree+1.

    ``row`` indexes C_degree, ``col`` indexes C_degree+1, and ``path`` runs from
    the column vertex to the row vertex. ``tag`` is "I" or "J" on band complexes.
    """

    degree: int
    row: int
    col: int
    path: Path
    tag: Optional[str] = None


@dataclass(frozen=True)
class Period:
    """A periodic tail: first periodic degree and period length."""

    side: str
    start: int
    length: int


@dataclass(frozen=True)
class ProjectiveComplex:
    """
    A (possibly truncated) complex of indecomposable projectives.

    Attributes:
        terms: (degree, summands) pairs in decreasing degree order
        entries: Nonzero differential entries
        periods: Periodic tails, if the complex is unbounded
        depth: Truncation depth when periodic tails were cut
        injective: Summands are injectives I_v (degrees then run upward)
        band: (m, λ) for band complexes
    """

    terms: Tuple[Tuple[int, Tuple[Summand, ...]], ...]
    entries: Tuple[Entry, ...]
    periods: Tuple[Period, ...] = ()
    depth: Optional[int] = None
    injective: bool = False
    band: Optional[Tuple[int, Union[int, str]]] = None

    @property
    def degrees(self) -> List[int]:
        return [d for d, _ in self.terms]

    def term(self, degree: int) -> Tuple[Summand, ...]:
        for d, summands in self.terms:
            if d == degree:
                return summands
        return ()

    def multiset(self, degree: int) -> List[str]:
        """Sorted vertex list of the summands in a degree (multiplicities expanded)."""
        out: List[str] = []
        for s in self.term(degree):
            out += [s.vertex] * s.mult
        return sorted(out)

    def matrix(self, degree: int) -> List[List[List[Entry]]]:
        """Dense form of d_degree; rows index C_degree, columns C_degree+1, cells list entries."""
        rows, cols = self.term(degree), self.term(degree + 1)
        grid: List[List[List[Entry]]] = [[[] for _ in cols] for _ in rows]
        for e in self.entries:
            if e.degree == degree:
                grid[e.row][e.col].append(e)
        return grid

    @property
    def length(self) -> Dimension:
        """Projective (injective) length: the largest |degree| with a summand."""
        if self.periods:
            return INFINITE
        return max(abs(d) for d in self.degrees) if self.terms else 0

    def shift(self, n: int) -> "ProjectiveComplex":
        """The shifted complex X[n], with (X[n])^j = X^(j+n)."""
        return ProjectiveComplex(
            tuple((d - n, s) for d, s in self.terms),
            tuple(Entry(e.degree - n, e.row, e.col, e.path, e.tag) for e in self.entries),
            tuple(Period(p.side, p.start - n, p.length) for p in self.periods),
            self.depth,
            self.injective,
            self.band,
        )


def d_squared_zero(algebra: GentleAlgebra, cx: ProjectiveComplex) -> bool:
    """Symbolic check that every composable pair of entries composes to zero."""
    if cx.band is not None:
        return len(cx.terms) <= 2
    for e1 in cx.entries:
        for e2 in cx.entries:
            if e2.degree == e1.degree + 1 and e2.row == e1.col:
                if algebra.compose(e2.path, e1.path) is not None:
                    return False
    return True


def _unrolled(
    algebra: GentleAlgebra, hs: HomotopyString, depth: Optional[int]
) -> Tuple[List[Segment], str, List[int], Tuple[Period, ...], Optional[int]]:
    """Finite segment list with periodic tails unrolled down to degree -depth."""
    base = hs.degrees()
    preperiod = -min(base)
    periods_len = max(len(hs.left_cycle), len(hs.right_cycle))
    if hs.is_finite:
        return list(hs.segments), hs.anchor, base, (), None
    if depth is None:
        depth = preperiod + 2 * periods_len

    segments = list(hs.segments)
    degrees = list(base)
    anchor = hs.anchor
    periods = []
    if hs.left_cycle:
        periods.append(Period("left", degrees[0] - 1, len(hs.left_cycle)))
        k = 0
        while degrees[0] - 1 >= -depth:
            a = hs.left_cycle[k % len(hs.left_cycle)]
            seg = Segment(Path(algebra.source(a), algebra.target(a), (a,)), True)
            segments.insert(0, seg)
            anchor = seg.start
            degrees.insert(0, degrees[0] - 1)
            k += 1
    if hs.right_cycle:
        periods.append(Period("right", degrees[-1] - 1, len(hs.right_cycle)))
        k = 0
        while degrees[-1] - 1 >= -depth:
            a = hs.right_cycle[k % len(hs.right_cycle)]
            segments.append(Segment(Path(algebra.source(a), algebra.target(a), (a,))))
            degrees.append(degrees[-1] - 1)
            k += 1
    return segments, anchor, degrees, tuple(periods), depth


def complex_of(
    algebra: GentleAlgebra, hs: HomotopyString, shift: int = 0, depth: Optional[int] = None
) -> ProjectiveComplex:
    """
    The complex of a homotopy string under its canonical grading, shifted by ``shift``.

    Summands in a degree appear in their order along the string. Periodic tails are
    materialized down to degree -depth (default: preperiod + 2 * period).
    """
    segments, anchor, degrees, periods, used_depth = _unrolled(algebra, hs, depth)
    vertices = [anchor] + [s.end for s in segments]

    slots: Dict[int, List[Summand]] = {}
    index: List[int] = []
    for pos, (v, d) in enumerate(zip(vertices, degrees)):
        slots.setdefault(d, []).append(Summand(v, pos))
        index.append(len(slots[d]) - 1)

    entries = []
    for i, seg in enumerate(segments):
        lo, hi = (i, i + 1) if degrees[i] < degrees[i + 1] else (i + 1, i)
        entries.append(Entry(degrees[lo], index[lo], index[hi], seg.path))

    cx = ProjectiveComplex(
        tuple((d, tuple(slots[d])) for d in sorted(slots, reverse=True)),
        tuple(sorted(entries, key=lambda e: (-e.degree, e.row, e.col))),
        periods,
        used_depth,
    )
    return cx.shift(shift) if shift else cx


def homotopy_band(algebra: GentleAlgebra, w: Walk) -> Tuple[Walk, List[Segment]]:
    """
    A band rotated to open with an inverse letter after a direct one, and its segments.

    Raises:
        InvalidWalkError: If w is not a band
    """
    if not is_band(algebra, w):
        raise InvalidWalkError(w, "not a band")
    n = len(w.letters)
    k = next(i for i in range(n) if w.letters[i].inverse and w.letters[i - 1].direct)
    w = rotate(algebra, w, k)
    return w, segments_of(algebra, w)


def band_complex_of(algebra: GentleAlgebra, band: BandDatum, shift: int = 0) -> ProjectiveComplex:
    """
    Two-term complex of a band object.

    The band is rotated to start with an inverse segment; every summand carries
    multiplicity m, entries carry I_m, and the closing segment carries J(λ, m).
    """
    w, segments = homotopy_band(algebra, band.walk)
    degrees = [-1]
    for s in segments:
        degrees.append(degrees[-1] + (1 if s.inverse else -1))
    vertices = [w.start] + [s.end for s in segments]

    slots: Dict[int, List[Summand]] = {0: [], -1: []}
    index: List[int] = []
    for pos, (v, d) in enumerate(zip(vertices[:-1], degrees[:-1])):
        slots[d].append(Summand(v, pos, band.m))
        index.append(len(slots[d]) - 1)
    index.append(index[0])

    entries = []
    for i, seg in enumerate(segments):
        tag = "J" if i == len(segments) - 1 else "I"
        lo, hi = (i, i + 1) if degrees[i] < degrees[i + 1] else (i + 1, i)
        entries.append(Entry(-1, index[lo], index[hi], seg.path, tag))
    cx = ProjectiveComplex(
        ((0, tuple(slots[0])), (-1, tuple(slots[-1]))),
        tuple(sorted(entries, key=lambda e: (e.row, e.col))),
        band=(band.m, band.lam),
    )
    return cx.shift(shift) if shift else cx


# ========== RESOLUTIONS ==========


def minimal_projective_resolution(
    algebra: GentleAlgebra, module: Union[Walk, BandDatum], depth: Optional[int] = None
) -> ProjectiveComplex:
    """Minimal projective resolution of a string or band module (degrees <= 0)."""
    if isinstance(module, BandDatum):
        return band_complex_of(algebra, module)
    return complex_of(algebra, homology_completion(algebra, module), depth=depth)


def minimal_injective_resolution(
    algebra: GentleAlgebra, module: Union[Walk, BandDatum], depth: Optional[int] = None
) -> ProjectiveComplex:
    """
    Minimal injective resolution (degrees >= 0), stored with ``injective=True``.

    Built as the projective resolution over the opposite algebra with degrees negated;
    entry paths are reported in the original orientation.
    """
    op = algebra.opposite()
    if isinstance(module, BandDatum):
        flipped = BandDatum(flip_walk(module.walk), module.m, module.lam)
        cx = band_complex_of(op, flipped)
    else:
        if not is_string(algebra, module):
            raise InvalidWalkError(module, "not a string")
        cx = complex_of(op, homology_completion(op, flip_walk(module)), depth=depth)
    terms = tuple((-d, s) for d, s in reversed(cx.terms))
    entries = []
    for e in cx.entries:
        p = e.path
        back = Path(p.target, p.source, tuple(reversed(p.arrows)))
        # d_op^j: C^j -> C^(j+1) dualizes to I^(-j-1) -> I^(-j)
        entries.append(Entry(-e.degree - 1, e.col, e.row, back, e.tag))
    periods = tuple(Period(p.side, -p.start, p.length) for p in cx.periods)
    return ProjectiveComplex(
        terms,
        tuple(sorted(entries, key=lambda e: (e.degree, e.row, e.col))),
        periods,
        cx.depth,
        injective=True,
        band=cx.band,
    )


# ========== DIMENSIONS ==========


def _endpoint_values(algebra: GentleAlgebra, w: Walk, co: bool) -> List[Dimension]:
    pc = surface_of_algebra(algebra)
    curve = string_to_curve(pc, w)
    values: List[Dimension] = []
    for end in ("left", "right"):
        ep = endpoint(pc, curve, end)
        if ep.puncture:
            values.append(INFINITE)
        else:
            values.append(ep.index - 1 if co else ep.size - ep.index)
    return values


def endpoint_weights(algebra: GentleAlgebra, w: Walk) -> List[Dimension]:
    """Weights at the (left, right) endpoints of the string's curve."""
    return _endpoint_values(algebra, w, co=False)


def endpoint_co_weights(algebra: GentleAlgebra, w: Walk) -> List[Dimension]:
    """Co-weights at the (left, right) endpoints of the string's curve."""
    return _endpoint_values(algebra, w, co=True)


def projective_dimension(algebra: GentleAlgebra, module: Union[Walk, BandDatum]) -> Dimension:
    """Max endpoint weight of a string (infinite at a puncture); 1 for bands."""
    if isinstance(module, BandDatum):
        return 1
    return max(endpoint_weights(algebra, module))


def injective_dimension(algebra: GentleAlgebra, module: Union[Walk, BandDatum]) -> Dimension:
    """Max endpoint co-weight of a string (infinite at a puncture); 1 for bands."""
    if isinstance(module, BandDatum):
        return 1
    return max(endpoint_co_weights(algebra, module))


def longest_relation_chain(algebra: GentleAlgebra) -> Tuple[str, ...]:
    """
    The longest sequence of arrows with consecutive relations avoiding relation cycles.

    Chains start at arrows with no relation before them, so arrows on a cycle with
    full relations are never reached. Ties keep the first start in declaration order.
    """
    best: Tuple[str, ...] = ()
    for arrow in algebra.arrows:
        if algebra.relation_before(arrow.name) is not None:
            continue
        chain = [arrow.name]
        while (nxt := algebra.relation_after(chain[-1])) is not None:
            chain.append(nxt)
        if len(chain) > len(best):
            best = tuple(chain)
    return best


@dataclass(frozen=True)
class FinitisticReport:
    """The finitistic dimension with one witness per characterization."""

    value: int
    injective_witness: Optional[str]
    chain_witness: Tuple[str, ...]
    polygon_witness: Optional[str]


def finitistic_dimension(algebra: GentleAlgebra) -> FinitisticReport:
    """
    Finitistic dimension computed three ways.

    1. max finite projective dimension of an indecomposable injective;
    2. longest relation chain, arrows on full relation cycles excluded;
    3. max weight n - 1 over boundary polygons of the surface.

    Raises:
        OracleMismatchError: If the three values disagree
    """
    best_inj, inj_value = None, 0
    for v in algebra.vertices:
        cx = minimal_projective_resolution(algebra, injective_string(algebra, v), depth=0)
        if cx.periods:
            continue
        pd = int(cx.length)
        if best_inj is None or pd > inj_value:
            best_inj, inj_value = v, pd

    chain = longest_relation_chain(algebra)

    pc = surface_of_algebra(algebra)
    poly_id, poly_value = None, 0
    for poly in pc.polygons:
        if not poly.is_puncture and (poly_id is None or poly.size - 1 > poly_value):
            poly_id, poly_value = poly.id, poly.size - 1

    values = (inj_value, len(chain), poly_value)
    if len(set(values)) != 1:
        raise OracleMismatchError("finitistic_dimension", values[1], values)
    return FinitisticReport(inj_value, best_inj, chain, poly_id)


def global_dimension(algebra: GentleAlgebra) -> Dimension:
    """Max projective dimension over the simple modules."""
    return max(
        (projective_dimension(algebra, Walk(v, v)) for v in algebra.vertices), default=0
    )


# ========== FORMATTING ==========


def _cell(cell: List[Entry], band: Optional[Tuple[int, Union[int, str]]]) -> str:
    if not cell:
        return "0"
    parts = []
    for e in cell:
        text = str(e.path)
        if band is not None:
            m, lam = band
            if e.tag == "J":
                text += f"[J({lam},{m})]"
            elif m > 1:
                text += f"[I{m}]"
        parts.append(text)
    return "+".join(parts)


def format_complex(cx: ProjectiveComplex) -> List[str]:
    """Degree-by-degree printout: ``deg -1: P10 + P5 + P5`` then ``d(-1) = [...]``."""
    letter = "I" if cx.injective else "P"
    lines = []
    for d, summands in cx.terms:
        names = " + ".join(
            f"{letter}{s.vertex}" + (f"^{s.mult}" if s.mult > 1 else "") for s in summands
        )
        lines.append(f"deg {d}: {names}")
    for d in cx.degrees:
        if not cx.term(d + 1):
            continue
        rows = cx.matrix(d)
        body = " / ".join(" ".join(_cell(e, cx.band) for e in row) for row in rows)
        lines.append(f"d({d}) = [{body}]")
    for p in cx.periods:
        lines.append(f"period: start={p.start} len={p.length}")
    return lines


def structured_complex(cx: ProjectiveComplex) -> List[str]:
    """Line-delimited key=value records for a complex."""
    lines = []
    for d, summands in cx.terms:
        lines.append(f"term degree={d} summands={','.join(s.vertex for s in summands)}")
    for e in cx.entries:
        tag = f" tag={e.tag}" if e.tag else ""
        lines.append(f"entry degree={e.degree} row={e.row} col={e.col} path={e.path}{tag}")
    for p in cx.periods:
        lines.append(f"period side={p.side} start={p.start} len={p.length}")
    return lines
