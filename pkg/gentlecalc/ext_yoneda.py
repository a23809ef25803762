"""
Ext spaces from weighted oriented intersections, and Yoneda sequences.

Curves are compared by their crossing sequences. Shared boundary endpoints give
data weighted by the difference of edge positions in the shared polygon, shared
puncture endpoints give periodic families, and transversal interior crossings
give a pair of data of weights 0 and 1, one in each direction.

At a divergence the three ways to leave a crossing are ranked
``succ < end < pred``; lower rank is clockwise-first.
"""

import functools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple, Union

from gentlecalc.algebra_core import GentleAlgebra
from gentlecalc.config import DEFAULT_M_MAX, Settings
from gentlecalc.exceptions import GentleCalcError, UnsupportedProductError
from gentlecalc.strings_bands import BandDatum, Letter, Walk, make_walk, string_dimension_vector
from gentlecalc.surface_model import (
    PRED,
    SUCC,
    Curve,
    PolygonComplex,
    algebra_of_coordinate,
    canonical_curve_key,
    curve_to_string,
    endpoint,
    projective_arc,
    string_to_curve,
    surface_of_algebra,
    trivial_curve,
)

logger = logging.getLogger(__name__)

BOUNDARY = "boundary"
INTERIOR = "interior"
PUNCTURE_KIND = "puncture"
END = "end"

_RANK = {SUCC: 0, END: 1, PRED: 2}
_SWAP = {SUCC: PRED, PRED: SUCC}

Module = Union[Walk, BandDatum]


# ========== INTERSECTION DATA ==========


@dataclass(frozen=True)
class IntersectionDatum:
    """
    A weighted oriented intersection from ``source`` to ``target``.

    Attributes:
        kind: "boundary", "interior" or "puncture"
        location: Polygon id, or ``x<i>/<j>`` crossing indices for interior data
        source: Curve the datum starts from
        target: Curve the datum ends at
        weight: Weight (the base weight for puncture families)
        period: Puncture family period n (0 otherwise)
        source_end: "left"/"right" end of source at the shared point
        target_end: "left"/"right" end of target at the shared point
        source_edge: 1-based edge position of source's end in the polygon
        target_edge: 1-based edge position of target's end in the polygon
    """

    kind: str
    location: str
    source: Curve
    target: Curve
    weight: int
    period: int = 0
    source_end: Optional[str] = None
    target_end: Optional[str] = None
    source_edge: int = 0
    target_edge: int = 0

    def __post_init__(self):
        if self.weight < 0:
            raise ValueError(f"Intersection weight must be non-negative: {self.weight}")
        if self.kind == INTERIOR and self.weight not in (0, 1):
            raise ValueError(f"Interior weights are 0 or 1: {self.weight}")
        if self.kind == PUNCTURE_KIND and self.period < 1:
            raise ValueError(f"Puncture families need a positive period: {self.period}")

    def has_weight(self, omega: int) -> bool:
        if self.period:
            return omega >= self.weight and (omega - self.weight) % self.period == 0
        return omega == self.weight

    def weights(self, m_max: int = DEFAULT_M_MAX) -> List[int]:
        """Weights realized by the datum (a family is truncated at m_max)."""
        if not self.period:
            return [self.weight]
        return [self.weight + m * self.period for m in range(m_max + 1)]

    @property
    def label(self) -> str:
        return f"{self.kind}@{self.location}"

    def __str__(self) -> str:
        if self.period:
            return f"({self.label}, {self.weight}+{self.period}m)"
        return f"({self.label}, {self.weight})"


def _move_after(c: Curve, i: int) -> str:
    if c.closed:
        return c.moves[i % len(c.crossings)]
    return END if i >= len(c.crossings) - 1 else c.moves[i]


def _move_before(c: Curve, i: int) -> str:
    if c.closed:
        move = c.moves[(i - 1) % len(c.crossings)]
    elif i <= 0:
        return END
    else:
        move = c.moves[i - 1]
    return _SWAP.get(move, move)


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def oriented(c: Curve, end: str) -> Curve:
    """The curve read away from the given end."""
    return c if end == "left" else c.inverse()


def clockwise_order(first: Curve, second: Curve) -> int:
    """-1 if first is clockwise-first at their common start, 1 if second is, 0 if identical."""
    k = 0
    while True:
        a, b = _move_after(first, k), _move_after(second, k)
        if a != b:
            return _sign(_RANK[a] - _RANK[b])
        if a == END:
            return 0
        k += 1


def _open_ends(pc: PolygonComplex, c: Curve):
    if c.closed:
        return []
    return [(end, endpoint(pc, c, end)) for end in ("left", "right")]


def boundary_intersections(
    pc: PolygonComplex, alpha: Curve, beta: Curve, same: Optional[bool] = None
) -> List[IntersectionDatum]:
    """
    Data from alpha to beta at shared boundary endpoints.

    Ends at one polygon are ordered by edge position; equal positions are
    resolved by the first divergence of the two curves read from the endpoint.
    The pairing of an end with itself is the identity and is skipped.
    """
    if same is None:
        same = alpha == beta
    data = []
    for a_end, a_ep in _open_ends(pc, alpha):
        for b_end, b_ep in _open_ends(pc, beta):
            if a_ep.puncture or a_ep.polygon != b_ep.polygon:
                continue
            if same and a_end == b_end:
                continue
            if a_ep.index == b_ep.index:
                order = clockwise_order(oriented(alpha, a_end), oriented(beta, b_end))
                if order >= 0:
                    continue
            elif a_ep.index > b_ep.index:
                continue
            data.append(
                IntersectionDatum(
                    BOUNDARY,
                    a_ep.polygon,
                    alpha,
                    beta,
                    b_ep.index - a_ep.index,
                    source_end=a_end,
                    target_end=b_end,
                    source_edge=a_ep.index,
                    target_edge=b_ep.index,
                )
            )
    return data


def puncture_intersections(
    pc: PolygonComplex, alpha: Curve, beta: Curve, same: Optional[bool] = None
) -> List[IntersectionDatum]:
    """
    Families from alpha to beta at shared punctures, weights base + m * n.

    The base is the clockwise distance from alpha's end to beta's end. An end
    paired with itself gives base n (the identity is not a family member).
    """
    if same is None:
        same = alpha == beta
    data = []
    for a_end, a_ep in _open_ends(pc, alpha):
        for b_end, b_ep in _open_ends(pc, beta):
            if not a_ep.puncture or a_ep.polygon != b_ep.polygon:
                continue
            n = a_ep.size
            if same and a_end == b_end:
                base = n
            elif a_ep.index == b_ep.index:
                order = clockwise_order(oriented(alpha, a_end), oriented(beta, b_end))
                base = 0 if order < 0 else n
            else:
                base = (b_ep.index - a_ep.index) % n
            data.append(
                IntersectionDatum(
                    PUNCTURE_KIND,
                    a_ep.polygon,
                    alpha,
                    beta,
                    base,
                    period=n,
                    source_end=a_end,
                    target_end=b_end,
                    source_edge=a_ep.index,
                    target_edge=b_ep.index,
                )
            )
    return data


@dataclass(frozen=True)
class _Run:
    first_start: int
    second_start: int
    length: int
    left: Tuple[str, str]
    right: Tuple[str, str]


def _runs(first: Curve, second: Curve) -> Iterator[_Run]:
    """Maximal common crossing runs of two curves in the same orientation."""
    n1, n2 = len(first.crossings), len(second.crossings)
    for i in range(n1):
        for j in range(n2):
            if first.entry(i) != second.entry(j):
                continue
            before = (_move_before(first, i), _move_before(second, j))
            if before[0] == before[1] and before[0] != END:
                continue
            length = 1
            while True:
                after = (_move_after(first, i + length - 1), _move_after(second, j + length - 1))
                if after[0] != after[1] or after[0] == END:
                    break
                length += 1
            yield _Run(i, j, length, before, after)


def interior_intersections(
    pc: PolygonComplex, alpha: Curve, beta: Curve
) -> List[IntersectionDatum]:
    """
    Data from alpha to beta at transversal interior crossings.

    A maximal common run is a crossing when alpha lies on the same side of beta
    at both of its ends. The datum from alpha to beta has weight 0 when alpha
    is clockwise-first there (a homomorphism) and weight 1 otherwise.
    """
    data = []
    for reverse, other in ((False, beta), (True, beta.inverse())):
        for run in _runs(alpha, other):
            left = _sign(_RANK[run.left[0]] - _RANK[run.left[1]])
            right = _sign(_RANK[run.right[0]] - _RANK[run.right[1]])
            if left == 0 or right == 0 or left != right:
                continue
            j = run.second_start
            if reverse:
                j = len(beta.crossings) - 1 - (run.second_start + run.length - 1)
            data.append(
                IntersectionDatum(
                    INTERIOR,
                    f"x{run.first_start}/{j}{'~' if reverse else ''}",
                    alpha,
                    beta,
                    0 if left < 0 else 1,
                )
            )
    return data


def intersections(
    pc: PolygonComplex, alpha: Curve, beta: Curve, same: Optional[bool] = None
) -> List[IntersectionDatum]:
    """All weighted oriented intersections from alpha to beta."""
    if same is None:
        same = alpha == beta
    return (
        boundary_intersections(pc, alpha, beta, same)
        + interior_intersections(pc, alpha, beta)
        + puncture_intersections(pc, alpha, beta, same)
    )


# ========== PROJECTIVE ARCS ==========


def projective_arc_algebra(pc: PolygonComplex) -> GentleAlgebra:
    """
    The algebra read off the projective arcs of a coordinate.

    At each ∘-point the projective-arc ends are put in clockwise order; consecutive
    ends x before y give an arrow y -> x, the map between their projectives. Two
    composable arrows give a nonzero path only when they are consecutive steps at
    one ∘-point through the same end.

    Raises:
        NotGentleError: If the arrows read off are not gentle
    """
    arcs = {v: projective_arc(pc, v) for v in pc.arcs}
    by_point: Dict[str, List[Tuple[str, str]]] = {}
    for v, c in arcs.items():
        for end, ep in _open_ends(pc, c):
            by_point.setdefault(ep.polygon, []).append((v, end))

    def compare(x: Tuple[str, str], y: Tuple[str, str]) -> int:
        return clockwise_order(oriented(arcs[x[0]], x[1]), oriented(arcs[y[0]], y[1]))

    arrows: List[Tuple[str, str, str]] = []
    steps: Dict[str, Tuple[str, int]] = {}
    for poly in pc.polygons:
        ordered = sorted(by_point.get(poly.id, []), key=functools.cmp_to_key(compare))
        for k in range(len(ordered) - 1):
            name = f"{poly.id}.{k + 1}"
            arrows.append((name, ordered[k + 1][0], ordered[k][0]))
            steps[name] = (poly.id, k)
    relations = [
        (a, b)
        for a, _, via in arrows
        for b, source, _ in arrows
        if via == source and not (steps[a][0] == steps[b][0] and steps[b][1] + 1 == steps[a][1])
    ]
    logger.debug("projective-arc quiver: %d arrows, %d relations", len(arrows), len(relations))
    return GentleAlgebra.checked(pc.arcs, arrows, relations)


# ========== EXT SPACES ==========


@dataclass(frozen=True)
class ExtSpace:
    """A basis of Ext^omega(M_alpha, M_beta): intersection data plus corrections."""

    omega: int
    data: Tuple[IntersectionDatum, ...]
    corrections: Tuple[str, ...] = ()

    @property
    def dimension(self) -> int:
        return len(self.data) + len(self.corrections)

    @property
    def labels(self) -> List[str]:
        return [str(d) for d in self.data] + list(self.corrections)


def _curve_of(pc: PolygonComplex, module: Module) -> Curve:
    if isinstance(module, BandDatum):
        if module.m != 1:
            raise GentleCalcError(
                f"intersection counts cover band modules with m = 1, got m = {module.m}"
            )
        return string_to_curve(pc, module.walk, band=True)
    return string_to_curve(pc, module)


def _same_module(pc: PolygonComplex, first: Module, second: Module, c1: Curve, c2: Curve) -> bool:
    if c1.closed != c2.closed:
        return False
    if canonical_curve_key(pc, c1) != canonical_curve_key(pc, c2):
        return False
    if isinstance(first, BandDatum) and isinstance(second, BandDatum):
        return first.lam == second.lam
    return True


def ext_space(algebra: GentleAlgebra, first: Module, second: Module, omega: int) -> ExtSpace:
    """
    Basis labels of Ext^omega(first, second) from the surface of ``algebra``.

    Adds the identity at omega = 0 when the modules coincide, and the
    Auslander-Reiten self-extension at omega = 1 for a band with itself.
    """
    if omega < 0:
        raise ValueError(f"omega must be non-negative: {omega}")
    pc = surface_of_algebra(algebra)
    c1, c2 = _curve_of(pc, first), _curve_of(pc, second)
    key1, key2 = canonical_curve_key(pc, c1), canonical_curve_key(pc, c2)
    same_curve = c1.closed == c2.closed and key1 == key2
    if same_curve:
        c2 = c1
    same = _same_module(pc, first, second, c1, c2)
    data = tuple(d for d in intersections(pc, c1, c2, same_curve) if d.has_weight(omega))
    corrections = []
    if same and omega == 0:
        corrections.append("identity")
    if same and omega == 1 and c1.closed:
        corrections.append("ar-sequence")
    logger.debug("Ext^%d(%s, %s): %d data", omega, first, second, len(data))
    return ExtSpace(omega, data, tuple(corrections))


def ext_dimension(algebra: GentleAlgebra, first: Module, second: Module, omega: int) -> int:
    """dim Ext^omega(first, second)."""
    return ext_space(algebra, first, second, omega).dimension


def hom_dimension(algebra: GentleAlgebra, first: Module, second: Module) -> int:
    """dim Hom(first, second), the omega = 0 case."""
    return ext_dimension(algebra, first, second, 0)


def ext_table(
    algebra: GentleAlgebra,
    first: Module,
    second: Module,
    omega_max: int,
    settings: Optional[Settings] = None,
) -> Dict[int, ExtSpace]:
    """Ext spaces for omega = 0..omega_max, computed concurrently and returned in order."""
    workers = settings.max_workers if settings is not None else 4
    with ThreadPoolExecutor(max_workers=workers) as pool:
        spaces = list(
            pool.map(lambda w: ext_space(algebra, first, second, w), range(omega_max + 1))
        )
    return {s.omega: s for s in spaces}


# ========== YONEDA ==========


def _corner(pc: PolygonComplex, datum: IntersectionDatum, edge: int) -> str:
    """Arrow at the corner from 1-based edge ``edge`` to the next one."""
    pi = pc.polygon_index(datum.location)
    k = edge - 1
    if datum.period:
        k %= datum.period
    return pc.corner_arrow(pi, k)


def _extend(
    pc: PolygonComplex, algebra: GentleAlgebra, curve: Curve, end: str, arrow: str, leaving: bool
) -> Walk:
    """Extend a curve's walk at ``end`` by ``arrow``, which leaves (or enters) that end's arc."""
    w = curve_to_string(pc, curve)
    if leaving:
        letters = (
            w.letters + (Letter(arrow),) if end == "right" else (Letter(arrow, True),) + w.letters
        )
    else:
        letters = (
            (Letter(arrow),) + w.letters if end == "left" else w.letters + (Letter(arrow, True),)
        )
    return make_walk(algebra, letters)


@dataclass(frozen=True)
class YonedaSequence:
    """
    0 -> M_beta -> M_gamma1 -> ... -> M_gamma_omega -> M_alpha -> 0.

    ``terms`` lists the strings beta, gamma_1, ..., gamma_omega, alpha;
    ``maps`` names the weight-0 intersection between consecutive terms.
    """

    datum: IntersectionDatum
    terms: Tuple[Walk, ...]
    maps: Tuple[str, ...] = field(default=())

    @property
    def middle(self) -> Tuple[Walk, ...]:
        return self.terms[1:-1]


def _resolve_weight(datum: IntersectionDatum, omega: Optional[int]) -> int:
    if datum.kind == INTERIOR:
        raise UnsupportedProductError("interior intersections bound no polygon")
    if omega is None:
        omega = datum.weight if datum.weight or not datum.period else datum.period
    if not datum.has_weight(omega):
        raise UnsupportedProductError(f"{datum} has no member of weight {omega}")
    if omega < 1:
        raise UnsupportedProductError("a weight-0 intersection has no extension polygon")
    return omega


def _yoneda_walks(
    pc: PolygonComplex, datum: IntersectionDatum, omega: Optional[int] = None
) -> List[Walk]:
    omega = _resolve_weight(datum, omega)
    algebra = algebra_of_coordinate(pc)
    u = datum.source_edge
    alpha = curve_to_string(pc, datum.source)
    beta = curve_to_string(pc, datum.target)
    if omega == 1:
        c = _corner(pc, datum, u)
        left = alpha if datum.source_end == "right" else alpha.inverse()
        right = beta if datum.target_end == "left" else beta.inverse()
        middle = [make_walk(algebra, left.letters + (Letter(c),) + right.letters)]
    else:
        first = _extend(
            pc, algebra, datum.target, datum.target_end, _corner(pc, datum, u + omega - 1), False
        )
        inner = [
            make_walk(algebra, [Letter(_corner(pc, datum, u + omega - i))]) for i in range(2, omega)
        ]
        last = _extend(pc, algebra, datum.source, datum.source_end, _corner(pc, datum, u), True)
        middle = [first] + inner + [last]
    return [beta] + middle + [alpha]


def yoneda_polygon(
    pc: PolygonComplex, datum: IntersectionDatum, omega: Optional[int] = None
) -> List[Curve]:
    """
    The distinguished polygon gamma_0 = beta, gamma_1, ..., gamma_omega, gamma_(omega+1) = alpha.

    ``omega`` picks a member of a puncture family (default: its smallest positive weight).

    Raises:
        UnsupportedProductError: For interior or weight-0 data
    """
    walks = _yoneda_walks(pc, datum, omega)
    return [datum.target] + [string_to_curve(pc, w) for w in walks[1:-1]] + [datum.source]


def yoneda_extension(
    pc: PolygonComplex, datum: IntersectionDatum, omega: Optional[int] = None
) -> YonedaSequence:
    """The exact sequence of string modules representing a boundary or puncture datum."""
    walks = _yoneda_walks(pc, datum, omega)
    maps = tuple(f"b{i}" for i in range(len(walks) - 1))
    return YonedaSequence(datum, tuple(walks), maps)


def euler_defect(algebra: GentleAlgebra, seq: YonedaSequence) -> Dict[str, int]:
    """Alternating sum of the terms' dimension vectors (all zero for an exact sequence)."""
    total = {v: 0 for v in algebra.vertices}
    for i, w in enumerate(seq.terms):
        sign = 1 if i % 2 == 0 else -1
        for v, d in string_dimension_vector(algebra, w).items():
            total[v] += sign * d
    return {v: d for v, d in total.items() if d}


@dataclass(frozen=True)
class YonedaProduct:
    """A composite datum and the glued polygon of its extension."""

    datum: IntersectionDatum
    polygon: Tuple[Curve, ...]


def yoneda_product(
    pc: PolygonComplex, first: IntersectionDatum, second: IntersectionDatum
) -> YonedaProduct:
    """
    Product of data alpha -> beta and beta -> gamma meeting at one marked point.

    Weights add; the polygon is the two polygons glued along beta.

    Raises:
        UnsupportedProductError: If the data do not share the point and the middle end
    """
    for d in (first, second):
        if d.kind == INTERIOR:
            raise UnsupportedProductError("products of interior data are not at a marked point")
    if first.kind != second.kind or first.location != second.location:
        raise UnsupportedProductError(
            f"data at {first.label} and {second.label} do not share a marked point"
        )
    if first.target != second.source or first.target_end != second.source_end:
        raise UnsupportedProductError("the middle curve ends differ")
    product = IntersectionDatum(
        first.kind,
        first.location,
        first.source,
        second.target,
        first.weight + second.weight,
        period=first.period,
        source_end=first.source_end,
        target_end=second.target_end,
        source_edge=first.source_edge,
        target_edge=second.target_edge,
    )
    polygon: Tuple[Curve, ...] = ()
    if product.weight >= 1:
        polygon = tuple(yoneda_polygon(pc, product))
    return YonedaProduct(product, polygon)


def _end_at(pc: PolygonComplex, c: Curve, polygon: str, edge: int) -> Optional[str]:
    for end in ("left", "right"):
        ep = endpoint(pc, c, end)
        if ep.polygon == polygon and ep.index == edge:
            return end
    return None


def factor_chain(pc: PolygonComplex, datum: IntersectionDatum) -> List[IntersectionDatum]:
    """
    Split a weight-omega boundary datum into omega weight-1 data.

    The intermediate curves are the dual arcs of the polygon's edges between
    the two ends; the product of the chain is the datum.
    """
    if datum.kind != BOUNDARY or datum.weight < 1:
        raise UnsupportedProductError("only boundary data of positive weight factor")
    pi = pc.polygon_index(datum.location)
    poly = pc.polygons[pi]
    u = datum.source_edge
    stops = [(datum.source, datum.source_end, u)]
    for edge in range(u + 1, datum.target_edge):
        arc = poly.edges[edge - 1][0]
        c = trivial_curve(pc, arc)
        end = _end_at(pc, c, poly.id, edge)
        if end is None:
            raise GentleCalcError(f"dual arc of {arc} does not end at edge {edge} of {poly.id}")
        stops.append((c, end, edge))
    stops.append((datum.target, datum.target_end, datum.target_edge))
    chain = []
    for (c1, e1, m1), (c2, e2, m2) in zip(stops, stops[1:]):
        chain.append(
            IntersectionDatum(
                BOUNDARY,
                poly.id,
                c1,
                c2,
                m2 - m1,
                source_end=e1,
                target_end=e2,
                source_edge=m1,
                target_edge=m2,
            )
        )
    return chain


def format_ext_table(table: Dict[int, ExtSpace]) -> List[str]:
    """Human table rows: ``ext^w = d  [labels]``."""
    return [f"ext^{w} = {s.dimension}  [{', '.join(s.labels)}]" for w, s in sorted(table.items())]
