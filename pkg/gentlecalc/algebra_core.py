"""
Quivers with length-two monomial relations, gentleness checks and path arithmetic.

Paths compose from left to right: ``ab`` means "first a, then b", and modules are
right modules. A :class:`Path` is always a nonzero element of kQ/I; composition
returns ``None`` for the zero element.
"""

import logging
import re
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher, categorical_node_match

from gentlecalc.exceptions import (
    DuplicateIdError,
    NotComposableError,
    NotGentleError,
    ParseError,
    UnknownReferenceError,
)

logger = logging.getLogger(__name__)


# ========== VALUE TYPES ==========


@dataclass(frozen=True)
class Arrow:
    """An arrow ``name: source -> target`` of a quiver."""

    name: str
    source: str
    target: str

    def __str__(self) -> str:
        return f"{self.name}: {self.source} -> {self.target}"


@dataclass(frozen=True)
class Path:
    """
    A nonzero path of kQ/I.

    Attributes:
        source: Starting vertex
        target: Ending vertex
        arrows: Arrow names in composition order (empty for the trivial path e_source)
    """

    source: str
    target: str
    arrows: Tuple[str, ...] = ()

    def __post_init__(self):
        if not self.arrows and self.source != self.target:
            raise ValueError(f"Trivial path must start and end at one vertex: {self}")

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    def __len__(self) -> int:
        return len(self.arrows)

    def __str__(self) -> str:
        if not self.arrows:
            return f"e{self.source}"
        return "*".join(self.arrows)


@dataclass(frozen=True)
class Violation:
    """
    One failed gentleness clause.

    Clauses: 1 = at most two arrows in/out, 2 = uniqueness of (non-)relation
    continuations, 3 = well-formed length-two relations, 4 = every oriented
    cycle contains a relation (finite dimension).
    """

    clause: int
    subject: str
    message: str

    def __str__(self) -> str:
        return f"clause ({self.clause}) at {self.subject}: {self.message}"


@dataclass(frozen=True)
class Thread:
    """
    A maximal relation-chained (forbidden) or non-relation (permitted) path.

    ``vertices`` lists the vertices visited in order; for a cyclic thread the
    last arrow returns to ``vertices[0]`` and the vertex is not repeated.
    """

    vertices: Tuple[str, ...]
    arrows: Tuple[str, ...]
    cyclic: bool = False

    @property
    def is_trivial(self) -> bool:
        return not self.arrows


# ========== ALGEBRA ==========


@dataclass(frozen=True)
class GentleAlgebra:
    """
    A bound quiver kQ/I with I generated by paths of length two.

    Instances built through :func:`parse_algebra` or :meth:`checked` are validated;
    the raw constructor only checks structural consistency.

    Attributes:
        vertices: Vertex ids in declaration order
        arrows: Arrows in declaration order
        relations: Ordered pairs (a, b) with ab in I, in declaration order
    """

    vertices: Tuple[str, ...]
    arrows: Tuple[Arrow, ...]
    relations: Tuple[Tuple[str, str], ...] = ()
    _by_name: Dict[str, Arrow] = field(default_factory=dict, init=False, repr=False, compare=False)
    _index: Dict[str, int] = field(default_factory=dict, init=False, repr=False, compare=False)
    _relset: FrozenSet[Tuple[str, str]] = field(
        default=frozenset(), init=False, repr=False, compare=False
    )

    def __post_init__(self):
        vertex_set = set(self.vertices)
        if len(vertex_set) != len(self.vertices):
            raise ValueError("Vertex ids must be unique")
        by_name: Dict[str, Arrow] = {}
        for arrow in self.arrows:
            if arrow.name in by_name:
                raise ValueError(f"Duplicate arrow id: {arrow.name}")
            if arrow.source not in vertex_set or arrow.target not in vertex_set:
                raise ValueError(f"Arrow {arrow} references an unknown vertex")
            by_name[arrow.name] = arrow
        for a, b in self.relations:
            if a not in by_name or b not in by_name:
                raise ValueError(f"Relation ({a}, {b}) references an unknown arrow")
        object.__setattr__(self, "_by_name", by_name)
        object.__setattr__(self, "_index", {a.name: i for i, a in enumerate(self.arrows)})
        object.__setattr__(self, "_relset", frozenset(self.relations))

    # ---------- construction ----------

    @classmethod
    def checked(
        cls,
        vertices: Iterable[str],
        arrows: Iterable[Tuple[str, str, str]],
        relations: Iterable[Tuple[str, str]] = (),
    ) -> "GentleAlgebra":
        """
        Build and validate an algebra.

        Args:
            vertices: Vertex ids
            arrows: (name, source, target) triples
            relations: (a, b) pairs meaning ab = 0

        Raises:
            NotGentleError: If the result violates a gentleness clause
        """
        algebra = cls(
            tuple(str(v) for v in vertices),
            tuple(Arrow(str(n), str(s), str(t)) for n, s, t in arrows),
            tuple((str(a), str(b)) for a, b in relations),
        )
        violations = validate_gentle(algebra)
        if violations:
            raise NotGentleError(violations)
        return algebra

    # ---------- lookups ----------

    def arrow(self, name: str) -> Arrow:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownReferenceError("arrow", name) from None

    def has_arrow(self, name: str) -> bool:
        return name in self._by_name

    def index(self, name: str) -> int:
        """Declaration index of an arrow (fixes the letter order)."""
        return self._index[name]

    def source(self, name: str) -> str:
        return self.arrow(name).source

    def target(self, name: str) -> str:
        return self.arrow(name).target

    def out_arrows(self, v: str) -> List[str]:
        return [a.name for a in self.arrows if a.source == v]

    def in_arrows(self, v: str) -> List[str]:
        return [a.name for a in self.arrows if a.target == v]

    def is_relation(self, a: str, b: str) -> bool:
        return (a, b) in self._relset

    def relation_after(self, a: str) -> Optional[str]:
        """The arrow b with ab in I, if any."""
        for b in self.out_arrows(self.target(a)):
            if self.is_relation(a, b):
                return b
        return None

    def relation_before(self, b: str) -> Optional[str]:
        """The arrow a with ab in I, if any."""
        for a in self.in_arrows(self.source(b)):
            if self.is_relation(a, b):
                return a
        return None

    def continuation_after(self, a: str) -> Optional[str]:
        """The arrow b with ab a nonzero path, if any."""
        for b in self.out_arrows(self.target(a)):
            if not self.is_relation(a, b):
                return b
        return None

    def continuation_before(self, b: str) -> Optional[str]:
        """The arrow a with ab a nonzero path, if any."""
        for a in self.in_arrows(self.source(b)):
            if not self.is_relation(a, b):
                return a
        return None

    # ---------- paths ----------

    def trivial(self, v: str) -> Path:
        if v not in self.vertices:
            raise UnknownReferenceError("vertex", v)
        return Path(v, v)

    def make_path(self, names: Sequence[str]) -> Optional[Path]:
        """
        Build the path of the given arrows.

        Returns:
            The path, or None when it contains a relation

        Raises:
            NotComposableError: If consecutive arrows do not meet
        """
        if not names:
            raise ValueError("make_path needs at least one arrow; use trivial()")
        for a, b in zip(names, names[1:]):
            if self.target(a) != self.source(b):
                raise NotComposableError(a, b)
            if self.is_relation(a, b):
                return None
        return Path(self.source(names[0]), self.target(names[-1]), tuple(names))

    def compose(self, p: Path, q: Path) -> Optional[Path]:
        """
        Compose p then q.

        Returns:
            The concatenation, or None if a relation appears at the junction
        """
        if p.target != q.source:
            raise NotComposableError(p, q)
        if p.arrows and q.arrows and self.is_relation(p.arrows[-1], q.arrows[0]):
            return None
        return Path(p.source, q.target, p.arrows + q.arrows)

    def nonzero_paths_from(self, v: str) -> List[Path]:
        """
        Basis of the indecomposable projective P_v: all nonzero paths starting at v.

        Paths are listed trivial path first, then by first arrow, then by length.
        """
        result = [self.trivial(v)]
        limit = len(self.arrows) + 1
        for first in self.out_arrows(v):
            arrows = [first]
            while True:
                if len(arrows) > limit:
                    raise NotGentleError(
                        [Violation(4, v, "relation-free oriented cycle; infinite dimension")]
                    )
                result.append(Path(v, self.target(arrows[-1]), tuple(arrows)))
                nxt = self.continuation_after(arrows[-1])
                if nxt is None:
                    break
                arrows.append(nxt)
        return result

    def nonzero_paths_to(self, v: str) -> List[Path]:
        """Basis of the indecomposable injective I_v: all nonzero paths ending at v."""
        result = [self.trivial(v)]
        limit = len(self.arrows) + 1
        for last in self.in_arrows(v):
            arrows = [last]
            while True:
                if len(arrows) > limit:
                    raise NotGentleError(
                        [Violation(4, v, "relation-free oriented cycle; infinite dimension")]
                    )
                result.append(Path(self.source(arrows[0]), v, tuple(arrows)))
                prev = self.continuation_before(arrows[0])
                if prev is None:
                    break
                arrows.insert(0, prev)
        return result

    def paths_between(self, u: str, v: str) -> List[Path]:
        """All nonzero paths from u to v."""
        return [p for p in self.nonzero_paths_from(u) if p.target == v]

    # ---------- derived algebras ----------

    def opposite(self) -> "GentleAlgebra":
        """The opposite algebra: arrows reversed, names kept, relations reversed."""
        return GentleAlgebra(
            self.vertices,
            tuple(Arrow(a.name, a.target, a.source) for a in self.arrows),
            tuple((b, a) for a, b in self.relations),
        )

    def subalgebra(self, keep: Iterable[str]) -> "GentleAlgebra":
        """
        Keep only the named arrows and the relations between them.

        All vertices survive, so the result may be disconnected.
        """
        kept = set(keep)
        return GentleAlgebra(
            self.vertices,
            tuple(a for a in self.arrows if a.name in kept),
            tuple((a, b) for a, b in self.relations if a in kept and b in kept),
        )

    def degree_zero_subalgebra(self, degrees: Dict[str, int]) -> "GentleAlgebra":
        """Arrows of degree zero under ``degrees`` and the relations among them."""
        return self.subalgebra(a.name for a in self.arrows if degrees.get(a.name, 0) == 0)

    def __str__(self) -> str:
        return (
            f"GentleAlgebra({len(self.vertices)} vertices, {len(self.arrows)} arrows, "
            f"{len(self.relations)} relations)"
        )


# ========== VALIDATION ==========


def validate_gentle(algebra: GentleAlgebra) -> List[Violation]:
    """
    Check the gentleness clauses.

    Args:
        algebra: Structurally well-formed bound quiver

    Returns:
        Violations in clause order; empty iff the algebra is gentle
    """
    violations: List[Violation] = []

    for v in algebra.vertices:
        outs, ins = algebra.out_arrows(v), algebra.in_arrows(v)
        if len(outs) > 2:
            violations.append(Violation(1, f"vertex {v}", f"{len(outs)} outgoing arrows"))
        if len(ins) > 2:
            violations.append(Violation(1, f"vertex {v}", f"{len(ins)} incoming arrows"))

    for arrow in algebra.arrows:
        a = arrow.name
        after = algebra.out_arrows(arrow.target)
        rel_after = [b for b in after if algebra.is_relation(a, b)]
        free_after = [b for b in after if not algebra.is_relation(a, b)]
        before = algebra.in_arrows(arrow.source)
        rel_before = [c for c in before if algebra.is_relation(c, a)]
        free_before = [c for c in before if not algebra.is_relation(c, a)]
        for label, found in (
            ("relations ab starting with", rel_after),
            ("nonzero paths ab starting with", free_after),
            ("relations ca ending with", rel_before),
            ("nonzero paths ca ending with", free_before),
        ):
            if len(found) > 1:
                violations.append(
                    Violation(2, f"arrow {a}", f"{len(found)} {label} {a}: {', '.join(found)}")
                )

    seen = set()
    for a, b in algebra.relations:
        if (a, b) in seen:
            violations.append(Violation(3, f"relation {a} {b}", "duplicate relation"))
        seen.add((a, b))
        if algebra.target(a) != algebra.source(b):
            violations.append(
                Violation(3, f"relation {a} {b}", "arrows are not composable (t(a) != s(b))")
            )

    # an oriented cycle without relations makes kQ/I infinite-dimensional
    graph = nx.DiGraph()
    graph.add_nodes_from(a.name for a in algebra.arrows)
    for arrow in algebra.arrows:
        for b in algebra.out_arrows(arrow.target):
            if not algebra.is_relation(arrow.name, b):
                graph.add_edge(arrow.name, b)
    try:
        cycle = nx.find_cycle(graph)
    except nx.NetworkXNoCycle:
        cycle = None
    if cycle:
        names = " ".join(edge[0] for edge in cycle)
        violations.append(Violation(4, f"cycle {names}", "oriented cycle without relations"))

    if violations:
        logger.debug("validate_gentle found %d violations", len(violations))
    return violations


def compose(algebra: GentleAlgebra, p: Path, q: Path) -> Optional[Path]:
    """Module-level form of :meth:`GentleAlgebra.compose`."""
    return algebra.compose(p, q)


def opposite(algebra: GentleAlgebra) -> GentleAlgebra:
    """Module-level form of :meth:`GentleAlgebra.opposite`."""
    return algebra.opposite()


# ========== THREADS ==========


def _chains(algebra: GentleAlgebra, linked) -> List[Thread]:
    """Maximal arrow chains where consecutive arrows satisfy ``linked``."""

    def nxt(a: str) -> Optional[str]:
        for b in algebra.out_arrows(algebra.target(a)):
            if linked(a, b):
                return b
        return None

    def prev(b: str) -> Optional[str]:
        for a in algebra.in_arrows(algebra.source(b)):
            if linked(a, b):
                return a
        return None

    threads: List[Thread] = []
    used = set()
    for arrow in algebra.arrows:
        if arrow.name in used:
            continue
        start = arrow.name
        cyclic = False
        while True:
            p = prev(start)
            if p is None:
                break
            if p == arrow.name:
                cyclic = True
                break
            start = p
        if cyclic:
            # rotate so the earliest declared arrow comes first
            members = [arrow.name]
            b = nxt(arrow.name)
            while b != arrow.name:
                members.append(b)
                b = nxt(b)
            k = min(range(len(members)), key=lambda i: algebra.index(members[i]))
            members = members[k:] + members[:k]
            verts = tuple(algebra.source(m) for m in members)
            threads.append(Thread(verts, tuple(members), cyclic=True))
        else:
            members = [start]
            b = nxt(start)
            while b is not None:
                members.append(b)
                b = nxt(b)
            verts = tuple(algebra.source(m) for m in members) + (algebra.target(members[-1]),)
            threads.append(Thread(verts, tuple(members)))
        used.update(members)
    return threads


def _trivial_threads(algebra: GentleAlgebra, nontrivial: List[Thread]) -> List[Thread]:
    visits: Dict[str, int] = {v: 0 for v in algebra.vertices}
    for thread in nontrivial:
        for v in thread.vertices:
            visits[v] += 1
    trivial = []
    for v in algebra.vertices:
        for _ in range(2 - visits[v]):
            trivial.append(Thread((v,), ()))
    return trivial


def forbidden_threads(algebra: GentleAlgebra) -> List[Thread]:
    """
    Maximal relation-chained paths, trivial ones included.

    Every vertex lies on exactly two forbidden threads (counted with multiplicity).
    Nontrivial threads come first in order of their first declared arrow.
    """
    chains = _chains(algebra, algebra.is_relation)
    return chains + _trivial_threads(algebra, chains)


def permitted_threads(algebra: GentleAlgebra) -> List[Thread]:
    """Maximal nonzero paths, trivial ones included."""
    chains = _chains(algebra, lambda a, b: not algebra.is_relation(a, b))
    return chains + _trivial_threads(algebra, chains)


def threads(algebra: GentleAlgebra) -> Tuple[List[Thread], List[Thread]]:
    """(forbidden threads, permitted threads): the polygons and ●-points of the surface."""
    return forbidden_threads(algebra), permitted_threads(algebra)


# ========== ISOMORPHISM ==========


def _structure_graph(algebra: GentleAlgebra) -> nx.DiGraph:
    graph = nx.DiGraph()
    for v in algebra.vertices:
        graph.add_node(("v", v), kind="vertex")
    for arrow in algebra.arrows:
        graph.add_node(("a", arrow.name), kind="arrow")
        graph.add_edge(("v", arrow.source), ("a", arrow.name))
        graph.add_edge(("a", arrow.name), ("v", arrow.target))
    for a, b in algebra.relations:
        graph.add_edge(("a", a), ("a", b))
    return graph


def isomorphism(first: GentleAlgebra, second: GentleAlgebra) -> Optional[Dict[str, str]]:
    """
    Find a vertex/arrow bijection preserving incidence and relations.

    Returns:
        Mapping of first's vertex ids and arrow names to second's, or None
    """
    if (len(first.vertices), len(first.arrows), len(first.relations)) != (
        len(second.vertices),
        len(second.arrows),
        len(second.relations),
    ):
        return None
    matcher = DiGraphMatcher(
        _structure_graph(first),
        _structure_graph(second),
        node_match=categorical_node_match("kind", None),
    )
    if not matcher.is_isomorphic():
        return None
    return {k[1]: v[1] for k, v in matcher.mapping.items()}


def isomorphic(first: GentleAlgebra, second: GentleAlgebra) -> bool:
    return isomorphism(first, second) is not None


# ========== TEXT FORMAT ==========

_VERTEX_RE = re.compile(r"^vertex\s+(\S+)$")
_RANGE_RE = re.compile(r"^vertices\s+(-?\d+)\s*\.\.\s*(-?\d+)$")
_ARROW_RE = re.compile(r"^arrow\s+(\S+?)\s*:\s*(\S+)\s*->\s*(\S+)$")
_RELATION_RE = re.compile(r"^relation\s+(\S+)\s+(\S+)$")


def parse_algebra(text: str, source: str = "<text>", validate: bool = True) -> GentleAlgebra:
    """
    Parse the line-based algebra format.

    Lines (``#`` starts a comment)::

        vertex <id>
        vertices <id>..<id>
        arrow <name>: <src> -> <tgt>
        relation <name> <name>

    Args:
        text: Algebra description
        source: Name used in error messages
        validate: Reject non-gentle input

    Raises:
        ParseError: On malformed lines, unknown references or duplicates
        NotGentleError: If validate is set and the algebra is not gentle
    """
    vertices: List[str] = []
    arrows: List[Arrow] = []
    relations: List[Tuple[str, str]] = []
    arrow_names = set()

    def add_vertex(v: str, line_no: int) -> None:
        if v in vertices:
            raise DuplicateIdError("vertex", v, line_no, source)
        vertices.append(v)

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        line = re.sub(r"\s+", " ", line)
        if m := _VERTEX_RE.match(line):
            add_vertex(m.group(1), line_no)
        elif m := _RANGE_RE.match(line):
            lo, hi = int(m.group(1)), int(m.group(2))
            if hi < lo:
                raise ParseError(source, line_no, f"empty vertex range {lo}..{hi}")
            for v in range(lo, hi + 1):
                add_vertex(str(v), line_no)
        elif m := _ARROW_RE.match(line):
            name, src, tgt = m.groups()
            if name in arrow_names:
                raise DuplicateIdError("arrow", name, line_no, source)
            for v in (src, tgt):
                if v not in vertices:
                    raise UnknownReferenceError("vertex", v, line_no, source)
            arrow_names.add(name)
            arrows.append(Arrow(name, src, tgt))
        elif m := _RELATION_RE.match(line):
            pair = (m.group(1), m.group(2))
            for a in pair:
                if a not in arrow_names:
                    raise UnknownReferenceError("arrow", a, line_no, source)
            if pair in relations:
                raise DuplicateIdError("relation", " ".join(pair), line_no, source)
            relations.append(pair)
        else:
            raise ParseError(source, line_no, f"unrecognized line '{raw.strip()}'")

    algebra = GentleAlgebra(tuple(vertices), tuple(arrows), tuple(relations))
    if validate:
        violations = validate_gentle(algebra)
        if violations:
            raise NotGentleError(violations)
    logger.debug("parsed %s from %s", algebra, source)
    return algebra


def serialize_algebra(algebra: GentleAlgebra) -> str:
    """Emit the canonical text format in declaration order."""
    lines = [f"vertex {v}" for v in algebra.vertices]
    lines += [f"arrow {a.name}: {a.source} -> {a.target}" for a in algebra.arrows]
    lines += [f"relation {a} {b}" for a, b in algebra.relations]
    return "\n".join(lines) + "\n"


def to_dot(algebra: GentleAlgebra, name: str = "Q") -> str:
    """DOT rendering of the quiver; relations are drawn as dashed comments."""
    lines = [f"digraph {name} {{"]
    for v in algebra.vertices:
        lines.append(f'  "{v}";')
    for a in algebra.arrows:
        lines.append(f'  "{a.source}" -> "{a.target}" [label="{a.name}"];')
    for a, b in algebra.relations:
        lines.append(f"  // relation {a} {b}")
    lines.append("}")
    return "\n".join(lines) + "\n"
