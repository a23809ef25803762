"""
Walks, strings and bands over a gentle algebra.

A walk is a sequence of letters, each an arrow or a formal inverse, read left to
right. Strings avoid relations in both reading directions; bands are primitive
cyclic strings whose powers stay strings.

Walk text syntax: ``a5 a7^- a6``; ``e<vertex>`` is the trivial walk.
"""

import logging
import re
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple, Union

from gentlecalc.algebra_core import GentleAlgebra
from gentlecalc.exceptions import InvalidWalkError, ParseError, UnknownReferenceError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Letter:
    """An arrow (``inverse=False``) or its formal inverse."""

    arrow: str
    inverse: bool = False

    @property
    def direct(self) -> bool:
        return not self.inverse

    def flipped(self) -> "Letter":
        return Letter(self.arrow, not self.inverse)

    def source(self, algebra: GentleAlgebra) -> str:
        a = algebra.arrow(self.arrow)
        return a.target if self.inverse else a.source

    def target(self, algebra: GentleAlgebra) -> str:
        a = algebra.arrow(self.arrow)
        return a.source if self.inverse else a.target

    def key(self, algebra: GentleAlgebra) -> Tuple[int, int]:
        """Total letter order: arrow declaration index, then direct before inverse."""
        return (algebra.index(self.arrow), int(self.inverse))

    def __str__(self) -> str:
        return f"{self.arrow}^-" if self.inverse else self.arrow


@dataclass(frozen=True)
class Walk:
    """
    A walk with explicit endpoints.

    Attributes:
        start: Vertex where the walk begins
        end: Vertex where the walk ends
        letters: Letters in reading order (empty for the trivial walk at ``start``)
    """

    start: str
    end: str
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        if not self.letters and self.start != self.end:
            raise ValueError(f"Trivial walk must start and end at one vertex: {self.start}")

    @property
    def is_trivial(self) -> bool:
        return not self.letters

    def __len__(self) -> int:
        return len(self.letters)

    def inverse(self) -> "Walk":
        return Walk(self.end, self.start, tuple(l.flipped() for l in reversed(self.letters)))

    def __str__(self) -> str:
        if not self.letters:
            return f"e{self.start}"
        return " ".join(str(l) for l in self.letters)


def make_walk(algebra: GentleAlgebra, letters: Sequence[Letter]) -> Walk:
    """
    Build a walk and check the walk conditions.

    Raises:
        InvalidWalkError: If consecutive letters do not meet or cancel
    """
    if not letters:
        raise InvalidWalkError("", "empty letter list; use trivial_walk()")
    letters = tuple(letters)
    for l in letters:
        if not algebra.has_arrow(l.arrow):
            raise UnknownReferenceError("arrow", l.arrow)
    for x, y in zip(letters, letters[1:]):
        if x.target(algebra) != y.source(algebra):
            raise InvalidWalkError(_fmt(letters), f"{x} and {y} do not meet")
        if y == x.flipped():
            raise InvalidWalkError(_fmt(letters), f"{x} is followed by its inverse")
    return Walk(letters[0].source(algebra), letters[-1].target(algebra), letters)


def trivial_walk(algebra: GentleAlgebra, v: str) -> Walk:
    if v not in algebra.vertices:
        raise UnknownReferenceError("vertex", v)
    return Walk(v, v)


def rotate(algebra: GentleAlgebra, w: Walk, k: int) -> Walk:
    """Rotate a closed walk so it starts at letter k (endpoints recomputed)."""
    if w.start != w.end:
        raise InvalidWalkError(w, "only closed walks can be rotated")
    if not w.letters:
        return w
    k %= len(w.letters)
    return make_walk(algebra, w.letters[k:] + w.letters[:k])


def _fmt(letters: Sequence[Letter]) -> str:
    return " ".join(str(l) for l in letters)


def walk_vertices(algebra: GentleAlgebra, w: Walk) -> List[str]:
    """Vertices visited by w, endpoints included (length + 1 entries)."""
    return [w.start] + [l.target(algebra) for l in w.letters]


# ========== STRINGS AND BANDS ==========


def _junction_ok(algebra: GentleAlgebra, x: Letter, y: Letter) -> bool:
    if y == x.flipped():
        return False
    if x.direct and y.direct:
        return not algebra.is_relation(x.arrow, y.arrow)
    if x.inverse and y.inverse:
        return not algebra.is_relation(y.arrow, x.arrow)
    return True


def is_string(algebra: GentleAlgebra, w: Walk) -> bool:
    """True iff no subword of w or of its inverse is a relation."""
    return all(_junction_ok(algebra, x, y) for x, y in zip(w.letters, w.letters[1:]))


def _smallest_period(keys: Sequence) -> int:
    n = len(keys)
    fail = [0] * (n + 1)
    fail[0] = -1
    k = -1
    for i in range(n):
        while k >= 0 and keys[k] != keys[i]:
            k = fail[k]
        k += 1
        fail[i + 1] = k
    period = n - fail[n]
    return period if n % period == 0 else n


def is_band(algebra: GentleAlgebra, w: Walk) -> bool:
    """
    True iff w is a primitive closed string, every power is a string, and w
    contains letters of both directions.
    """
    if not w.letters or w.start != w.end:
        return False
    if not is_string(algebra, w):
        return False
    if not _junction_ok(algebra, w.letters[-1], w.letters[0]):
        return False
    if all(l.direct for l in w.letters) or all(l.inverse for l in w.letters):
        return False
    return _smallest_period(w.letters) == len(w.letters)


def _keys(algebra: GentleAlgebra, w: Walk) -> List[Tuple[int, int]]:
    return [l.key(algebra) for l in w.letters]


def canonical_string(algebra: GentleAlgebra, w: Walk) -> Walk:
    """Lexicographic minimum of w and its inverse under the letter order."""
    if not w.letters:
        return w
    inv = w.inverse()
    return w if _keys(algebra, w) <= _keys(algebra, inv) else inv


def least_rotation(seq: Sequence) -> int:
    """Booth's algorithm: start index of the lexicographically least rotation."""
    doubled = list(seq) + list(seq)
    fail = [-1] * len(doubled)
    k = 0
    for j in range(1, len(doubled)):
        sj = doubled[j]
        i = fail[j - k - 1]
        while i != -1 and sj != doubled[k + i + 1]:
            if sj < doubled[k + i + 1]:
                k = j - i - 1
            i = fail[i]
        if sj != doubled[k + i + 1]:
            if sj < doubled[k]:
                k = j
            fail[j - k] = -1
        else:
            fail[j - k] = i + 1
    return k


def canonical_band(algebra: GentleAlgebra, w: Walk) -> Walk:
    """Least rotation over w and its inverse; invariant under rotation and inversion."""
    best: Optional[Tuple[List[Tuple[int, int]], Walk]] = None
    for candidate in (w, w.inverse()):
        keys = _keys(algebra, candidate)
        k = least_rotation(keys)
        rotated_keys = keys[k:] + keys[:k]
        if best is None or rotated_keys < best[0]:
            best = (rotated_keys, rotate(algebra, candidate, k))
    assert best is not None
    return best[1]


def _extensions(algebra: GentleAlgebra, w: Walk) -> Iterator[Letter]:
    """Letters that extend the string w on the right and keep it a string."""
    end = w.end
    candidates = [Letter(a) for a in algebra.out_arrows(end)]
    candidates += [Letter(a, True) for a in algebra.in_arrows(end)]
    for l in candidates:
        if w.letters and not _junction_ok(algebra, w.letters[-1], l):
            continue
        yield l


def _all_strings(algebra: GentleAlgebra, max_len: int) -> Iterator[Walk]:
    stack: List[Walk] = []
    for v in algebra.vertices:
        stack.append(Walk(v, v))
    while stack:
        w = stack.pop()
        yield w
        if len(w) >= max_len:
            continue
        for l in _extensions(algebra, w):
            stack.append(Walk(w.start, l.target(algebra), w.letters + (l,)))


def _sort_key(algebra: GentleAlgebra, w: Walk):
    return (len(w), _keys(algebra, w), algebra.vertices.index(w.start))


def enumerate_strings(algebra: GentleAlgebra, max_len: int) -> List[Walk]:
    """
    One canonical representative per inversion class of strings of length <= max_len.

    Trivial strings (one per vertex) are included. The result is sorted by length,
    then by letter order.
    """
    if max_len < 0:
        raise ValueError(f"max_len cannot be negative: {max_len}")
    found: Set[Walk] = set()
    for w in _all_strings(algebra, max_len):
        found.add(canonical_string(algebra, w))
    result = sorted(found, key=lambda w: _sort_key(algebra, w))
    logger.debug("enumerate_strings(max_len=%d): %d classes", max_len, len(result))
    return result


def enumerate_bands(algebra: GentleAlgebra, max_len: int) -> List[Walk]:
    """One canonical representative per rotation/inversion class of bands of length <= max_len."""
    if max_len < 0:
        raise ValueError(f"max_len cannot be negative: {max_len}")
    found: Set[Walk] = set()
    for w in _all_strings(algebra, max_len):
        if w.letters and is_band(algebra, w):
            found.add(canonical_band(algebra, w))
    return sorted(found, key=lambda w: _sort_key(algebra, w))


def string_dimension_vector(algebra: GentleAlgebra, w: Walk) -> Dict[str, int]:
    """Vertex visit counts of w (endpoints included), in vertex declaration order."""
    counts = {v: 0 for v in algebra.vertices}
    for v in walk_vertices(algebra, w):
        counts[v] += 1
    return {v: c for v, c in counts.items() if c}


def band_dimension_vector(algebra: GentleAlgebra, w: Walk, m: int = 1) -> Dict[str, int]:
    """Dimension vector of a band module with multiplicity m (closing vertex counted once)."""
    counts = {v: 0 for v in algebra.vertices}
    for v in walk_vertices(algebra, w)[:-1]:
        counts[v] += m
    return {v: c for v, c in counts.items() if c}


@dataclass(frozen=True)
class BandDatum:
    """
    A band module M(w, m, λ).

    λ is an opaque tag at this layer; the oracle interprets integers as field elements.
    """

    walk: Walk
    m: int = 1
    lam: Union[int, str] = "λ"

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"Band multiplicity must be positive: {self.m}")
        if self.lam == 0:
            raise ValueError("Band parameter cannot be 0")

    def __str__(self) -> str:
        return f"band({self.walk}; m={self.m}, λ={self.lam})"


def checked_band(algebra: GentleAlgebra, w: Walk, m: int = 1, lam: Union[int, str] = "λ"):
    """Build a BandDatum after checking that w is a band."""
    if not is_band(algebra, w):
        raise InvalidWalkError(w, "not a band")
    return BandDatum(w, m, lam)


# ========== TEXT FORMAT ==========

_TOKEN_RE = re.compile(r"^(.+?)(\^-1?|\^\{-1\})?$")


def parse_walk(algebra: GentleAlgebra, text: str) -> Walk:
    """
    Parse ``a5 a7^- a6`` (or ``e<vertex>`` for a trivial walk).

    Raises:
        ParseError: On empty input
        UnknownReferenceError: On unknown arrows or vertices
        InvalidWalkError: If the letters do not form a walk
    """
    tokens = text.replace("·", " ").replace(",", " ").split()
    if not tokens:
        raise ParseError("<walk>", None, "empty walk")
    if len(tokens) == 1 and not algebra.has_arrow(tokens[0]) and tokens[0].startswith("e"):
        v = tokens[0][1:].lstrip("_")
        if v not in algebra.vertices:
            raise UnknownReferenceError("vertex", v)
        return Walk(v, v)
    letters = []
    for tok in tokens:
        m = _TOKEN_RE.match(tok)
        if m is None:
            raise ParseError("<walk>", None, f"bad letter '{tok}'")
        name, inv = m.group(1), m.group(2) is not None
        if not algebra.has_arrow(name):
            raise UnknownReferenceError("arrow", name)
        letters.append(Letter(name, inv))
    return make_walk(algebra, letters)


def parse_string(algebra: GentleAlgebra, text: str) -> Walk:
    """Parse a walk and require it to be a string."""
    w = parse_walk(algebra, text)
    if not is_string(algebra, w):
        raise InvalidWalkError(w, "contains a relation")
    return w


# ========== PROJECTIVES AND INJECTIVES ==========


def projective_string(algebra: GentleAlgebra, v: str) -> Walk:
    """String of the indecomposable projective P_v: p1^-1 p2 for the maximal paths from v."""
    paths = [p for p in algebra.nonzero_paths_from(v) if p.arrows]
    maximal = [
        max((p for p in paths if p.arrows[0] == first), key=len)
        for first in algebra.out_arrows(v)
    ]
    if not maximal:
        return Walk(v, v)
    if len(maximal) == 1:
        p = maximal[0]
        return Walk(v, p.target, tuple(Letter(a) for a in p.arrows))
    letters = [Letter(a, True) for a in reversed(maximal[0].arrows)]
    letters += [Letter(a) for a in maximal[1].arrows]
    return Walk(maximal[0].target, maximal[1].target, tuple(letters))


def injective_string(algebra: GentleAlgebra, v: str) -> Walk:
    """String of the indecomposable injective I_v: q1 q2^-1 for the maximal paths into v."""
    paths = [p for p in algebra.nonzero_paths_to(v) if p.arrows]
    maximal = [
        max((p for p in paths if p.arrows[-1] == last), key=len) for last in algebra.in_arrows(v)
    ]
    if not maximal:
        return Walk(v, v)
    letters = [Letter(a) for a in maximal[0].arrows]
    if len(maximal) == 2:
        letters += [Letter(a, True) for a in reversed(maximal[1].arrows)]
    return Walk(maximal[0].source, maximal[-1].source, tuple(letters))
