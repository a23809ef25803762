"""
Brute-force verification over a prime field.

Modules are explicit quiver representations with numpy matrices reduced mod p.
Projective covers come from tops, syzygies from nullspaces, and Hom and Ext
dimensions from ranks of linear systems. Nothing here reads the surface model,
so these numbers are an independent check on the combinatorics.

Matrices act on column vectors: R(a) has shape (dim R_t(a), dim R_s(a)), and the
path a*b acts as R(b) @ R(a).
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple, TypeVar, Union

import numpy as np

from gentlecalc.algebra_core import GentleAlgebra, Path
from gentlecalc.config import DEFAULT_PRIME, Settings
from gentlecalc.exceptions import InsufficientDepthError, OracleMismatchError
from gentlecalc.resolutions import ProjectiveComplex, minimal_projective_resolution
from gentlecalc.strings_bands import BandDatum, Walk, is_band, walk_vertices

logger = logging.getLogger(__name__)

Module = Union[Walk, BandDatum, "Representation"]
T = TypeVar("T")


# ========== F_p KERNELS ==========


def mod_p(a: np.ndarray, p: int) -> np.ndarray:
    return np.asarray(a % p, dtype=np.int64)


def inv_mod_scalar(a: int, p: int) -> int:
    return pow(int(a) % p, p - 2, p)


def rref_mod(a: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form over F_p. Returns (rref, pivot columns)."""
    r_mat = mod_p(a.copy(), p)
    m, n = r_mat.shape
    r = 0
    pivots: List[int] = []
    for c in range(n):
        if r >= m:
            break
        nz = np.nonzero(r_mat[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            r_mat[[r, piv]] = r_mat[[piv, r]]
        r_mat[r, :] = mod_p(r_mat[r, :] * inv_mod_scalar(r_mat[r, c], p), p)
        for i in range(m):
            if i != r and r_mat[i, c]:
                r_mat[i, :] = mod_p(r_mat[i, :] - r_mat[i, c] * r_mat[r, :], p)
        pivots.append(c)
        r += 1
    return r_mat, pivots


def rank_mod(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return len(rref_mod(a, p)[1])


def nullspace_mod(a: np.ndarray, p: int) -> np.ndarray:
    """Right nullspace over F_p; the columns of the result form a basis."""
    m, n = a.shape
    if m == 0:
        return np.eye(n, dtype=np.int64)
    r_mat, pivots = rref_mod(a, p)
    free = [j for j in range(n) if j not in set(pivots)]
    basis = np.zeros((n, len(free)), dtype=np.int64)
    for k, f in enumerate(free):
        basis[f, k] = 1
        for row, pc in enumerate(pivots):
            basis[pc, k] = (-r_mat[row, f]) % p
    return basis


def solve_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """One solution X of a @ X = b over F_p (free variables set to 0)."""
    m, n = a.shape
    aug = np.concatenate([mod_p(a, p), mod_p(b, p)], axis=1)
    r_mat, pivots = rref_mod(aug, p)
    if any(pc >= n for pc in pivots):
        raise OracleMismatchError("solve_mod", "consistent system", "no solution")
    x = np.zeros((n, b.shape[1]), dtype=np.int64)
    for row, pc in enumerate(pivots):
        x[pc, :] = r_mat[row, n:]
    return x


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return mod_p(a @ b, p)


def jordan_block(lam: int, m: int, p: int) -> np.ndarray:
    """J(λ, m): λ on the diagonal, 1 on the superdiagonal."""
    j = np.eye(m, dtype=np.int64) * (lam % p)
    for i in range(m - 1):
        j[i, i + 1] = 1
    return j


# ========== REPRESENTATIONS ==========


@dataclass
class Representation:
    """
    A representation of a bound quiver over F_p.

    Attributes:
        algebra: The gentle algebra
        dims: Dimension at every vertex
        maps: Matrix per arrow, shape (dim at target, dim at source)
        prime: Field characteristic
        labels: Optional basis labels per vertex for diagnostics
    """

    algebra: GentleAlgebra
    dims: Dict[str, int]
    maps: Dict[str, np.ndarray]
    prime: int = DEFAULT_PRIME
    labels: Dict[str, List[str]] = field(default_factory=dict)

    def __post_init__(self):
        for v in self.algebra.vertices:
            self.dims.setdefault(v, 0)
        for a in self.algebra.arrows:
            shape = (self.dims[a.target], self.dims[a.source])
            mat = self.maps.get(a.name)
            if mat is None:
                self.maps[a.name] = np.zeros(shape, dtype=np.int64)
                continue
            if mat.shape != shape:
                raise ValueError(f"Matrix of {a.name} has shape {mat.shape}, expected {shape}")
            self.maps[a.name] = mod_p(mat, self.prime)
        for x, y in self.algebra.relations:
            if np.any(matmul_mod(self.maps[y], self.maps[x], self.prime)):
                raise ValueError(f"Relation {x}*{y} does not act as zero")

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    @property
    def is_zero(self) -> bool:
        return self.total_dim == 0

    def dimension_vector(self) -> Dict[str, int]:
        return {v: d for v, d in self.dims.items() if d}

    def action(self, path: Path) -> np.ndarray:
        """Matrix of a path, R_source -> R_target."""
        mat = np.eye(self.dims[path.source], dtype=np.int64)
        for a in path.arrows:
            mat = matmul_mod(self.maps[a], mat, self.prime)
        return mat


def zero_representation(algebra: GentleAlgebra, prime: int = DEFAULT_PRIME) -> Representation:
    return Representation(algebra, {}, {}, prime)


def direct_sum(reps: Sequence[Representation]) -> Representation:
    """Block-diagonal direct sum (at least one summand)."""
    algebra, prime = reps[0].algebra, reps[0].prime
    dims = {v: sum(r.dims[v] for r in reps) for v in algebra.vertices}
    maps = {}
    for a in algebra.arrows:
        mat = np.zeros((dims[a.target], dims[a.source]), dtype=np.int64)
        row = col = 0
        for r in reps:
            block = r.maps[a.name]
            mat[row : row + block.shape[0], col : col + block.shape[1]] = block
            row += block.shape[0]
            col += block.shape[1]
        maps[a.name] = mat
    return Representation(algebra, dims, maps, prime)


def _string_representation(algebra: GentleAlgebra, w: Walk, prime: int) -> Representation:
    positions = walk_vertices(algebra, w)
    dims: Dict[str, int] = {}
    local = []
    labels: Dict[str, List[str]] = {}
    for i, v in enumerate(positions):
        local.append(dims.get(v, 0))
        dims[v] = dims.get(v, 0) + 1
        labels.setdefault(v, []).append(f"pos{i}")
    maps = {
        a.name: np.zeros((dims.get(a.target, 0), dims.get(a.source, 0)), dtype=np.int64)
        for a in algebra.arrows
    }
    for i, letter in enumerate(w.letters):
        lo, hi = (i, i + 1) if letter.direct else (i + 1, i)
        maps[letter.arrow][local[hi], local[lo]] = 1
    return Representation(algebra, dims, maps, prime, labels)


def _band_representation(
    algebra: GentleAlgebra, band: BandDatum, lam: int, prime: int
) -> Representation:
    w, m = band.walk, band.m
    positions = walk_vertices(algebra, w)[:-1]
    dims: Dict[str, int] = {}
    offset = []
    for v in positions:
        offset.append(dims.get(v, 0))
        dims[v] = dims.get(v, 0) + m
    maps = {
        a.name: np.zeros((dims.get(a.target, 0), dims.get(a.source, 0)), dtype=np.int64)
        for a in algebra.arrows
    }
    n = len(w.letters)
    for i, letter in enumerate(w.letters):
        block = jordan_block(lam, m, prime) if i == n - 1 else np.eye(m, dtype=np.int64)
        j = (i + 1) % n
        lo, hi = (i, j) if letter.direct else (j, i)
        r, c = offset[hi], offset[lo]
        maps[letter.arrow][r : r + m, c : c + m] = block
    return Representation(algebra, dims, maps, prime)


def representation_of(
    algebra: GentleAlgebra,
    module: Module,
    lam: Optional[int] = None,
    prime: int = DEFAULT_PRIME,
) -> Representation:
    """
    Explicit representation of a string or band module.

    Strings act by identities along the walk; bands put J(λ, m) on the closing letter.

    Raises:
        ValueError: If the band parameter is missing or zero mod p
    """
    if isinstance(module, Representation):
        return module
    if isinstance(module, BandDatum):
        value = lam if lam is not None else module.lam
        if not isinstance(value, int) or value % prime == 0:
            raise ValueError(f"Band parameter must be a nonzero integer mod {prime}: {value!r}")
        if not is_band(algebra, module.walk):
            raise ValueError(f"Not a band: {module.walk}")
        return _band_representation(algebra, module, value, prime)
    return _string_representation(algebra, module, prime)


def projective_module(
    algebra: GentleAlgebra, v: str, prime: int = DEFAULT_PRIME
) -> Representation:
    """P_v: basis the nonzero paths from v, arrows acting by right multiplication."""
    basis = algebra.nonzero_paths_from(v)
    return _path_module(
        algebra,
        basis,
        lambda p, a: algebra.compose(p, _arrow_path(algebra, a)),
        lambda p: p.target,
        prime,
    )


def injective_module(
    algebra: GentleAlgebra, v: str, prime: int = DEFAULT_PRIME
) -> Representation:
    """I_v: dual basis of the nonzero paths into v; a sends (a*q)^* to q^*."""

    def act(q: Path, a: str) -> Optional[Path]:
        if q.arrows and q.arrows[0] == a:
            rest = q.arrows[1:]
            return Path(algebra.target(a), q.target, rest)
        return None

    return _path_module(algebra, algebra.nonzero_paths_to(v), act, lambda q: q.source, prime)


def _arrow_path(algebra: GentleAlgebra, a: str) -> Path:
    return Path(algebra.source(a), algebra.target(a), (a,))


def _path_module(algebra, basis, act, home, prime) -> Representation:
    at: Dict[str, List[Path]] = {u: [] for u in algebra.vertices}
    for p in basis:
        at[home(p)].append(p)
    dims = {u: len(ps) for u, ps in at.items()}
    maps = {}
    for a in algebra.arrows:
        mat = np.zeros((dims[a.target], dims[a.source]), dtype=np.int64)
        for col, p in enumerate(at[a.source]):
            image = act(p, a.name)
            if image is not None:
                mat[at[a.target].index(image), col] = 1
        maps[a.name] = mat
    labels = {u: [str(p) for p in ps] for u, ps in at.items()}
    return Representation(algebra, dims, maps, prime, labels)


# ========== TOPS, COVERS, SYZYGIES ==========


def _radical_image(rep: Representation, v: str) -> np.ndarray:
    blocks = [rep.maps[a] for a in rep.algebra.in_arrows(v)]
    blocks = [b for b in blocks if b.shape[1]]
    if not blocks:
        return np.zeros((rep.dims[v], 0), dtype=np.int64)
    return np.concatenate(blocks, axis=1)


def top_generators(rep: Representation, v: str) -> List[np.ndarray]:
    """Vectors of R_v spanning a complement of rad(R)_v."""
    image = _radical_image(rep, v)
    base = rank_mod(image, rep.prime)
    chosen: List[np.ndarray] = []
    current = image
    for i in range(rep.dims[v]):
        e = np.zeros((rep.dims[v], 1), dtype=np.int64)
        e[i, 0] = 1
        trial = np.concatenate([current, e], axis=1)
        if rank_mod(trial, rep.prime) > base + len(chosen):
            chosen.append(e[:, 0])
            current = trial
    return chosen


def top_dimension_vector(rep: Representation) -> Dict[str, int]:
    dims = {
        v: rep.dims[v] - rank_mod(_radical_image(rep, v), rep.prime)
        for v in rep.algebra.vertices
    }
    return {v: d for v, d in dims.items() if d}


def socle_dimension_vector(rep: Representation) -> Dict[str, int]:
    dims = {}
    for v in rep.algebra.vertices:
        blocks = [rep.maps[a] for a in rep.algebra.out_arrows(v)]
        if blocks:
            stacked = np.concatenate(blocks, axis=0)
            dims[v] = rep.dims[v] - rank_mod(stacked, rep.prime)
        else:
            dims[v] = rep.dims[v]
    return {v: d for v, d in dims.items() if d}


@dataclass
class Cover:
    """
    A projective cover ⊕ P_v -> R.

    Attributes:
        summands: Vertex of each indecomposable summand, in generator order
        basis: For each vertex u, the cover basis at u as (summand index, path) pairs
        module: The cover as a representation
        surjection: Matrix per vertex u, cover_u -> R_u
    """

    summands: List[str]
    basis: Dict[str, List[Tuple[int, Path]]]
    module: Representation
    surjection: Dict[str, np.ndarray]


def projective_cover(rep: Representation) -> Cover:
    """
    Minimal projective cover, built from a basis of the top.

    Raises:
        ValueError: If rep is zero
    """
    if rep.is_zero:
        raise ValueError("The zero representation has no projective cover")
    algebra, p = rep.algebra, rep.prime
    gens = [(v, g) for v in algebra.vertices for g in top_generators(rep, v)]
    summands = [v for v, _ in gens]
    basis: Dict[str, List[Tuple[int, Path]]] = {u: [] for u in algebra.vertices}
    columns: Dict[str, List[np.ndarray]] = {u: [] for u in algebra.vertices}
    for j, (v, g) in enumerate(gens):
        for path in algebra.nonzero_paths_from(v):
            basis[path.target].append((j, path))
            columns[path.target].append(matmul_mod(rep.action(path), g.reshape(-1, 1), p)[:, 0])
    module = direct_sum([projective_module(algebra, v, p) for v in summands])
    surjection = {}
    for u in algebra.vertices:
        if columns[u]:
            surjection[u] = np.stack(columns[u], axis=1)
        else:
            surjection[u] = np.zeros((rep.dims[u], 0), dtype=np.int64)
    logger.debug("projective cover: %s", "+".join(f"P{v}" for v in summands))
    return Cover(summands, basis, module, surjection)


def _kernel(cover: Cover) -> Tuple[Representation, Dict[str, np.ndarray]]:
    algebra, p = cover.module.algebra, cover.module.prime
    inclusion = {u: nullspace_mod(cover.surjection[u], p) for u in algebra.vertices}
    dims = {u: inclusion[u].shape[1] for u in algebra.vertices}
    maps = {}
    for a in algebra.arrows:
        s, t = a.source, a.target
        if dims[s] == 0 or dims[t] == 0:
            maps[a.name] = np.zeros((dims[t], dims[s]), dtype=np.int64)
            continue
        image = matmul_mod(cover.module.maps[a.name], inclusion[s], p)
        maps[a.name] = solve_mod(inclusion[t], image, p)
    return Representation(algebra, dims, maps, p), inclusion


def syzygy(rep: Representation) -> Representation:
    """Kernel of the projective cover (zero for projective or zero input)."""
    if rep.is_zero:
        return rep
    return _kernel(projective_cover(rep))[0]


@dataclass
class ResolutionStep:
    """One term of a linear-algebra resolution."""

    summands: List[str]
    cover: Optional[Cover]
    kernel_inclusion: Dict[str, np.ndarray]


def resolution_steps(rep: Representation, depth: int) -> List[ResolutionStep]:
    """Iterated projective covers for degrees 0..depth (empty terms once the syzygy vanishes)."""
    if depth < 0:
        raise ValueError(f"depth must be non-negative: {depth}")
    steps = []
    current = rep
    for _ in range(depth + 1):
        if current.is_zero:
            steps.append(ResolutionStep([], None, {}))
            continue
        cover = projective_cover(current)
        kernel, inclusion = _kernel(cover)
        steps.append(ResolutionStep(sorted(cover.summands), cover, inclusion))
        current = kernel
    return steps


def resolution_linalg(rep: Representation, depth: int) -> List[List[str]]:
    """Sorted projective multisets of the minimal resolution in degrees 0, -1, ..., -depth."""
    return [s.summands for s in resolution_steps(rep, depth)]


# ========== HOM AND EXT ==========


def hom_dim(first: Representation, second: Representation) -> int:
    """dim Hom(first, second): nullity of the intertwining system R2(a) f_s = f_t R1(a)."""
    algebra, p = first.algebra, first.prime
    offsets, n = {}, 0
    for v in algebra.vertices:
        offsets[v] = n
        n += first.dims[v] * second.dims[v]
    if n == 0:
        return 0
    rows = []
    for a in algebra.arrows:
        s, t = a.source, a.target
        d1s, d1t, d2s, d2t = first.dims[s], first.dims[t], second.dims[s], second.dims[t]
        if d1s * d2t == 0:
            continue
        block = np.zeros((d2t * d1s, n), dtype=np.int64)
        if d2s:
            lhs = np.kron(np.eye(d1s, dtype=np.int64), second.maps[a.name])
            block[:, offsets[s] : offsets[s] + d2s * d1s] += lhs
        if d1t:
            rhs = np.kron(first.maps[a.name].T, np.eye(d2t, dtype=np.int64))
            block[:, offsets[t] : offsets[t] + d2t * d1t] -= rhs
        rows.append(mod_p(block, p))
    if not rows:
        return n
    return n - rank_mod(np.concatenate(rows, axis=0), p)


def ext_dim_linalg(
    first: Representation, second: Representation, omega: int, depth: Optional[int] = None
) -> int:
    """
    dim Ext^omega(first, second) from the resolution of ``first``.

    Computed as dim Hom(Ω^omega, N) minus the rank of restriction from Hom(Q_(omega-1), N).

    Raises:
        InsufficientDepthError: If omega exceeds the resolution depth
    """
    if depth is None:
        depth = omega
    if omega < 0 or omega > depth:
        raise InsufficientDepthError(omega, depth)
    if omega == 0:
        return hom_dim(first, second)
    steps = resolution_steps(first, omega - 1)
    last = steps[-1]
    if last.cover is None:
        return 0
    kernel, inclusion = _kernel(last.cover)
    total = hom_dim(kernel, second)
    if total == 0:
        return 0
    return total - _restriction_rank(last.cover, inclusion, kernel, second)


def _restriction_rank(
    cover: Cover, inclusion, kernel: Representation, target: Representation
) -> int:
    algebra, p = target.algebra, target.prime
    vectors = []
    for j, v in enumerate(cover.summands):
        for y in range(target.dims[v]):
            gen = np.zeros((target.dims[v], 1), dtype=np.int64)
            gen[y, 0] = 1
            flat = []
            for u in algebra.vertices:
                if kernel.dims[u] == 0:
                    continue
                phi = np.zeros((target.dims[u], len(cover.basis[u])), dtype=np.int64)
                for col, (k, path) in enumerate(cover.basis[u]):
                    if k == j:
                        phi[:, col] = matmul_mod(target.action(path), gen, p)[:, 0]
                flat.append(matmul_mod(phi, inclusion[u], p).reshape(-1))
            vectors.append(np.concatenate(flat) if flat else np.zeros(0, dtype=np.int64))
    if not vectors or vectors[0].size == 0:
        return 0
    return rank_mod(np.stack(vectors, axis=0), p)


# ========== VERIFICATION ==========


def is_exact_sequence(maps: Sequence[np.ndarray], p: int = DEFAULT_PRIME) -> bool:
    """
    Check exactness at every inner term of V0 -> V1 -> ... given maps[i]: V_i -> V_(i+1).

    Consecutive composites must vanish and rank(maps[i]) + rank(maps[i+1]) = dim V_(i+1).
    """
    for f, g in zip(maps, maps[1:]):
        if f.shape[0] != g.shape[1]:
            raise ValueError(f"Maps do not compose: {f.shape} then {g.shape}")
        if f.size and g.size and np.any(matmul_mod(g, f, p)):
            return False
        if rank_mod(f, p) + rank_mod(g, p) != f.shape[0]:
            return False
    return True


def complex_matrices(
    algebra: GentleAlgebra,
    cx: ProjectiveComplex,
    vertex: str,
    lam: int = 1,
    prime: int = DEFAULT_PRIME,
) -> Dict[int, np.ndarray]:
    """
    The differentials of a projective complex evaluated at one vertex.

    Returns d_j: C_j e_vertex -> C_(j+1) e_vertex for every degree j with a successor term.
    """
    def basis(summands):
        out = []
        for i, s in enumerate(summands):
            for path in algebra.paths_between(s.vertex, vertex):
                for copy in range(s.mult):
                    out.append((i, path, copy))
        return out

    result = {}
    for d in cx.degrees:
        if not cx.term(d + 1):
            continue
        src, dst = basis(cx.term(d)), basis(cx.term(d + 1))
        index = {key: n for n, key in enumerate(dst)}
        mat = np.zeros((len(dst), len(src)), dtype=np.int64)
        for e in cx.entries:
            if e.degree != d:
                continue
            m = cx.term(d)[e.row].mult
            tag = jordan_block(lam, m, prime) if e.tag == "J" else np.eye(m, dtype=np.int64)
            for col, (row, path, copy) in enumerate(src):
                if row != e.row:
                    continue
                product = algebra.compose(e.path, path)
                if product is None:
                    continue
                for out_copy in range(m):
                    if tag[out_copy, copy]:
                        mat[index[(e.col, product, out_copy)], col] += tag[out_copy, copy]
        result[d] = mod_p(mat, prime)
    return result


def homology_dimension(
    algebra: GentleAlgebra, cx: ProjectiveComplex, lam: int = 1, prime: int = DEFAULT_PRIME
) -> Dict[int, int]:
    """Total dimension of the homology of a (finite) projective complex in every degree."""
    dims = {d: 0 for d in cx.degrees}
    for v in algebra.vertices:
        mats = complex_matrices(algebra, cx, v, lam, prime)
        for d in cx.degrees:
            size = sum(len(algebra.paths_between(s.vertex, v)) * s.mult for s in cx.term(d))
            out_rank = rank_mod(mats[d], prime) if d in mats else 0
            in_rank = rank_mod(mats[d - 1], prime) if d - 1 in mats else 0
            dims[d] += size - out_rank - in_rank
    return dims


def verify_resolution(
    algebra: GentleAlgebra,
    module: Union[Walk, BandDatum],
    cx: Optional[ProjectiveComplex] = None,
    lam: int = 2,
    prime: int = DEFAULT_PRIME,
    depth: Optional[int] = None,
) -> bool:
    """
    Compare a combinatorial resolution with iterated projective covers.

    The summand multisets must agree in every complete degree, and for finite
    complexes the homology must be the module, concentrated in degree 0. With
    ``depth``, periodic tails are unrolled that far and finite complexes are
    checked to stay zero down to that degree.

    Raises:
        OracleMismatchError: On the first disagreement
    """
    if cx is None:
        cx = minimal_projective_resolution(algebra, module, depth=depth)
    rep = representation_of(algebra, module, lam if isinstance(module, BandDatum) else None, prime)
    if cx.periods:
        check = cx.depth if cx.depth is not None else 0
    else:
        check = max(max((-d for d in cx.degrees), default=0) + 1, depth or 0)
    found = resolution_linalg(rep, check)
    for k, multiset in enumerate(found):
        expected = cx.multiset(-k)
        if expected != multiset:
            raise OracleMismatchError(f"resolution degree {-k}", expected, multiset)
    if not cx.periods:
        homology = homology_dimension(algebra, cx, lam, prime)
        expected_h = {d: (rep.total_dim if d == 0 else 0) for d in cx.degrees}
        if homology != expected_h:
            raise OracleMismatchError("resolution homology", expected_h, homology)
    logger.debug("resolution of %s verified to depth %d", module, check)
    return True


def finitistic_dimension_linalg(algebra: GentleAlgebra, prime: int = DEFAULT_PRIME) -> int:
    """
    Largest finite projective dimension of an indecomposable injective, by iterated covers.

    A finite projective dimension is at most the number of arrows, so a resolution
    still nonzero one degree past that bound never stops.
    """
    depth = len(algebra.arrows) + 1
    best = 0
    for v in algebra.vertices:
        found = resolution_linalg(injective_module(algebra, v, prime), depth)
        if found[-1]:
            logger.debug("I%s has infinite projective dimension", v)
            continue
        best = max(best, max(k for k, step in enumerate(found) if step))
    return best


def verify_finitistic(algebra: GentleAlgebra, expected: int, prime: int = DEFAULT_PRIME) -> bool:
    """
    Compare a finitistic dimension with the linear-algebra value.

    Raises:
        OracleMismatchError: If they differ
    """
    actual = finitistic_dimension_linalg(algebra, prime)
    if actual != expected:
        raise OracleMismatchError("finitistic dimension", expected, actual)
    return True


def verify_ext(
    algebra: GentleAlgebra,
    first: Union[Walk, BandDatum],
    second: Union[Walk, BandDatum],
    omega: int,
    expected: int,
    lam: int = 2,
    prime: int = DEFAULT_PRIME,
) -> bool:
    """
    Compare a combinatorial Ext dimension with the linear-algebra count.

    Raises:
        OracleMismatchError: If the counts differ
    """
    r1 = representation_of(algebra, first, lam if isinstance(first, BandDatum) else None, prime)
    r2 = representation_of(algebra, second, lam if isinstance(second, BandDatum) else None, prime)
    actual = ext_dim_linalg(r1, r2, omega)
    if actual != expected:
        raise OracleMismatchError(f"Ext^{omega}({first}, {second})", expected, actual)
    return True


def verify_many(checks: Sequence[Callable[[], T]], settings: Optional[Settings] = None) -> List[T]:
    """Run independent checks on a thread pool; results keep input order."""
    workers = settings.max_workers if settings is not None else 4
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda check: check(), checks))
