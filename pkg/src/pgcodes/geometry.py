"""Projective geometry PG(n, q): points, hyperplanes, general subspaces.

Coordinates are stored as integer indices into the field's element order
rather than as FieldElement objects, because everything downstream
(incidence matrices, spectrum kernels, blocking-set reduction) works on
numpy arrays of those indices.  The dataclasses here are thin canonical
wrappers around index tuples.

Conventions fixed once and relied on everywhere:
  - field elements are ordered by integer index sum(c_i * p**i);
  - a projective representative is canonical when its first nonzero
    coordinate is 1;
  - points and hyperplanes are listed in ascending lexicographic order of
    their canonical coordinate tuples; the positions in that list are the
    global indices that words, masks and incidence matrices refer to;
  - hyperplane i has dual coordinates equal to point i's coordinates, so
    the incidence matrix is symmetric.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from pgcodes.gf import FieldElement, FieldSpec


class GeometryMismatch(ValueError):
    """Objects from different geometries combined."""


class EqualPoints(ValueError):
    """Two distinct points required."""


class DimensionOutOfRange(ValueError):
    """Requested dimension outside the valid range."""


class EmptySubspace(ValueError):
    """Operation undefined on the empty (dim -1) subspace."""


def theta(m: int, q: int) -> int:
    """Point count of an m-dimensional projective space over GF(q)."""
    if m < -1:
        raise DimensionOutOfRange(f"theta undefined for m = {m}")
    return (q ** (m + 1) - 1) // (q - 1)


@lru_cache(maxsize=None)
def gaussian_binomial(a: int, b: int, q: int) -> int:
    """Number of b-dim subspaces of GF(q)^a, via the q-Pascal recurrence."""
    if b < 0 or b > a:
        return 0
    if b == 0 or b == a:
        return 1
    return gaussian_binomial(a - 1, b - 1, q) + q**b * gaussian_binomial(a - 1, b, q)


@dataclass(frozen=True)
class GeometrySpec:
    """PG(n, q) with n >= 2, the ambient space for everything else."""

    field: FieldSpec
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise DimensionOutOfRange(f"projective dimension must be >= 2, got {self.n}")

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def num_points(self) -> int:
        return theta(self.n, self.field.q)

    def point(self, coords) -> "ProjPoint":
        return ProjPoint(self, _coerce_canonical(coords, self))

    def hyperplane(self, dual_coords) -> "Hyperplane":
        return Hyperplane(self, _coerce_canonical(dual_coords, self))

    def to_json_dict(self) -> dict:
        d = self.field.to_json_dict()
        d["n"] = self.n
        d["q"] = self.field.q
        return d


def _coerce_canonical(coords, g: GeometrySpec) -> tuple[int, ...]:
    """Accept indices or FieldElements, scale so the first nonzero is 1."""
    idx = []
    for c in coords:
        if isinstance(c, FieldElement):
            if c.field != g.field:
                raise GeometryMismatch("coordinate from a different field")
            idx.append(c.index)
        else:
            v = int(c)
            if not 0 <= v < g.field.q:
                raise ValueError(f"element index {v} outside [0, {g.field.q})")
            idx.append(v)
    if len(idx) != g.n + 1:
        raise DimensionOutOfRange(f"expected {g.n + 1} coordinates, got {len(idx)}")
    vec = np.array(idx, dtype=np.uint8)
    nz = np.nonzero(vec)[0]
    if nz.size == 0:
        raise ValueError("zero vector does not represent a projective point")
    lead = int(vec[nz[0]])
    if lead != 1:
        fld = g.field
        vec = fld.mul_table[fld.inv_table[lead], vec]
    return tuple(int(x) for x in vec)


def _check_canonical(coords: tuple[int, ...], g: GeometrySpec) -> None:
    if len(coords) != g.n + 1:
        raise DimensionOutOfRange(f"expected {g.n + 1} coordinates, got {len(coords)}")
    nz = [c for c in coords if c]
    if not nz:
        raise ValueError("zero vector is not a projective representative")
    if nz[0] != 1:
        raise ValueError(f"not canonical: first nonzero coordinate is {nz[0]}, expected 1")
    if any(not 0 <= c < g.field.q for c in coords):
        raise ValueError("coordinate index outside field range")


@dataclass(frozen=True)
class ProjPoint:
    """A projective point as a canonical coordinate tuple of element indices."""

    geometry: GeometrySpec
    coords: tuple[int, ...]

    def __post_init__(self):
        _check_canonical(self.coords, self.geometry)

    @property
    def index(self) -> int:
        """Position in enumerate_points, the global point index."""
        return point_index_map(self.geometry)[bytes(self.coords)]

    def __repr__(self) -> str:
        return f"ProjPoint{self.coords}"


@dataclass(frozen=True)
class Hyperplane:
    """A hyperplane by its canonical dual coordinate tuple."""

    geometry: GeometrySpec
    dual_coords: tuple[int, ...]

    def __post_init__(self):
        _check_canonical(self.dual_coords, self.geometry)

    @property
    def index(self) -> int:
        """Position in enumerate_hyperplanes; equals the dual point's index."""
        return point_index_map(self.geometry)[bytes(self.dual_coords)]

    def __repr__(self) -> str:
        return f"Hyperplane{self.dual_coords}"


@dataclass(frozen=True)
class Subspace:
    """A projective subspace as the unique RREF basis of its row space.

    The empty basis encodes the empty intersection, projective dim -1.
    """

    geometry: GeometrySpec
    basis: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        mat = np.array(self.basis, dtype=np.uint8).reshape(len(self.basis), self.geometry.n + 1)
        reduced, pivots = rref_fq(mat, self.geometry.field)
        if len(pivots) != len(self.basis) or not np.array_equal(reduced, mat):
            raise ValueError("basis is not in reduced row-echelon form")

    @property
    def dim(self) -> int:
        return len(self.basis) - 1

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, basis={self.basis})"


# -- F_q linear algebra on index-coded arrays --------------------------------


def fq_matmul(a: np.ndarray, b: np.ndarray, field: FieldSpec) -> np.ndarray:
    """Matrix product over GF(q) on element-index arrays."""
    add_t, mul_t = field.add_table, field.mul_table
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.uint8)
    for t in range(a.shape[1]):
        out = add_t[out, mul_t[a[:, t][:, None], b[t, :][None, :]]]
    return out


def rref_fq(mat: np.ndarray, field: FieldSpec) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form over GF(q); returns (matrix, pivot columns)."""
    m = mat.astype(np.uint8).copy()
    add_t, mul_t = field.add_table, field.mul_table
    inv_t, neg_t = field.inv_table, field.neg_table
    nrows, ncols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            m[[r, pr]] = m[[pr, r]]
        piv = int(m[r, c])
        if piv != 1:
            m[r] = mul_t[inv_t[piv], m[r]]
        col = m[:, c].copy()
        col[r] = 0
        m = add_t[m, mul_t[neg_t[col][:, None], m[r][None, :]]]
        pivots.append(c)
        r += 1
    return m, pivots


def nullspace_fq(mat: np.ndarray, field: FieldSpec) -> np.ndarray:
    """Rows spanning the right kernel {x : mat @ x = 0} over GF(q)."""
    reduced, pivots = rref_fq(mat, field)
    ncols = mat.shape[1]
    free = [c for c in range(ncols) if c not in pivots]
    basis = np.zeros((len(free), ncols), dtype=np.uint8)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, pc in enumerate(pivots):
            basis[i, pc] = field.neg_table[reduced[r, f]]
    return basis


def _subspace_from_rows(g: GeometrySpec, rows: np.ndarray) -> Subspace:
    reduced, pivots = rref_fq(rows.reshape(-1, g.n + 1), g.field)
    nonzero = reduced[: len(pivots)]
    return Subspace(g, tuple(tuple(int(x) for x in row) for row in nonzero))


# -- enumeration and global index structures ---------------------------------


@lru_cache(maxsize=None)
def canonical_vectors(field: FieldSpec, length: int) -> np.ndarray:
    """All canonical projective representatives of GF(q)^length, lex order.

    Blocks by position of the leading 1, from last coordinate to first;
    within a block the trailing free coordinates run in lexicographic
    (element index) order.  The concatenation is globally lex-sorted.
    """
    q = field.q
    blocks = []
    for lead in range(length - 1, -1, -1):
        m = length - 1 - lead
        block = np.zeros((q**m, length), dtype=np.uint8)
        block[:, lead] = 1
        if m:
            tails = np.array(list(itertools.product(range(q), repeat=m)), dtype=np.uint8)
            block[:, lead + 1 :] = tails
        blocks.append(block)
    out = np.vstack(blocks)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def point_array(g: GeometrySpec) -> np.ndarray:
    """(theta_n, n+1) array of canonical point coordinates in index order."""
    return canonical_vectors(g.field, g.n + 1)


@lru_cache(maxsize=None)
def point_index_map(g: GeometrySpec) -> dict[bytes, int]:
    """Canonical coordinate bytes -> global point index."""
    return {row.tobytes(): i for i, row in enumerate(point_array(g))}


def enumerate_points(g: GeometrySpec) -> list[ProjPoint]:
    return [ProjPoint(g, tuple(int(x) for x in row)) for row in point_array(g)]


def enumerate_hyperplanes(g: GeometrySpec) -> list[Hyperplane]:
    return [Hyperplane(g, tuple(int(x) for x in row)) for row in point_array(g)]


def incident(point: ProjPoint, hyperplane: Hyperplane) -> bool:
    if point.geometry != hyperplane.geometry:
        raise GeometryMismatch("point and hyperplane from different geometries")
    fld = point.geometry.field
    acc = 0
    for a, x in zip(hyperplane.dual_coords, point.coords):
        acc = int(fld.add_table[acc, fld.mul_table[a, x]])
    return acc == 0


@lru_cache(maxsize=None)
def incidence_bool(g: GeometrySpec) -> np.ndarray:
    """(theta_n, theta_n) boolean matrix; entry [i, j] = point j on hyperplane i."""
    pts = point_array(g)
    dots = fq_matmul(pts, pts.T, g.field)
    out = dots == 0
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def hyperplane_point_indices(g: GeometrySpec) -> np.ndarray:
    """(theta_n, theta_{n-1}) sorted point indices of each hyperplane."""
    inc = incidence_bool(g)
    per_row = theta(g.n - 1, g.q)
    rows, cols = np.nonzero(inc)
    assert rows.size == g.num_points * per_row
    out = cols.reshape(g.num_points, per_row).astype(np.int32)
    out.setflags(write=False)
    return out


def line_through(p: ProjPoint, q: ProjPoint) -> Subspace:
    if p.geometry != q.geometry:
        raise GeometryMismatch("points from different geometries")
    if p.coords == q.coords:
        raise EqualPoints(f"line through equal points {p.coords} undefined")
    return _subspace_from_rows(p.geometry, np.array([p.coords, q.coords], dtype=np.uint8))


def span(a: Subspace, b: Subspace) -> Subspace:
    if a.geometry != b.geometry:
        raise GeometryMismatch("subspaces from different geometries")
    rows = np.array(list(a.basis) + list(b.basis), dtype=np.uint8)
    return _subspace_from_rows(a.geometry, rows)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Common points of two subspaces, via annihilators (duality)."""
    if a.geometry != b.geometry:
        raise GeometryMismatch("subspaces from different geometries")
    g = a.geometry
    fld = g.field
    ann_a = nullspace_fq(np.array(a.basis, dtype=np.uint8).reshape(-1, g.n + 1), fld)
    ann_b = nullspace_fq(np.array(b.basis, dtype=np.uint8).reshape(-1, g.n + 1), fld)
    stacked = np.vstack([ann_a, ann_b])
    return _subspace_from_rows(g, nullspace_fq(stacked, fld))


def to_subspace(obj) -> Subspace:
    """View a point or hyperplane as a Subspace."""
    if isinstance(obj, ProjPoint):
        return Subspace(obj.geometry, (obj.coords,))
    if isinstance(obj, Hyperplane):
        g = obj.geometry
        dual = np.array([obj.dual_coords], dtype=np.uint8)
        return _subspace_from_rows(g, nullspace_fq(dual, g.field))
    if isinstance(obj, Subspace):
        return obj
    raise TypeError(f"cannot view {type(obj).__name__} as a subspace")


def enumerate_subspaces(g: GeometrySpec, k: int) -> list[Subspace]:
    """All projective k-subspaces, one canonical RREF basis each.

    Generated pivot pattern by pivot pattern, so no de-duplication pass is
    needed; the count is asserted against the Gaussian binomial.
    """
    if not 0 <= k <= g.n - 1:
        raise DimensionOutOfRange(f"k must be in [0, {g.n - 1}], got {k}")
    n1 = g.n + 1
    q = g.q
    out = []
    for pivs in itertools.combinations(range(n1), k + 1):
        free_pos = [
            (i, c)
            for i in range(k + 1)
            for c in range(pivs[i] + 1, n1)
            if c not in pivs
        ]
        base = np.zeros((k + 1, n1), dtype=np.uint8)
        for i, pc in enumerate(pivs):
            base[i, pc] = 1
        for assignment in itertools.product(range(q), repeat=len(free_pos)):
            mat = base.copy()
            for (i, c), v in zip(free_pos, assignment):
                mat[i, c] = v
            out.append(Subspace(g, tuple(tuple(int(x) for x in row) for row in mat)))
    assert len(out) == gaussian_binomial(n1, k + 1, q)
    return out


def subspaces_through(s: Subspace, k: int) -> list[Subspace]:
    """All k-subspaces containing s, for dim(s) < k <= n-1."""
    g = s.geometry
    if not s.dim < k <= g.n - 1:
        raise DimensionOutOfRange(f"need dim(s) < k <= {g.n - 1}, got k = {k}")
    s_rows = np.array(s.basis, dtype=np.uint8).reshape(-1, g.n + 1)
    out = []
    for cand in enumerate_subspaces(g, k):
        stacked = np.vstack([np.array(cand.basis, dtype=np.uint8), s_rows])
        _, pivots = rref_fq(stacked, g.field)
        if len(pivots) == cand.dim + 1:
            out.append(cand)
    return out


def points_of(s: Subspace) -> list[ProjPoint]:
    """Canonical points of a subspace, in ascending global index order.

    Internal canonical coordinates map through the RREF basis to ambient
    canonical vectors, and the map preserves lexicographic order because
    pivot columns of an RREF basis are unit columns.
    """
    if s.dim < 0:
        raise EmptySubspace("the empty subspace has no points")
    g = s.geometry
    lam = canonical_vectors(g.field, s.dim + 1)
    basis = np.array(s.basis, dtype=np.uint8)
    rows = fq_matmul(lam, basis, g.field)
    return [ProjPoint(g, tuple(int(x) for x in row)) for row in rows]


def global_point_indices(s: Subspace) -> np.ndarray:
    """Sorted global indices of a subspace's points.

    Ascending because the internal-to-ambient coordinate map preserves
    lexicographic order; position within this array is the subspace's own
    internal point index.
    """
    if s.dim < 0:
        raise EmptySubspace("the empty subspace has no points")
    g = s.geometry
    index_map = point_index_map(g)
    lam = canonical_vectors(g.field, s.dim + 1)
    rows = fq_matmul(lam, np.array(s.basis, dtype=np.uint8), g.field)
    return np.array([index_map[row.tobytes()] for row in rows], dtype=np.int32)


@lru_cache(maxsize=None)
def subspace_point_indices(g: GeometrySpec, k: int) -> np.ndarray:
    """(N_k, theta_k) sorted global point indices of every k-subspace."""
    index_map = point_index_map(g)
    spaces = enumerate_subspaces(g, k)
    out = np.empty((len(spaces), theta(k, g.q)), dtype=np.int32)
    for i, s in enumerate(spaces):
        lam = canonical_vectors(g.field, k + 1)
        rows = fq_matmul(lam, np.array(s.basis, dtype=np.uint8), g.field)
        out[i] = [index_map[row.tobytes()] for row in rows]
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def line_through_pairs(g: GeometrySpec) -> np.ndarray:
    """(theta_n, theta_n) table of the line index through each point pair.

    Diagonal entries are -1; line indices refer to enumerate_subspaces(g, 1).
    """
    npts = g.num_points
    table = np.full((npts, npts), -1, dtype=np.int32)
    for li, pts in enumerate(subspace_point_indices(g, 1)):
        for a, b in itertools.combinations(pts.tolist(), 2):
            table[a, b] = table[b, a] = li
    table.setflags(write=False)
    return table


@lru_cache(maxsize=None)
def lines_through_point(g: GeometrySpec) -> np.ndarray:
    """(theta_n, theta_{n-1}) sorted line indices through each point."""
    npts = g.num_points
    per_point = theta(g.n - 1, g.q)
    buckets: list[list[int]] = [[] for _ in range(npts)]
    for li, pts in enumerate(subspace_point_indices(g, 1)):
        for p in pts.tolist():
            buckets[p].append(li)
    out = np.array(buckets, dtype=np.int32)
    assert out.shape == (npts, per_point)
    out.setflags(write=False)
    return out
