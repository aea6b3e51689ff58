"""The code of points and hyperplanes: row space of the incidence matrix.

Words are plain numpy uint8 vectors of length theta_n over F_p, indexed by
the global point order.  The incidence matrix has hyperplane rows in the
same order, so it is symmetric.  All linear algebra here is mod p (the
prime subfield), not mod q.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

import numpy as np

from pgcodes.geometry import GeometryMismatch, GeometrySpec, ProjPoint, incidence_bool, theta


class LengthMismatch(ValueError):
    """Word length does not match the geometry."""


class DimensionMismatch(AssertionError):
    """Computed p-rank disagrees with the closed-form dimension."""


def expected_dimension(g: GeometrySpec) -> int:
    """Closed-form p-rank of the incidence matrix: C(p+n-1, n)^h + 1."""
    p, h = g.field.p, g.field.h
    return comb(p + g.n - 1, g.n) ** h + 1


@lru_cache(maxsize=None)
def build_incidence_matrix(g: GeometrySpec) -> np.ndarray:
    """(theta_n, theta_n) 0/1 matrix; row i = incidence vector of hyperplane i."""
    mat = incidence_bool(g).astype(np.uint8)
    mat.setflags(write=False)
    return mat


@lru_cache(maxsize=None)
def _inverse_table(p: int) -> np.ndarray:
    return np.array([pow(a, p - 2, p) if a else 0 for a in range(p)], dtype=np.int64)


def rref_mod_p(mat: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form mod prime p; returns (matrix, pivot columns)."""
    m = mat.astype(np.int64) % p
    inv = _inverse_table(p)
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
        if m[r, c] != 1:
            m[r] = (m[r] * inv[m[r, c]]) % p
        col = m[:, c].copy()
        col[r] = 0
        m = (m - col[:, None] * m[r][None, :]) % p
        pivots.append(c)
        r += 1
    return m.astype(np.uint8), pivots


def p_rank(mat: np.ndarray, p: int) -> int:
    """Rank of an integer matrix over F_p, by Gaussian elimination."""
    return len(rref_mod_p(mat, p)[1])


def nullspace_mod_p(mat: np.ndarray, p: int) -> np.ndarray:
    """Rows spanning {x : mat @ x = 0 mod p}."""
    reduced, pivots = rref_mod_p(mat, p)
    ncols = mat.shape[1]
    free = [c for c in range(ncols) if c not in pivots]
    basis = np.zeros((len(free), ncols), dtype=np.uint8)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, pc in enumerate(pivots):
            basis[i, pc] = (-int(reduced[r, f])) % p
    return basis


def zero_word(g: GeometrySpec) -> np.ndarray:
    return np.zeros(g.num_points, dtype=np.uint8)


def all_one_word(g: GeometrySpec) -> np.ndarray:
    return np.ones(g.num_points, dtype=np.uint8)


def incidence_vector(g: GeometrySpec, points) -> np.ndarray:
    """0/1 word supported exactly on the given points (ProjPoint or index)."""
    w = zero_word(g)
    for pt in points:
        if isinstance(pt, ProjPoint):
            if pt.geometry != g:
                raise GeometryMismatch("point from a different geometry")
            w[pt.index] = 1
        else:
            w[int(pt)] = 1
    return w


def weight(w: np.ndarray) -> int:
    return int(np.count_nonzero(w))


def as_word(g: GeometrySpec, w) -> np.ndarray:
    arr = np.asarray(w, dtype=np.int64)
    if arr.ndim != 1 or arr.shape[0] != g.num_points:
        raise LengthMismatch(f"expected length {g.num_points}, got shape {arr.shape}")
    p = g.field.p
    if (arr < 0).any() or (arr >= p).any():
        raise ValueError(f"entries must lie in [0, {p})")
    return arr.astype(np.uint8)


def inner_product(a: np.ndarray, b: np.ndarray, p: int) -> int:
    if a.shape != b.shape:
        raise LengthMismatch(f"length mismatch: {a.shape} vs {b.shape}")
    return int(np.dot(a.astype(np.int64), b.astype(np.int64)) % p)


class CodeModel:
    """The code C(n,q) with generator, check, and hull bases in RREF.

    The construction asserts the closed-form dimension; a mismatch would
    mean the incidence matrix or the elimination is wrong, so it fails
    loudly rather than continuing with a broken basis.
    """

    def __init__(self, geometry: GeometrySpec):
        self.geometry = geometry
        p = geometry.field.p
        mat = build_incidence_matrix(geometry)
        reduced, pivots = rref_mod_p(mat, p)
        self.generator = reduced[: len(pivots)]
        self.generator_pivots = tuple(pivots)
        self.dimension = len(pivots)
        expected = expected_dimension(geometry)
        if self.dimension != expected:
            raise DimensionMismatch(
                f"p-rank {self.dimension} != closed form {expected} for "
                f"PG({geometry.n},{geometry.q})"
            )
        check, check_pivots = rref_mod_p(nullspace_mod_p(self.generator, p), p)
        self.check = check[: len(check_pivots)]
        self.check_pivots = tuple(check_pivots)
        gram = (self.generator.astype(np.int64) @ self.generator.T.astype(np.int64)) % p
        combo = nullspace_mod_p(gram, p)
        hull_rows = (combo.astype(np.int64) @ self.generator.astype(np.int64)) % p
        hull, hull_pivots = rref_mod_p(hull_rows, p)
        self.hull = hull[: len(hull_pivots)]
        self.hull_pivots = tuple(hull_pivots)
        for arr in (self.generator, self.check, self.hull):
            arr.setflags(write=False)

    @property
    def hull_dimension(self) -> int:
        return self.hull.shape[0]

    def _reduce(self, w: np.ndarray, basis: np.ndarray, pivots: tuple[int, ...]) -> np.ndarray:
        p = self.geometry.field.p
        r = w.astype(np.int64).copy()
        for row, pc in zip(basis, pivots):
            coeff = int(r[pc])
            if coeff:
                r = (r - coeff * row.astype(np.int64)) % p
        return r

    def contains(self, w) -> bool:
        w = as_word(self.geometry, w)
        return not self._reduce(w, self.generator, self.generator_pivots).any()

    def dual_contains(self, w) -> bool:
        w = as_word(self.geometry, w)
        p = self.geometry.field.p
        prods = (self.generator.astype(np.int64) @ w.astype(np.int64)) % p
        return not prods.any()

    def hull_contains(self, w) -> bool:
        return self.contains(w) and self.dual_contains(w)

    def __repr__(self) -> str:
        g = self.geometry
        return f"CodeModel(PG({g.n},{g.q}), dim={self.dimension})"


@lru_cache(maxsize=None)
def build_model(g: GeometrySpec) -> CodeModel:
    return CodeModel(g)
