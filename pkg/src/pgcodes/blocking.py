"""Blocking sets of projective spaces.

A k-blocking set in PG(n,q) meets every (n-k)-subspace.  This module
provides the blocking predicate, tangent subspaces, essential points,
and reduction of a blocking set to a minimal one by repeatedly removing
non-essential points.  Reduction is order-independent below a size
bound; the deterministic mode always removes the smallest removable
point, and the randomized mode exists to probe that order independence.
"""

from __future__ import annotations

import warnings
from typing import Iterable, Iterator, Optional

import numpy as np

from .geometry import (
    DimensionOutOfRange,
    GeometryMismatch,
    GeometrySpec,
    Hyperplane,
    ProjPoint,
    Subspace,
    enumerate_points,
    enumerate_subspaces,
    hyperplane_point_indices,
    subspace_point_indices,
    theta,
)


class PointNotInSet(ValueError):
    """The designated point does not belong to the point set."""


class NotBlocking(ValueError):
    """The set fails the k-blocking predicate required by the operation."""


class EqualHyperplanes(ValueError):
    """Symmetric difference of a hyperplane with itself is not allowed."""


class SizeGuaranteeViolated(UserWarning):
    """Reduction ran outside the regime where the result is provably unique."""


class PointSet:
    """An immutable set of points of one projective geometry.

    Accepts projective points or their global indices.  Iteration and
    serialization follow the global point order.
    """

    __slots__ = ("geometry", "indices")

    def __init__(self, geometry: GeometrySpec, points: Iterable) -> None:
        object.__setattr__(self, "geometry", geometry)
        seen = set()
        for item in points:
            if isinstance(item, ProjPoint):
                if item.geometry != geometry:
                    raise GeometryMismatch("point from a different geometry")
                seen.add(item.index)
            else:
                idx = int(item)
                if not 0 <= idx < geometry.num_points:
                    raise GeometryMismatch(f"point index {idx} out of range")
                seen.add(idx)
        object.__setattr__(self, "indices", tuple(sorted(seen)))

    def __setattr__(self, name, value):
        raise AttributeError("PointSet is immutable")

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self) -> Iterator[ProjPoint]:
        pts = enumerate_points(self.geometry)
        return iter([pts[i] for i in self.indices])

    def __contains__(self, item) -> bool:
        if isinstance(item, ProjPoint):
            return item.geometry == self.geometry and item.index in set(self.indices)
        return int(item) in set(self.indices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return self.geometry == other.geometry and self.indices == other.indices

    def __hash__(self) -> int:
        return hash((self.geometry, self.indices))

    def __repr__(self) -> str:
        return f"PointSet({self.geometry!r}, {len(self.indices)} points)"

    @property
    def points(self) -> frozenset:
        return frozenset(self)

    @classmethod
    def from_word(cls, geometry: GeometrySpec, word: np.ndarray) -> "PointSet":
        """Point set supported by the nonzero coordinates of a word."""
        return cls(geometry, np.nonzero(np.asarray(word))[0].tolist())

    def word(self) -> np.ndarray:
        out = np.zeros(self.geometry.num_points, dtype=np.uint8)
        out[list(self.indices)] = 1
        return out

    def mask(self) -> np.ndarray:
        out = np.zeros(self.geometry.num_points, dtype=bool)
        out[list(self.indices)] = True
        return out

    def without(self, index: int) -> "PointSet":
        if index not in set(self.indices):
            raise PointNotInSet(f"point {index} is not in the set")
        return PointSet(self.geometry, [i for i in self.indices if i != index])

    def to_json_list(self) -> list:
        """Sorted coordinate vectors, each entry a field element index."""
        pts = enumerate_points(self.geometry)
        return [list(pts[i].coords) for i in self.indices]


def _check_k(g: GeometrySpec, k: int) -> None:
    if not 1 <= k <= g.n - 1:
        raise DimensionOutOfRange(f"k must lie in [1, {g.n - 1}], got {k}")


def _secant_counts(B: PointSet, k: int) -> np.ndarray:
    # row i: |S_i ∩ B| over all (n-k)-subspaces S_i in enumeration order
    spi = subspace_point_indices(B.geometry, B.geometry.n - k)
    return B.mask()[spi].sum(axis=1)


def is_k_blocking(B: PointSet, k: int) -> bool:
    """True iff every (n-k)-subspace contains a point of B."""
    _check_k(B.geometry, k)
    return bool((_secant_counts(B, k) > 0).all())


def tangent_spaces(B: PointSet, k: int, P: ProjPoint) -> list[Subspace]:
    """All (n-k)-subspaces meeting B exactly in the point P."""
    _check_k(B.geometry, k)
    if P not in B:
        raise PointNotInSet("tangent spaces are defined at points of the set")
    g = B.geometry
    spi = subspace_point_indices(g, g.n - k)
    hit = B.mask()[spi]
    tangent_rows = np.nonzero(hit.sum(axis=1) == 1)[0]
    touched = spi[tangent_rows][hit[tangent_rows]]
    subs = enumerate_subspaces(g, g.n - k)
    return [subs[i] for i in tangent_rows[touched == P.index]]


def _essential_indices(B: PointSet, k: int) -> set[int]:
    g = B.geometry
    spi = subspace_point_indices(g, g.n - k)
    hit = B.mask()[spi]
    tangent_rows = hit.sum(axis=1) == 1
    return set(spi[tangent_rows][hit[tangent_rows]].tolist())


def essential_points(B: PointSet, k: int) -> set[ProjPoint]:
    """Points of B admitting at least one tangent (n-k)-subspace.

    B is minimal exactly when every point is essential.
    """
    _check_k(B.geometry, k)
    if not is_k_blocking(B, k):
        raise NotBlocking("essential points are defined for blocking sets only")
    pts = enumerate_points(B.geometry)
    return {pts[i] for i in _essential_indices(B, k)}


def is_minimal(B: PointSet, k: int) -> bool:
    return len(essential_points(B, k)) == len(B)


def reduce_to_minimal(
    B: PointSet,
    k: Optional[int] = None,
    rng: Optional[np.random.Generator] = None,
) -> PointSet:
    """Strip non-essential points one at a time until all are essential.

    Removing a non-essential point keeps the set k-blocking, so the loop
    terminates at a minimal k-blocking subset.  For hyperplane-type sets
    (k = n-1) of size below q^{n-1} + theta_{n-1} the result does not
    depend on removal order; outside that regime the reduction is still
    performed but a SizeGuaranteeViolated warning is issued.

    The default removal order is deterministic (smallest point first);
    pass a numpy Generator to randomize it.
    """
    g = B.geometry
    if k is None:
        k = g.n - 1
    _check_k(g, k)
    if not is_k_blocking(B, k):
        raise NotBlocking("reduction requires a k-blocking input")
    bound = g.q ** (g.n - 1) + theta(g.n - 1, g.q)
    if k != g.n - 1 or len(B) >= bound:
        warnings.warn(
            f"uniqueness of the reduction is only guaranteed for k = n-1 "
            f"and |B| < q^(n-1) + theta_(n-1) = {bound}; got k={k}, |B|={len(B)}",
            SizeGuaranteeViolated,
            stacklevel=2,
        )
    current = B
    while True:
        removable = sorted(set(current.indices) - _essential_indices(current, k))
        if not removable:
            return current
        if rng is None:
            pick = removable[0]
        else:
            pick = removable[int(rng.integers(len(removable)))]
        current = current.without(pick)


def symmetric_difference(H1: Hyperplane, H2: Hyperplane) -> PointSet:
    """Points on exactly one of two distinct hyperplanes; size 2q^{n-1}."""
    if H1.geometry != H2.geometry:
        raise GeometryMismatch("hyperplanes from different geometries")
    if H1 == H2:
        raise EqualHyperplanes("symmetric difference requires distinct hyperplanes")
    rows = hyperplane_point_indices(H1.geometry)
    a = set(rows[H1.index].tolist())
    b = set(rows[H2.index].tolist())
    return PointSet(H1.geometry, a ^ b)
