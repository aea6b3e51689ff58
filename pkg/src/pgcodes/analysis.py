"""Codeword analytics: classification, spectra, search, traces, tangency.

Everything operates on plain uint8 words over the global point order.  The
spectrum enumerator and the information-set search delegate their inner
loops to the kernels module; this module owns the mathematics around them
(classification of what was found, deduplication, deterministic ordering).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable

import numpy as np

from pgcodes import kernels
from pgcodes.code import CodeModel, as_word, build_model, weight
from pgcodes.geometry import (
    DimensionOutOfRange,
    GeometryMismatch,
    GeometrySpec,
    Hyperplane,
    ProjPoint,
    Subspace,
    enumerate_points,
    enumerate_subspaces,
    global_point_indices,
    hyperplane_point_indices,
    line_through_pairs,
    nullspace_fq,
    point_array,
    subspace_point_indices,
    theta,
    _subspace_from_rows,
)

DEFAULT_BUDGET = 2**22


class DimensionTooLow(ValueError):
    """Subspace dimension below what the operation guarantees."""


class BudgetExceeded(RuntimeError):
    """Exhaustive enumeration would exceed the message budget."""


class NoInformationSetFound(RuntimeError):
    """Could not systematize the generator on any sampled column set."""


class NotInCode(ValueError):
    """Word is not a codeword of the relevant code."""


class QInX(ValueError):
    """External point actually belongs to the point set."""


class WordKind(enum.Enum):
    ZERO = "Zero"
    HYPERPLANE_MULTIPLE = "HyperplaneMultiple"
    HYPERPLANE_DIFFERENCE = "HyperplaneDifference"
    OTHER = "Other"


@dataclass(frozen=True)
class WordClassification:
    kind: WordKind
    scalar: int | None = None
    h1: Hyperplane | None = None
    h2: Hyperplane | None = None


class TraceKind(enum.Enum):
    EMPTY = "Empty"
    HYPERPLANE = "HyperplaneOfS"
    SYMMETRIC_DIFFERENCE = "SymmetricDifferenceOfTwoHyperplanesOfS"
    AFFINE_COMPLEMENT = "AffineComplement"
    OTHER = "Other"


@dataclass(frozen=True)
class TraceClass:
    kind: TraceKind
    witnesses: tuple[Subspace, ...] = ()


@dataclass
class LineProfile:
    residues: dict[int, int]
    tangent_lines: int


@dataclass
class SpectrumReport:
    """Weight distribution plus the collected low-weight words.

    low_weight holds every nonzero word of weight <= collect_limit, sorted
    by (weight, entries) so output is identical across kernel backends.
    """

    weight_counts: dict[int, int]
    exhaustive: bool
    budget: int
    messages: int
    collect_limit: int
    low_weight: np.ndarray

    def to_json_dict(self) -> dict:
        return {
            "counts": {str(w): c for w, c in sorted(self.weight_counts.items())},
            "exhaustive": self.exhaustive,
            "budget": self.budget,
            "messages": self.messages,
        }

    def to_csv_rows(self) -> list[tuple[int, int]]:
        return sorted(self.weight_counts.items())


@dataclass
class SearchResult:
    """Distinct low-weight words found by randomized search.

    words contains every found word (all scalar multiples separately);
    orbit_representatives has one canonical word (leading entry 1) per
    scalar orbit.  Both sorted by (weight, entries).
    """

    words: np.ndarray
    orbit_representatives: np.ndarray
    iterations: int
    seed: int
    max_weight: int

    def to_json_dict(self) -> dict:
        return {
            "max_weight": self.max_weight,
            "iterations": self.iterations,
            "seed": self.seed,
            "words": [digit_string(row) for row in self.words],
            "orbit_representatives": [
                digit_string(row) for row in self.orbit_representatives
            ],
        }


def digit_string(w: np.ndarray) -> str:
    """Word as a digit string over the global point order.

    Digits are joined bare while they are single characters (p < 11) and
    comma-separated otherwise to stay unambiguous.
    """
    digits = [str(int(x)) for x in np.asarray(w)]
    if all(len(d) == 1 for d in digits):
        return "".join(digits)
    return ",".join(digits)


# -- supports and restriction ------------------------------------------------


def support(w: np.ndarray) -> np.ndarray:
    """Indices of the nonzero entries."""
    return np.nonzero(np.asarray(w))[0]


def support_points(g: GeometrySpec, w) -> list[ProjPoint]:
    pts = enumerate_points(g)
    return [pts[int(i)] for i in support(as_word(g, w))]


def restrict(w, s: Subspace) -> np.ndarray:
    """Entries of w at the points of s, in s's internal point order."""
    word = as_word(s.geometry, w)
    return word[global_point_indices(s)]


def restriction_model(s: Subspace) -> CodeModel:
    """The point-hyperplane code of the subspace itself."""
    if s.dim < 2:
        raise DimensionTooLow(f"membership guarantee needs dim >= 2, got {s.dim}")
    return build_model(GeometrySpec(s.geometry.field, s.dim))


# -- line profiles -----------------------------------------------------------


def line_profile(g: GeometrySpec, w) -> LineProfile:
    """Tally of support-line intersection residues mod p, plus tangents."""
    word = as_word(g, w)
    mask = word != 0
    counts = mask[subspace_point_indices(g, 1)].sum(axis=1)
    p = g.field.p
    residues: dict[int, int] = {}
    for r, c in zip(*np.unique(counts % p, return_counts=True)):
        residues[int(r)] = int(c)
    return LineProfile(residues=residues, tangent_lines=int((counts == 1).sum()))


# -- classification ----------------------------------------------------------


@lru_cache(maxsize=None)
def _hyperplane_support_hash(g: GeometrySpec) -> dict[bytes, int]:
    """Sorted point-index bytes of each hyperplane -> hyperplane index."""
    return {row.tobytes(): i for i, row in enumerate(hyperplane_point_indices(g))}


@lru_cache(maxsize=None)
def _hyperplane_vector_hash(g: GeometrySpec) -> dict[bytes, int]:
    """Incidence-vector bytes of each hyperplane -> hyperplane index."""
    out = {}
    npts = g.num_points
    for i, row in enumerate(hyperplane_point_indices(g)):
        vec = np.zeros(npts, dtype=np.uint8)
        vec[row] = 1
        out[vec.tobytes()] = i
    return out


def _hyperplane_by_index(g: GeometrySpec, i: int) -> Hyperplane:
    return Hyperplane(g, tuple(int(x) for x in point_array(g)[i]))


def classify_word(model: CodeModel, w) -> WordClassification:
    """Structural classification of a word against the two theorems' shapes.

    HyperplaneMultiple: constant nonzero entries on exactly a hyperplane's
    point set.  HyperplaneDifference: a * (v^H1 - v^H2) for distinct
    hyperplanes; only words of weight 2q^{n-1} can have this shape, so the
    weight acts as an exact gate, not a heuristic.  Witnesses are
    deterministic: the lexicographically smallest (H1, H2) pair for p = 2,
    and the pair anchored at the smallest support index for odd p.
    """
    g = model.geometry
    word = as_word(g, w)
    if not word.any():
        return WordClassification(WordKind.ZERO)
    p = g.field.p
    supp = support(word).astype(np.int32)
    values = word[supp]
    if (values == values[0]).all():
        hidx = _hyperplane_support_hash(g).get(supp.tobytes())
        if hidx is not None:
            return WordClassification(
                WordKind.HYPERPLANE_MULTIPLE,
                scalar=int(values[0]),
                h1=_hyperplane_by_index(g, hidx),
            )
    second = 2 * g.q ** (g.n - 1)
    if len(supp) == second:
        if p == 2:
            vec_hash = _hyperplane_vector_hash(g)
            hyp_pts = hyperplane_point_indices(g)
            for h1 in range(g.num_points):
                v1 = np.zeros(g.num_points, dtype=np.uint8)
                v1[hyp_pts[h1]] = 1
                partner = vec_hash.get(((word + v1) % 2).astype(np.uint8).tobytes())
                if partner is not None and partner != h1:
                    return WordClassification(
                        WordKind.HYPERPLANE_DIFFERENCE,
                        scalar=1,
                        h1=_hyperplane_by_index(g, h1),
                        h2=_hyperplane_by_index(g, partner),
                    )
        else:
            a = int(word[supp[0]])
            neg_a = (-a) % p
            class_a = supp[word[supp] == a]
            class_b = supp[word[supp] == neg_a]
            if len(class_a) == len(class_b) == len(supp) // 2:
                h1 = _hyperplane_through(g, class_a)
                h2 = _hyperplane_through(g, class_b)
                if h1 is not None and h2 is not None and h1 != h2:
                    rebuilt = np.zeros(g.num_points, dtype=np.int64)
                    rebuilt[hyperplane_point_indices(g)[h1]] += a
                    rebuilt[hyperplane_point_indices(g)[h2]] -= a
                    if np.array_equal(rebuilt % p, word):
                        return WordClassification(
                            WordKind.HYPERPLANE_DIFFERENCE,
                            scalar=a,
                            h1=_hyperplane_by_index(g, h1),
                            h2=_hyperplane_by_index(g, h2),
                        )
    return WordClassification(WordKind.OTHER)


def _hyperplane_through(g: GeometrySpec, point_idx: np.ndarray) -> int | None:
    """Index of the unique hyperplane containing all given points, if any."""
    rows = point_array(g)[point_idx]
    ann = nullspace_fq(rows, g.field)
    if ann.shape[0] != 1:
        return None
    fld = g.field
    vec = ann[0]
    nz = np.nonzero(vec)[0]
    lead = int(vec[nz[0]])
    if lead != 1:
        vec = fld.mul_table[fld.inv_table[lead], vec]
    from pgcodes.geometry import point_index_map

    return point_index_map(g)[vec.tobytes()]


# -- spectrum ----------------------------------------------------------------


def _sort_words(words: np.ndarray) -> np.ndarray:
    if words.shape[0] == 0:
        return words
    order = sorted(
        range(words.shape[0]),
        key=lambda i: (int(np.count_nonzero(words[i])), words[i].tobytes()),
    )
    return words[order]


def enumerate_spectrum(
    model: CodeModel,
    budget: int = DEFAULT_BUDGET,
    collect_limit: int | None = None,
    callback: Callable[[np.ndarray], None] | None = None,
) -> SpectrumReport:
    """Full weight distribution by Gray-coded enumeration of all messages.

    Collects every nonzero word of weight <= collect_limit (default
    2q^{n-1}); the collection buffer grows and retries on overflow so the
    returned set is complete even if the expected counts are exceeded.
    """
    g = model.geometry
    p = g.field.p
    messages = p**model.dimension
    if messages > budget:
        raise BudgetExceeded(
            f"p^dim = {messages} exceeds budget {budget}; use low_weight_search"
        )
    if collect_limit is None:
        collect_limit = 2 * g.q ** (g.n - 1)
    npts = g.num_points
    capacity = (p - 1) * npts + (p - 1) * npts * (npts - 1) // 2 + 64
    rows = np.ascontiguousarray(model.generator)
    while True:
        hist, words, overflow = kernels.spectrum(rows, p, collect_limit, capacity)
        if not overflow:
            break
        capacity *= 4
    assert int(hist.sum()) == messages
    words = _sort_words(words)
    if callback is not None:
        for w in words:
            callback(w)
    counts = {int(w): int(c) for w, c in enumerate(hist) if c}
    return SpectrumReport(
        weight_counts=counts,
        exhaustive=True,
        budget=budget,
        messages=messages,
        collect_limit=collect_limit,
        low_weight=words,
    )


# -- randomized low-weight search --------------------------------------------


def low_weight_search(
    model: CodeModel, max_weight: int, iterations: int, seed: int
) -> SearchResult:
    """Lee-Brickell style information-set search, deterministic given seed.

    Each round permutes the columns at random, re-systematizes, and keeps
    codewords spanned by at most two rows of the systematized generator.
    Finds are deduplicated exactly; scalar orbits are reported separately
    via canonical representatives.  Not guaranteed complete.
    """
    if max_weight < 0:
        raise ValueError(f"max_weight must be >= 0, got {max_weight}")
    if iterations < 1:
        raise ValueError(f"iterations must be >= 1, got {iterations}")
    g = model.geometry
    p = g.field.p
    npts = g.num_points
    empty = np.zeros((0, npts), dtype=np.uint8)
    if max_weight == 0:
        return SearchResult(empty, empty, iterations, seed, max_weight)
    if not model.generator[: model.dimension].any(axis=1).all():
        raise NoInformationSetFound("generator has a zero row")
    inv_mod = np.array([pow(a, p - 2, p) if a else 0 for a in range(p)], dtype=np.uint8)
    rng = np.random.default_rng(seed)
    seen: set[bytes] = set()
    found: list[np.ndarray] = []
    for _ in range(iterations):
        perm = rng.permutation(npts)
        rows = kernels.isd_round(
            np.ascontiguousarray(model.generator[:, perm]), p, max_weight, inv_mod
        )
        if rows.shape[0] == 0:
            continue
        back = np.empty_like(rows)
        back[:, perm] = rows
        for row in back:
            base = row.astype(np.int64)
            for a in range(1, p):
                scaled = ((a * base) % p).astype(np.uint8)
                key = scaled.tobytes()
                if key not in seen:
                    seen.add(key)
                    found.append(scaled)
    words = _sort_words(np.array(found, dtype=np.uint8) if found else empty)
    reps: dict[bytes, np.ndarray] = {}
    for w in words:
        nz = np.nonzero(w)[0]
        lead = int(w[nz[0]])
        canon = ((int(pow(lead, p - 2, p)) * w.astype(np.int64)) % p).astype(np.uint8)
        reps.setdefault(canon.tobytes(), canon)
    orbits = _sort_words(np.array(list(reps.values()), dtype=np.uint8) if reps else empty)
    return SearchResult(words, orbits, iterations, seed, max_weight)


# -- subspace traces ---------------------------------------------------------


def _as_index_set(g: GeometrySpec, points) -> np.ndarray:
    """Coerce ProjPoints / indices / mask to a sorted unique index array."""
    if isinstance(points, np.ndarray) and points.dtype == bool:
        if points.shape != (g.num_points,):
            raise ValueError("mask length does not match the geometry")
        return np.nonzero(points)[0].astype(np.int32)
    idx = []
    for pt in points:
        if isinstance(pt, ProjPoint):
            if pt.geometry != g:
                raise GeometryMismatch("point from a different geometry")
            idx.append(pt.index)
        else:
            v = int(pt)
            if not 0 <= v < g.num_points:
                raise ValueError(f"point index {v} out of range")
            idx.append(v)
    return np.array(sorted(set(idx)), dtype=np.int32)


def _ambient_subspace_from_indices(g: GeometrySpec, idx: Iterable[int]) -> Subspace:
    rows = point_array(g)[np.asarray(list(idx), dtype=np.int64)]
    return _subspace_from_rows(g, rows)


def classify_subspace_traces(
    g: GeometrySpec, points, h: int
) -> dict[Subspace, TraceClass]:
    """Classify X's trace on every h-subspace against the trichotomy shapes.

    Kinds: Empty, SymmetricDifferenceOfTwoHyperplanesOfS, AffineComplement
    (S minus one of its hyperplanes), HyperplaneOfS, Other — checked in that
    priority order (for q = 2 a symmetric difference and an affine
    complement describe the same traces).
    """
    if not 1 <= h <= g.n - 1:
        raise DimensionOutOfRange(f"h must be in [1, {g.n - 1}], got {h}")
    xset = set(_as_index_set(g, points).tolist())
    spaces = enumerate_subspaces(g, h)
    space_pts = subspace_point_indices(g, h)
    out: dict[Subspace, TraceClass] = {}
    if h >= 2:
        internal = GeometrySpec(g.field, h)
        int_hyps = [set(row.tolist()) for row in hyperplane_point_indices(internal)]
    q = g.q
    for s, pts in zip(spaces, space_pts):
        pts_list = pts.tolist()
        trace = [i for i, gp in enumerate(pts_list) if gp in xset]
        tset = set(trace)
        if not tset:
            out[s] = TraceClass(TraceKind.EMPTY)
            continue
        if h == 1:
            if len(tset) == 2:
                wit = tuple(_ambient_subspace_from_indices(g, [pts_list[i]]) for i in trace)
                out[s] = TraceClass(TraceKind.SYMMETRIC_DIFFERENCE, wit)
            elif len(tset) == q:
                missing = [pts_list[i] for i in range(q + 1) if i not in tset]
                wit = (_ambient_subspace_from_indices(g, missing),)
                out[s] = TraceClass(TraceKind.AFFINE_COMPLEMENT, wit)
            elif len(tset) == 1:
                wit = (_ambient_subspace_from_indices(g, [pts_list[trace[0]]]),)
                out[s] = TraceClass(TraceKind.HYPERPLANE, wit)
            else:
                out[s] = TraceClass(TraceKind.OTHER)
            continue
        classified = False
        if len(tset) == 2 * q ** (h - 1):
            for i1 in range(len(int_hyps)):
                for i2 in range(i1 + 1, len(int_hyps)):
                    if int_hyps[i1] ^ int_hyps[i2] == tset:
                        wit = tuple(
                            _ambient_subspace_from_indices(g, (pts[sorted(int_hyps[j])]))
                            for j in (i1, i2)
                        )
                        out[s] = TraceClass(TraceKind.SYMMETRIC_DIFFERENCE, wit)
                        classified = True
                        break
                if classified:
                    break
        if classified:
            continue
        full = set(range(len(pts_list)))
        complement = full - tset
        if complement in int_hyps:
            wit = (_ambient_subspace_from_indices(g, pts[sorted(complement)]),)
            out[s] = TraceClass(TraceKind.AFFINE_COMPLEMENT, wit)
            continue
        if tset in int_hyps:
            wit = (_ambient_subspace_from_indices(g, pts[sorted(tset)]),)
            out[s] = TraceClass(TraceKind.HYPERPLANE, wit)
            continue
        out[s] = TraceClass(TraceKind.OTHER)
    return out


# -- tangent collinearity ----------------------------------------------------


def tangent_collinearity(model: CodeModel, points, q_point) -> tuple[bool, Subspace | None]:
    """For planar 0/1 codewords: are the tangent-through-Q points collinear?

    A point P of X counts when the line PQ meets X only at P.  Returns the
    common line as witness when at least two such points exist.
    """
    g = model.geometry
    if g.n != 2:
        raise DimensionOutOfRange("tangent collinearity is a planar check")
    xidx = _as_index_set(g, points)
    if isinstance(q_point, ProjPoint):
        if q_point.geometry != g:
            raise GeometryMismatch("point from a different geometry")
        qi = q_point.index
    else:
        qi = int(q_point)
    xset = set(xidx.tolist())
    if qi in xset:
        raise QInX(f"point index {qi} lies in the set")
    vec = np.zeros(g.num_points, dtype=np.uint8)
    vec[xidx] = 1
    if not model.contains(vec):
        raise NotInCode("the set's incidence vector is not a codeword")
    pair_lines = line_through_pairs(g)
    line_pts = subspace_point_indices(g, 1)
    mask = np.zeros(g.num_points, dtype=bool)
    mask[xidx] = True
    tangent_points = []
    for pi in xidx.tolist():
        li = int(pair_lines[pi, qi])
        if int(mask[line_pts[li]].sum()) == 1:
            tangent_points.append(pi)
    if len(tangent_points) < 2:
        return True, None
    first, second = tangent_points[0], tangent_points[1]
    common = int(pair_lines[first, second])
    for pi in tangent_points[2:]:
        if int(pair_lines[first, pi]) != common:
            return False, None
    return True, _ambient_subspace_from_indices(g, line_pts[common].tolist())
