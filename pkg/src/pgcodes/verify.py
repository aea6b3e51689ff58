"""Structural check suites over the hyperplane-incidence codes.

run_suite builds the code for one (p, h, n) triple and runs a selection
of named check suites, each recording pass/fail with enough detail to
audit.  Where the full message space fits the budget the checks are
exhaustive; beyond it the weight-facing suites degrade to randomized
search evidence and say so in their status.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .gf import make_field
from .geometry import (
    GeometrySpec,
    enumerate_subspaces,
    hyperplane_point_indices,
    subspace_point_indices,
    theta,
)
from .code import build_incidence_matrix, build_model, expected_dimension, p_rank, weight
from .analysis import (
    DEFAULT_BUDGET,
    WordKind,
    classify_word,
    enumerate_spectrum,
    line_profile,
    low_weight_search,
    restrict,
    restriction_model,
    support,
    tangent_collinearity,
)
from .blocking import PointSet, is_k_blocking, is_minimal, reduce_to_minimal

DEFAULT_HULL_BUDGET = 2**28
DEFAULT_BBW_BUDGET = 2**20

SUITES = (
    "dimension",
    "minweight",
    "gap",
    "second",
    "hull",
    "properties",
    "restriction",
    "bbw",
    "blocking",
)

DEFAULT_GRID = (
    (2, 1, 2),
    (3, 1, 2),
    (2, 2, 2),
    (2, 3, 2),
    (2, 1, 3),
    (3, 1, 3),
    (2, 2, 3),
    (2, 1, 4),
)

# stream id for the shared low-weight search; suites use their own index
_SEARCH_STREAM = 97


class InfeasibleParams(ValueError):
    """Exhaustive verification was requested beyond the message budget."""


class UnknownFormat(ValueError):
    """Requested report rendering format does not exist."""


class UnknownSuite(ValueError):
    """Requested suite name is not one of the known suites."""


@dataclass
class CheckResult:
    name: str
    status: str  # pass | fail | skipped | evidence-only
    details: dict
    witnesses: list = field(default_factory=list)


@dataclass
class VerificationReport:
    params: dict
    code: dict
    mode: str  # exhaustive | search
    seed: int
    checks: list
    spectrum: Optional[dict] = None
    timing: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json_dict(self) -> dict:
        # timing intentionally stays out: it would break run-to-run equality
        out = {
            "params": self.params,
            "code": self.code,
            "mode": self.mode,
            "seed": self.seed,
            "checks": [
                {
                    "name": c.name,
                    "status": c.status,
                    "details": c.details,
                    "witnesses": c.witnesses,
                }
                for c in self.checks
            ],
        }
        if self.spectrum is not None:
            out["spectrum"] = self.spectrum
        return _jsonify(out)


REPORT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["params", "code", "mode", "seed", "checks"],
    "additionalProperties": False,
    "properties": {
        "params": {
            "type": "object",
            "required": ["p", "h", "n", "q", "theta_n", "modulus"],
            "additionalProperties": False,
            "properties": {
                "p": {"type": "integer", "minimum": 2},
                "h": {"type": "integer", "minimum": 1},
                "n": {"type": "integer", "minimum": 2},
                "q": {"type": "integer", "minimum": 2},
                "theta_n": {"type": "integer", "minimum": 7},
                "modulus": {"type": "array", "items": {"type": "integer"}},
            },
        },
        "code": {
            "type": "object",
            "required": ["dimension", "expected_dimension"],
            "additionalProperties": False,
            "properties": {
                "dimension": {"type": "integer", "minimum": 1},
                "expected_dimension": {"type": "integer", "minimum": 1},
            },
        },
        "mode": {"enum": ["exhaustive", "search"]},
        "seed": {"type": "integer"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "status", "details", "witnesses"],
                "additionalProperties": False,
                "properties": {
                    "name": {"enum": list(SUITES)},
                    "status": {"enum": ["pass", "fail", "skipped", "evidence-only"]},
                    "details": {"type": "object"},
                    "witnesses": {"type": "array"},
                },
            },
        },
        "spectrum": {
            "type": "object",
            "required": ["counts", "exhaustive", "budget", "messages"],
            "additionalProperties": False,
            "properties": {
                "counts": {
                    "type": "object",
                    "patternProperties": {"^[0-9]+$": {"type": "integer"}},
                    "additionalProperties": False,
                },
                "exhaustive": {"type": "boolean"},
                "budget": {"type": "integer"},
                "messages": {"type": "integer"},
            },
        },
    },
}


def _jsonify(obj):
    """Recursively strip numpy scalar/array types for json.dumps."""
    if isinstance(obj, dict):
        return {str(k): _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonify(v) for v in obj.tolist()]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def _word_witness(w: np.ndarray) -> dict:
    return {"weight": int(weight(w)), "digits": [int(x) for x in w]}


def _suite_rng(seed: int, name: str) -> np.random.Generator:
    return np.random.default_rng([seed, SUITES.index(name)])


def _search_seed(seed: int) -> int:
    return int(np.random.SeedSequence([seed, _SEARCH_STREAM]).generate_state(1)[0])


def _random_codewords(model, rng: np.random.Generator, count: int) -> np.ndarray:
    msgs = rng.integers(0, model.geometry.field.p, size=(count, model.dimension))
    return (msgs @ model.generator.astype(np.int64)) % model.geometry.field.p


def _subspace_words(g: GeometrySpec) -> np.ndarray:
    """Incidence vectors of every subspace of dimension >= 1, all dims."""
    rows = []
    for k in range(1, g.n):
        spi = subspace_point_indices(g, k)
        block = np.zeros((spi.shape[0], g.num_points), dtype=np.int64)
        np.put_along_axis(block, spi.astype(np.int64), 1, axis=1)
        rows.append(block)
    return np.concatenate(rows, axis=0)


def run_suite(
    params: Sequence[int],
    suites: Optional[Sequence[str]] = None,
    *,
    budget: int = DEFAULT_BUDGET,
    hull_budget: int = DEFAULT_HULL_BUDGET,
    bbw_budget: int = DEFAULT_BBW_BUDGET,
    seed: int = 0,
    mode: str = "auto",
    search_iterations: int = 100_000,
    search_max_weight: Optional[int] = None,
    restriction_samples: int = 1000,
    blocking_trials: int = 20,
    blocking_orders: int = 3,
) -> VerificationReport:
    """Run the selected check suites for one parameter triple (p, h, n)."""
    p, h, n = (int(x) for x in params)
    if suites is None:
        chosen = list(SUITES)
    else:
        chosen = list(suites)
        for s in chosen:
            if s not in SUITES:
                raise UnknownSuite(f"unknown suite {s!r}; known: {', '.join(SUITES)}")
    if mode not in ("auto", "exhaustive", "search"):
        raise ValueError(f"mode must be auto, exhaustive or search, got {mode!r}")

    g = GeometrySpec(make_field(p, h), n)
    model = build_model(g)
    feasible = p**model.dimension <= budget
    if mode == "exhaustive" and not feasible:
        raise InfeasibleParams(
            f"{p}^{model.dimension} messages exceed the budget {budget}; "
            f"use search mode or raise the budget"
        )
    resolved = "exhaustive" if (mode == "auto" and feasible) or mode == "exhaustive" else "search"

    second_weight = 2 * g.q ** (n - 1)
    report = VerificationReport(
        params={
            "p": p,
            "h": h,
            "n": n,
            "q": g.q,
            "theta_n": g.num_points,
            "modulus": list(g.field.modulus),
        },
        code={"dimension": model.dimension, "expected_dimension": expected_dimension(g)},
        mode=resolved,
        seed=seed,
        checks=[],
    )

    spectrum = None
    search = None
    if resolved == "exhaustive" and set(chosen) & {"minweight", "gap", "second", "bbw", "blocking"}:
        spectrum = enumerate_spectrum(model, budget=budget)
        report.spectrum = spectrum.to_json_dict()
    if resolved == "search" and set(chosen) & {"minweight", "gap", "second", "blocking"}:
        search = low_weight_search(
            model,
            second_weight if search_max_weight is None else search_max_weight,
            search_iterations,
            seed=_search_seed(seed),
        )

    runners = {
        "dimension": lambda: _run_dimension(g, model),
        "minweight": lambda: _run_minweight(g, model, spectrum, search),
        "gap": lambda: _run_gap(g, model, spectrum, search),
        "second": lambda: _run_second(g, model, spectrum, search),
        "hull": lambda: _run_hull(g, model, hull_budget),
        "properties": lambda: _run_properties(g, model, _suite_rng(seed, "properties")),
        "restriction": lambda: _run_restriction(
            g, model, spectrum, _suite_rng(seed, "restriction"), restriction_samples
        ),
        "bbw": lambda: _run_bbw(g, model, spectrum, bbw_budget),
        "blocking": lambda: _run_blocking(
            g,
            model,
            spectrum,
            search,
            _suite_rng(seed, "blocking"),
            blocking_trials,
            blocking_orders,
        ),
    }
    for name in SUITES:
        if name not in chosen:
            continue
        start = time.perf_counter()
        report.checks.append(runners[name]())
        report.timing[name] = time.perf_counter() - start
    return report


# -- individual suites -------------------------------------------------------


def _run_dimension(g, model) -> CheckResult:
    rank = p_rank(build_incidence_matrix(g), g.field.p)
    expected = expected_dimension(g)
    details = {"p_rank": rank, "formula": expected, "dimension": model.dimension}
    ok = rank == expected == model.dimension
    return CheckResult("dimension", "pass" if ok else "fail", details)


def _classification_tally(model, words) -> tuple[dict, dict, list]:
    kinds: dict = {}
    by_weight: dict = {}
    bad = []
    for row in words:
        got = classify_word(model, row)
        kinds[got.kind.value] = kinds.get(got.kind.value, 0) + 1
        w = int(weight(row))
        by_weight[w] = by_weight.get(w, 0) + 1
        expected_kind = (
            WordKind.HYPERPLANE_MULTIPLE
            if w == theta(model.geometry.n - 1, model.geometry.q)
            else WordKind.HYPERPLANE_DIFFERENCE
            if w == 2 * model.geometry.q ** (model.geometry.n - 1)
            else None
        )
        if expected_kind is not None and got.kind is not expected_kind:
            bad.append(row)
    return kinds, by_weight, bad


def _run_minweight(g, model, spectrum, search) -> CheckResult:
    expected = theta(g.n - 1, g.q)
    expected_count = (g.field.p - 1) * g.num_points
    if spectrum is not None:
        minw = min(w for w in spectrum.weight_counts if w)
        count = spectrum.weight_counts[minw]
        min_words = [row for row in spectrum.low_weight if weight(row) == minw]
        bad = [r for r in min_words if classify_word(model, r).kind is not WordKind.HYPERPLANE_MULTIPLE]
        details = {
            "minimum_weight": minw,
            "expected": expected,
            "count": count,
            "expected_count": expected_count,
            "classified": len(min_words),
        }
        ok = minw == expected and count == expected_count and not bad
        return CheckResult(
            "minweight", "pass" if ok else "fail", details, [_word_witness(r) for r in bad]
        )
    # search evidence: hyperplane words guarantee found weight <= expected,
    # so any deviation below expected or any misclassified word is a failure
    kinds, by_weight, bad = _classification_tally(model, search.words)
    found_min = min(by_weight) if by_weight else None
    details = {
        "found_minimum_weight": found_min,
        "expected": expected,
        "words_found": int(search.words.shape[0]),
        "found_weights": sorted(by_weight),
        "classification_counts": kinds,
        "iterations": search.iterations,
    }
    if (found_min is not None and found_min < expected) or bad:
        return CheckResult("minweight", "fail", details, [_word_witness(r) for r in bad])
    return CheckResult("minweight", "evidence-only", details)


def _run_gap(g, model, spectrum, search) -> CheckResult:
    low = theta(g.n - 1, g.q)
    high = 2 * g.q ** (g.n - 1)
    if spectrum is not None:
        inside = {w: c for w, c in spectrum.weight_counts.items() if low < w < high}
        details = {"interval": [low, high], "weights_inside": inside}
        return CheckResult("gap", "pass" if not inside else "fail", details)
    by_weight: dict = {}
    for row in search.words:
        w = int(weight(row))
        by_weight[w] = by_weight.get(w, 0) + 1
    inside = {w: c for w, c in by_weight.items() if low < w < high}
    details = {
        "interval": [low, high],
        "weights_inside": inside,
        "found_weights": sorted(by_weight),
        "iterations": search.iterations,
    }
    if inside:
        witnesses = [_word_witness(r) for r in search.words if low < weight(r) < high]
        return CheckResult("gap", "fail", details, witnesses)
    return CheckResult("gap", "evidence-only", details)


def _run_second(g, model, spectrum, search) -> CheckResult:
    target = 2 * g.q ** (g.n - 1)
    words = (
        [row for row in spectrum.low_weight if weight(row) == target]
        if spectrum is not None
        else [row for row in search.words if weight(row) == target]
    )
    bad_kind = [r for r in words if classify_word(model, r).kind is not WordKind.HYPERPLANE_DIFFERENCE]
    bad_hull = [r for r in words if not model.hull_contains(r)]
    details = {
        "weight": target,
        "words_checked": len(words),
        "all_hyperplane_differences": not bad_kind,
        "all_in_hull": not bad_hull,
    }
    if spectrum is None:
        details["iterations"] = search.iterations
    if bad_kind or bad_hull:
        witnesses = [_word_witness(r) for r in bad_kind + bad_hull]
        return CheckResult("second", "fail", details, witnesses)
    status = "pass" if spectrum is not None else "evidence-only"
    return CheckResult("second", status, details)


def _run_hull(g, model, hull_budget) -> CheckResult:
    expected = 2 * g.q ** (g.n - 1)
    hull_dim = model.hull_dimension
    messages = g.field.p**hull_dim
    if messages > hull_budget:
        details = {
            "hull_dimension": hull_dim,
            "messages": messages,
            "hull_budget": hull_budget,
        }
        return CheckResult("hull", "skipped", details)
    hist, _, _ = kernels.spectrum(model.hull, g.field.p, 0, 1)
    assert int(hist.sum()) == messages
    nonzero = np.nonzero(hist[1:])[0]
    minw = int(nonzero[0]) + 1 if nonzero.size else None
    details = {
        "hull_dimension": hull_dim,
        "hull_minimum_weight": minw,
        "expected": expected,
        "messages": messages,
    }
    return CheckResult("hull", "pass" if minw == expected else "fail", details)


def _run_properties(g, model, rng) -> CheckResult:
    p = g.field.p
    subs = _subspace_words(g)
    a = build_incidence_matrix(g).astype(np.int64)
    # difference of any two subspace vectors orthogonal to every row of A
    against_code = (a @ subs.T) % p
    item1 = bool((against_code == against_code[:, :1]).all())
    sample = np.concatenate(
        [
            model.generator.astype(np.int64),
            a,
            np.ones((1, g.num_points), dtype=np.int64),
            _random_codewords(model, rng, 32),
        ]
    )
    pairing = (sample @ subs.T) % p
    item2 = bool((pairing == pairing[:, :1]).all())
    item3 = all(
        model.hull_contains((row % p).astype(np.uint8)) == (int(pairing[i, 0]) == 0)
        for i, row in enumerate(sample)
    )
    details = {
        "subspaces": int(subs.shape[0]),
        "sample_words": int(sample.shape[0]),
        "differences_in_dual": item1,
        "pairing_constant": item2,
        "hull_iff_zero_pairing": item3,
    }
    ok = item1 and item2 and item3
    return CheckResult("properties", "pass" if ok else "fail", details)


def _run_restriction(g, model, spectrum, rng, samples) -> CheckResult:
    pool = [s for k in range(2, g.n) for s in enumerate_subspaces(g, k)]
    if not pool:
        details = {
            "pairs_checked": 0,
            "note": "no proper subspace has dimension 2 or more; restriction is the identity",
        }
        return CheckResult("restriction", "pass", details)
    words = [np.ones(g.num_points, dtype=np.uint8)]
    words.extend(model.generator)
    if spectrum is not None:
        words.extend(spectrum.low_weight)
    words.extend(
        (row % g.field.p).astype(np.uint8) for row in _random_codewords(model, rng, 64)
    )
    checked = 0
    bad = []
    while checked < samples:
        s = pool[int(rng.integers(len(pool)))]
        w = words[int(rng.integers(len(words)))]
        local = restriction_model(s)
        restricted = restrict(w, s)
        closure = local.contains(restricted)
        supp_ok = set(np.nonzero(restricted)[0].tolist()) == {
            i
            for i, gp in enumerate(_global_points(s))
            if w[gp]
        }
        if not (closure and supp_ok):
            bad.append({"word": _word_witness(w), "subspace": _subspace_witness(s)})
        checked += 1
    details = {"pairs_checked": checked, "subspace_pool": len(pool), "word_pool": len(words)}
    return CheckResult("restriction", "pass" if not bad else "fail", details, bad)


def _global_points(s):
    from .geometry import global_point_indices

    return global_point_indices(s).tolist()


def _subspace_witness(s) -> dict:
    return {"dimension": s.dim, "points": _global_points(s)}


def _run_bbw(g, model, spectrum, bbw_budget) -> CheckResult:
    if g.n != 2:
        return CheckResult("bbw", "skipped", {"reason": "planar statement only"})
    if spectrum is None:
        return CheckResult("bbw", "skipped", {"reason": "requires exhaustive enumeration"})
    p = g.field.p
    messages = p**model.dimension
    if messages > bbw_budget:
        details = {"messages": messages, "bbw_budget": bbw_budget}
        return CheckResult("bbw", "skipped", details)
    # collect every codeword, keep those with all entries in {0, 1}
    hist, words, overflow = kernels.spectrum(
        model.generator, p, g.num_points, messages
    )
    assert not overflow
    incidence_words = [w for w in words if w.max() <= 1]
    checked = 0
    bad = []
    for w in incidence_words:
        x = support(w).tolist()
        inside = set(x)
        for q_idx in range(g.num_points):
            if q_idx in inside:
                continue
            ok, _ = tangent_collinearity(model, x, q_idx)
            checked += 1
            if not ok:
                bad.append({"word": _word_witness(w), "external_point": q_idx})
    details = {"incidence_words": len(incidence_words), "pairs_checked": checked}
    return CheckResult("bbw", "pass" if not bad else "fail", details, bad)


def _run_blocking(g, model, spectrum, search, rng, trials, orders) -> CheckResult:
    p = g.field.p
    high = 2 * g.q ** (g.n - 1)
    small_words = []
    if spectrum is not None:
        small_words = [r for r in spectrum.low_weight if 0 < weight(r) < high]
    elif search is not None:
        small_words = [r for r in search.words if 0 < weight(r) < high]
    bad = []
    for row in small_words:
        entries = set(row[np.nonzero(row)[0]].tolist())
        constant = len(entries) == 1
        s = PointSet.from_word(g, row)
        blocking_ok = is_k_blocking(s, g.n - 1) and is_minimal(s, g.n - 1)
        residues_ok = set(line_profile(g, row).residues) == {1}
        if not (constant and blocking_ok and residues_ok):
            bad.append(_word_witness(row))
    # order-independent reduction of hyperplane supersets below the bound
    hyp_rows = hyperplane_point_indices(g)
    bound_extras = g.q ** (g.n - 1) - 1
    disagreements = []
    for _ in range(trials):
        h_idx = int(rng.integers(g.num_points))
        base = set(hyp_rows[h_idx].tolist())
        off = [i for i in range(g.num_points) if i not in base]
        n_extra = int(rng.integers(1, min(bound_extras, len(off)) + 1))
        pick = rng.choice(len(off), size=n_extra, replace=False)
        superset = PointSet(g, sorted(base | {off[i] for i in pick}))
        results = {reduce_to_minimal(superset)}
        for _ in range(orders - 1):
            results.add(reduce_to_minimal(superset, rng=rng))
        expected = PointSet(g, sorted(base))
        if results != {expected}:
            disagreements.append(
                {
                    "superset": list(superset.indices),
                    "hyperplane": h_idx,
                    "results": [list(r.indices) for r in results],
                }
            )
    details = {
        "small_words_checked": len(small_words),
        "reduction_trials": trials,
        "orders_per_trial": orders,
        "exhaustive_words": spectrum is not None,
    }
    ok = not bad and not disagreements
    return CheckResult("blocking", "pass" if ok else "fail", details, bad + disagreements)


# -- rendering ---------------------------------------------------------------


def emit_report(report: VerificationReport, fmt: str = "json") -> str:
    """Render a report deterministically as json, csv or a text table."""
    if fmt == "json":
        return json.dumps(report.to_json_dict(), indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        lines = []
        if report.spectrum is not None:
            lines.append("weight,count")
            counts = report.spectrum["counts"]
            lines.extend(f"{w},{counts[w]}" for w in sorted(counts, key=int))
        else:
            lines.append("check,status")
            lines.extend(f"{c.name},{c.status}" for c in report.checks)
        return "\n".join(lines) + "\n"
    if fmt == "table":
        return _render_table(report)
    raise UnknownFormat(f"unknown format {fmt!r}; known: json, csv, table")


def _render_table(report: VerificationReport) -> str:
    pr = report.params
    lines = [
        f"PG({pr['n']},{pr['q']})  p={pr['p']} h={pr['h']}  points={pr['theta_n']}",
        f"mode: {report.mode}  seed: {report.seed}",
        f"dimension: {report.code['dimension']} (expected {report.code['expected_dimension']})",
    ]
    for c in report.checks:
        if c.name == "minweight" and "minimum_weight" in c.details:
            lines.append(
                f"minimum weight: {c.details['minimum_weight']} = theta_{pr['n'] - 1}"
            )
        lines.append(f"{c.name}: {c.status}")
    if report.spectrum is not None:
        counts = report.spectrum["counts"]
        body = ", ".join(f"{w}:{counts[w]}" for w in sorted(counts, key=int))
        lines.append(f"spectrum: {{{body}}}")
    return "\n".join(lines) + "\n"
