"""Timing comparison of the jit kernels against the numpy fallbacks.

Run as a script:

    python3 benchmarks/bench_kernels.py

Each task is timed under both backends by flipping the dispatch flag at
call time; the jit path is warmed once before measurement so compilation
cost does not pollute the numbers.
"""

import time

import numpy as np

from pgcodes import kernels
from pgcodes.gf import make_field
from pgcodes.geometry import GeometrySpec
from pgcodes.code import build_model
from pgcodes.analysis import enumerate_spectrum, low_weight_search


def best_of(fn, repeat=3):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def geometry(p, h, n):
    return GeometrySpec(make_field(p, h), n)


def spectrum_task(g):
    model = build_model(g)
    return lambda: enumerate_spectrum(model)


def random_spectrum_task(p, k, n, seed):
    rng = np.random.default_rng(seed)
    rows = rng.integers(0, p, size=(k, n), dtype=np.uint8)
    return lambda: kernels.spectrum(rows, p, 0, 1)


def search_task(g, iterations):
    model = build_model(g)
    return lambda: low_weight_search(model, 2 * g.q ** (g.n - 1), iterations, seed=1)


def main():
    tasks = [
        ("spectrum PG(3,3)  3^11 msgs", spectrum_task(geometry(3, 1, 3))),
        ("spectrum PG(3,4)  2^17 msgs", spectrum_task(geometry(2, 2, 3))),
        ("spectrum rand GF(2) 22x73  2^22 msgs", random_spectrum_task(2, 22, 73, 0)),
        ("spectrum rand GF(3) 13x40  3^13 msgs", random_spectrum_task(3, 13, 40, 0)),
        ("search  PG(2,5)  2000 rounds", search_task(geometry(5, 1, 2), 2000)),
    ]
    have_numba = kernels.HAVE_NUMBA
    original = kernels.USE_NUMBA
    print(f"numba available: {have_numba} (dispatch enabled: {original})\n")
    header = f"{'task':<40} {'numpy':>10} {'numba':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    try:
        for name, fn in tasks:
            kernels.USE_NUMBA = False
            t_numpy = best_of(fn)
            if have_numba:
                kernels.USE_NUMBA = True
                fn()  # warm the jit cache
                t_numba = best_of(fn)
                ratio = f"{t_numpy / t_numba:7.1f}x"
                print(f"{name:<40} {t_numpy:9.3f}s {t_numba:9.3f}s {ratio:>8}")
            else:
                print(f"{name:<40} {t_numpy:9.3f}s {'-':>10} {'-':>8}")
    finally:
        kernels.USE_NUMBA = original


if __name__ == "__main__":
    main()
