"""Independent oracles used to pin expected values in the test suite.

Everything here is deliberately naive: plain itertools / python-int
arithmetic with no shared code paths into the package, so agreement between
package output and these oracles is meaningful evidence.
"""

from __future__ import annotations

import itertools
from collections import Counter

import numpy as np


def brute_force_spectrum(generator_rows: np.ndarray, p: int) -> Counter:
    """Weight distribution of the row space, by enumerating all messages."""
    k = generator_rows.shape[0]
    counts: Counter = Counter()
    rows = generator_rows.astype(np.int64)
    for msg in itertools.product(range(p), repeat=k):
        word = np.zeros(rows.shape[1], dtype=np.int64)
        for coeff, row in zip(msg, rows):
            word += coeff * row
        counts[int(np.count_nonzero(word % p))] += 1
    return counts


def brute_force_words_of_weight(generator_rows: np.ndarray, p: int, weight: int) -> set:
    """All distinct codewords of the given weight, as tuples."""
    k = generator_rows.shape[0]
    rows = generator_rows.astype(np.int64)
    found = set()
    for msg in itertools.product(range(p), repeat=k):
        word = np.zeros(rows.shape[1], dtype=np.int64)
        for coeff, row in zip(msg, rows):
            word += coeff * row
        word %= p
        if int(np.count_nonzero(word)) == weight:
            found.add(tuple(int(x) for x in word))
    return found


def python_rank_mod_p(matrix, p: int) -> int:
    """Row rank over F_p by plain Gaussian elimination on python ints."""
    rows = [[int(x) % p for x in row] for row in matrix]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r][col] % p:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], p - 2, p) if p > 2 else rows[rank][col]
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [(x - f * y) % p for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def gaussian_binomial_product(a: int, b: int, q: int) -> int:
    """Number of b-dim subspaces of an a-dim space over GF(q), product form."""
    if b < 0 or b > a:
        return 0
    num = 1
    den = 1
    for i in range(b):
        num *= q ** (a - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


def theta_oracle(m: int, q: int) -> int:
    """Point count of an m-dimensional projective space, as a plain sum."""
    return sum(q**i for i in range(m + 1))


def count_projective_classes(n: int, q: int) -> int:
    """Count scalar-multiple classes of nonzero length-(n+1) vectors over Z_q.

    Only valid for prime q (uses integer arithmetic mod q), which is all the
    oracle is used for.
    """
    seen = set()
    classes = 0
    for vec in itertools.product(range(q), repeat=n + 1):
        if not any(vec) or vec in seen:
            continue
        classes += 1
        for s in range(1, q):
            seen.add(tuple((s * c) % q for c in vec))
    return classes


def naive_min_weight(generator_rows: np.ndarray, p: int) -> int:
    counts = brute_force_spectrum(generator_rows, p)
    return min(w for w in counts if w > 0)
