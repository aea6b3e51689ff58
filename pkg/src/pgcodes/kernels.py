"""Hot enumeration kernels, each in a numba and a pure-numpy variant.

The two hot loops are full-spectrum enumeration (p^dim messages, Gray-coded
so each step is one basis-row update) and the randomized information-set
rounds of the low-weight search.  Every public function dispatches to a
numba-compiled implementation when numba is importable, or to a vectorized
numpy implementation otherwise.  Setting the environment variable
PGCODES_NO_NUMBA=1 forces the numpy path; both variants are also exported
directly so tests and benchmarks can compare them.

Representation notes: words over F_2 are bit-packed into uint64 lanes with
popcount-based weights inside the kernels; words over odd p stay byte
vectors.  Packing assumes a little-endian platform (bit j of a row lands in
bit j%64 of lane j//64).
"""

from __future__ import annotations

import os

import numpy as np

_ENV_FLAG = "PGCODES_NO_NUMBA"


def _numba_requested() -> bool:
    return os.environ.get(_ENV_FLAG, "") in ("", "0")


HAVE_NUMBA = False
if _numba_requested():
    try:
        from numba import njit

        HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a hard dependency
        HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA


# -- bit packing -------------------------------------------------------------


def pack_bits(rows: np.ndarray) -> np.ndarray:
    """(m, n) 0/1 uint8 -> (m, ceil(n/64)) uint64, bit j at lane j//64."""
    m, n = rows.shape
    lanes = (n + 63) // 64
    padded = np.zeros((m, lanes * 64), dtype=np.uint8)
    padded[:, :n] = rows
    return np.packbits(padded, axis=1, bitorder="little").view(np.uint64)


def unpack_bits(packed: np.ndarray, n: int) -> np.ndarray:
    """Inverse of pack_bits, trimming the lane padding back to n columns."""
    if packed.shape[0] == 0:
        return np.zeros((0, n), dtype=np.uint8)
    as_bytes = packed.view(np.uint8)
    return np.unpackbits(as_bytes, axis=1, bitorder="little")[:, :n]


# -- numba kernels -----------------------------------------------------------

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)
_S1 = np.uint64(1)
_S2 = np.uint64(2)
_S4 = np.uint64(4)
_S56 = np.uint64(56)

if HAVE_NUMBA:

    @njit(cache=True)
    def _spectrum_gf2_jit(rows, nbits, total, collect_limit, capacity):
        k, lanes = rows.shape
        hist = np.zeros(nbits + 1, dtype=np.int64)
        words = np.zeros((capacity, lanes), dtype=np.uint64)
        cur = np.zeros(lanes, dtype=np.uint64)
        hist[0] += 1
        stored = 0
        overflow = False
        for t in range(1, total):
            tt = t
            r = 0
            while tt & 1 == 0:
                tt >>= 1
                r += 1
            w = 0
            for j in range(lanes):
                cur[j] ^= rows[r, j]
                x = cur[j]
                x = x - ((x >> _S1) & _M1)
                x = (x & _M2) + ((x >> _S2) & _M2)
                x = (x + (x >> _S4)) & _M4
                w += np.int64((x * _H01) >> _S56)
            hist[w] += 1
            if 0 < w <= collect_limit:
                if stored < capacity:
                    for j in range(lanes):
                        words[stored, j] = cur[j]
                    stored += 1
                else:
                    overflow = True
        return hist, stored, words, overflow

    @njit(cache=True)
    def _spectrum_modp_jit(rows, p, total, collect_limit, capacity):
        k, n = rows.shape
        hist = np.zeros(n + 1, dtype=np.int64)
        words = np.zeros((capacity, n), dtype=np.uint8)
        cur = np.zeros(n, dtype=np.uint8)
        hist[0] += 1
        stored = 0
        overflow = False
        for t in range(1, total):
            x = t - 1
            r = 0
            while x % p == p - 1:
                x //= p
                r += 1
            w = 0
            for j in range(n):
                v = cur[j] + rows[r, j]
                if v >= p:
                    v -= p
                cur[j] = v
                if v != 0:
                    w += 1
            hist[w] += 1
            if 0 < w <= collect_limit:
                if stored < capacity:
                    for j in range(n):
                        words[stored, j] = cur[j]
                    stored += 1
                else:
                    overflow = True
        return hist, stored, words, overflow

    @njit(cache=True)
    def _isd_round_jit(gen, p, max_weight, inv_mod, out):
        k, n = gen.shape
        u = gen.copy()
        r = 0
        for c in range(n):
            if r == k:
                break
            pr = -1
            for i in range(r, k):
                if u[i, c] != 0:
                    pr = i
                    break
            if pr < 0:
                continue
            if pr != r:
                for j in range(n):
                    tmp = u[r, j]
                    u[r, j] = u[pr, j]
                    u[pr, j] = tmp
            piv = u[r, c]
            if piv != 1:
                s = inv_mod[piv]
                for j in range(n):
                    u[r, j] = (u[r, j] * s) % p
            for i in range(k):
                if i != r and u[i, c] != 0:
                    f = p - u[i, c]
                    for j in range(n):
                        u[i, j] = (u[i, j] + f * u[r, j]) % p
            r += 1
        count = 0
        buf = np.zeros(n, dtype=np.uint8)
        for i in range(k):
            w = 0
            for j in range(n):
                if u[i, j] != 0:
                    w += 1
            if w <= max_weight:
                for j in range(n):
                    out[count, j] = u[i, j]
                count += 1
        for i in range(k):
            for i2 in range(i + 1, k):
                for c in range(1, p):
                    w = 0
                    ok = True
                    for j in range(n):
                        v = (u[i, j] + c * u[i2, j]) % p
                        buf[j] = v
                        if v != 0:
                            w += 1
                            if w > max_weight:
                                ok = False
                                break
                    if ok:
                        for j in range(n):
                            out[count, j] = buf[j]
                        count += 1
        return count


# -- pure numpy implementations ----------------------------------------------

_SUFFIX_TARGET = 1 << 14


def spectrum_gf2_numpy(rows: np.ndarray, collect_limit: int, capacity: int):
    """Spectrum over F_2 by suffix tabling + Gray-coded prefix sweep."""
    k, n = rows.shape
    packed = pack_bits(rows)
    split = 0
    while split < k and (1 << (split + 1)) <= _SUFFIX_TARGET:
        split += 1
    k_hi = k - split
    suffix = np.zeros((1, packed.shape[1]), dtype=np.uint64)
    for i in range(split):
        suffix = np.concatenate([suffix, suffix ^ packed[k_hi + i]])
    hist = np.zeros(n + 1, dtype=np.int64)
    chunks = []
    stored = 0
    overflow = False
    cur = np.zeros(packed.shape[1], dtype=np.uint64)
    for t in range(1 << k_hi):
        if t:
            cur = cur ^ packed[(t & -t).bit_length() - 1]
        block = suffix ^ cur
        weights = np.bitwise_count(block).sum(axis=1, dtype=np.int64)
        hist += np.bincount(weights, minlength=n + 1)
        mask = (weights > 0) & (weights <= collect_limit)
        if mask.any():
            sel = block[mask]
            room = capacity - stored
            if sel.shape[0] > room:
                overflow = True
                sel = sel[:room]
            if sel.shape[0]:
                chunks.append(sel)
                stored += sel.shape[0]
    words = unpack_bits(np.vstack(chunks) if chunks else np.zeros((0, packed.shape[1]), np.uint64), n)
    return hist, words, overflow


def spectrum_modp_numpy(rows: np.ndarray, p: int, collect_limit: int, capacity: int):
    """Spectrum over odd F_p by suffix tabling + Gray-coded prefix sweep."""
    k, n = rows.shape
    split = 0
    while split < k and p ** (split + 1) <= _SUFFIX_TARGET:
        split += 1
    k_hi = k - split
    suffix = np.zeros((1, n), dtype=np.uint8)
    for i in range(split):
        row = rows[k_hi + i].astype(np.int16)
        suffix = np.vstack([((suffix.astype(np.int16) + a * row) % p) for a in range(p)]).astype(
            np.uint8
        )
    hist = np.zeros(n + 1, dtype=np.int64)
    chunks = []
    stored = 0
    overflow = False
    cur = np.zeros(n, dtype=np.uint8)
    for t in range(p**k_hi):
        if t:
            x = t - 1
            r = 0
            while x % p == p - 1:
                x //= p
                r += 1
            cur = cur + rows[r]
            cur = np.where(cur >= p, cur - p, cur).astype(np.uint8)
        block = cur[None, :] + suffix
        block = np.where(block >= p, block - p, block)
        weights = np.count_nonzero(block, axis=1)
        hist += np.bincount(weights, minlength=n + 1)
        mask = (weights > 0) & (weights <= collect_limit)
        if mask.any():
            sel = block[mask].astype(np.uint8)
            room = capacity - stored
            if sel.shape[0] > room:
                overflow = True
                sel = sel[:room]
            if sel.shape[0]:
                chunks.append(sel)
                stored += sel.shape[0]
    words = np.vstack(chunks).astype(np.uint8) if chunks else np.zeros((0, n), np.uint8)
    return hist, words, overflow


def isd_round_numpy(gen: np.ndarray, p: int, max_weight: int, inv_mod: np.ndarray):
    """One Lee-Brickell round on an already column-permuted generator."""
    k, n = gen.shape
    u = gen.astype(np.int64)
    r = 0
    for c in range(n):
        if r == k:
            break
        nz = np.nonzero(u[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            u[[r, pr]] = u[[pr, r]]
        piv = int(u[r, c])
        if piv != 1:
            u[r] = (u[r] * int(inv_mod[piv])) % p
        col = u[:, c].copy()
        col[r] = 0
        u = (u - col[:, None] * u[r][None, :]) % p
        r += 1
    found = [u[np.count_nonzero(u, axis=1) <= max_weight]]
    i_idx, j_idx = np.triu_indices(k, 1)
    for c in range(1, p):
        combos = (u[i_idx] + c * u[j_idx]) % p
        weights = np.count_nonzero(combos, axis=1)
        found.append(combos[weights <= max_weight])
    return np.vstack(found).astype(np.uint8)


# -- numba-dispatching wrappers ----------------------------------------------


def spectrum_gf2_numba(rows: np.ndarray, collect_limit: int, capacity: int):
    if not HAVE_NUMBA:
        raise RuntimeError("numba is not available")
    n = rows.shape[1]
    total = 1 << rows.shape[0]
    hist, stored, words, overflow = _spectrum_gf2_jit(
        pack_bits(rows), n, total, collect_limit, capacity
    )
    return hist, unpack_bits(words[:stored], n), overflow


def spectrum_modp_numba(rows: np.ndarray, p: int, collect_limit: int, capacity: int):
    if not HAVE_NUMBA:
        raise RuntimeError("numba is not available")
    total = p ** rows.shape[0]
    hist, stored, words, overflow = _spectrum_modp_jit(
        np.ascontiguousarray(rows), p, total, collect_limit, capacity
    )
    return hist, words[:stored].copy(), overflow


def isd_round_numba(gen: np.ndarray, p: int, max_weight: int, inv_mod: np.ndarray):
    if not HAVE_NUMBA:
        raise RuntimeError("numba is not available")
    k, n = gen.shape
    cap = k + (p - 1) * (k * (k - 1) // 2)
    out = np.zeros((cap, n), dtype=np.uint8)
    count = _isd_round_jit(np.ascontiguousarray(gen), p, max_weight, inv_mod, out)
    return out[:count].copy()


def spectrum(rows: np.ndarray, p: int, collect_limit: int, capacity: int):
    """Dispatching full-spectrum enumeration.

    Returns (hist, collected words with weight in [1, collect_limit],
    overflow flag).  The word order is implementation-defined; callers that
    need determinism must sort.
    """
    if USE_NUMBA:
        if p == 2:
            return spectrum_gf2_numba(rows, collect_limit, capacity)
        return spectrum_modp_numba(rows, p, collect_limit, capacity)
    if p == 2:
        return spectrum_gf2_numpy(rows, collect_limit, capacity)
    return spectrum_modp_numpy(rows, p, collect_limit, capacity)


def isd_round(gen_permuted: np.ndarray, p: int, max_weight: int, inv_mod: np.ndarray):
    """Dispatching Lee-Brickell round; words come back in permuted columns."""
    if USE_NUMBA:
        return isd_round_numba(gen_permuted, p, max_weight, inv_mod)
    return isd_round_numpy(gen_permuted, p, max_weight, inv_mod)
