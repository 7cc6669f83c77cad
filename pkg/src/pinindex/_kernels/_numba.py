"""numba-compiled twins of the kernels in ``_numpy.py``."""

import numpy as np
from numba import njit


@njit(cache=True)
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(cache=True)
def _blade_product_signs(a, b):
    out = np.empty((a.shape[0], b.shape[0]), dtype=np.int8)
    for r in range(a.shape[0]):
        x = a[r]
        for c in range(b.shape[0]):
            y = b[c]
            parity = _popcount(x & y)
            t = 0
            yy = y
            while yy:
                if yy & 1:
                    parity += _popcount(x >> (t + 1))
                yy >>= 1
                t += 1
            out[r, c] = 1 if parity % 2 == 0 else -1
    return out


def blade_product_signs(a, b):
    return _blade_product_signs(np.ascontiguousarray(a, dtype=np.int64),
                                np.ascontiguousarray(b, dtype=np.int64))


@njit(cache=True)
def _exterior_tables(m, i):
    size = 1 << m
    bit = np.int64(1) << i
    wt = np.empty(size, dtype=np.int64)
    ws = np.empty(size, dtype=np.int8)
    ct = np.empty(size, dtype=np.int64)
    cs = np.empty(size, dtype=np.int8)
    for mask in range(size):
        s = 1 if _popcount(mask & (bit - 1)) % 2 == 0 else -1
        wt[mask] = mask | bit
        ct[mask] = mask & ~bit
        if mask & bit:
            ws[mask] = 0
            cs[mask] = s
        else:
            ws[mask] = s
            cs[mask] = 0
    return wt, ws, ct, cs


def exterior_tables(m, i):
    return _exterior_tables(np.int64(m), np.int64(i))


@njit(cache=True)
def _binomial_parities(n, jmax):
    out = np.empty(jmax + 1, dtype=np.uint8)
    for j in range(jmax + 1):
        out[j] = 1 if (n & j) == j else 0
    return out


def binomial_parities(n, jmax):
    return _binomial_parities(np.int64(n), np.int64(jmax))


@njit(cache=True)
def _q_numerators(m, n, k):
    mod = np.int64(1) << (4 * k + 3)
    out = np.empty(m.shape[0], dtype=np.int64)
    for t in range(m.shape[0]):
        v = (m[t] % mod + (2 * n[t]) % mod) % mod
        out[t] = v if v >= 0 else v + mod
    return out


def q_numerators(m, n, k):
    m_arr = np.asarray(m, dtype=np.int64)
    n_arr = np.asarray(n, dtype=np.int64)
    shape = np.broadcast(m_arr, n_arr).shape
    m_flat = np.ascontiguousarray(np.broadcast_to(m_arr, shape)).ravel()
    n_flat = np.ascontiguousarray(np.broadcast_to(n_arr, shape)).ravel()
    return _q_numerators(m_flat, n_flat, np.int64(k)).reshape(shape)


@njit(cache=True)
def _rank_mod_p(a, p):
    rows, cols = a.shape
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        piv = -1
        for r in range(rank, rows):
            if a[r, col] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for c in range(cols):
                tmp = a[rank, c]
                a[rank, c] = a[piv, c]
                a[piv, c] = tmp
        # Fermat inverse by square-and-multiply
        base = a[rank, col]
        e = p - 2
        inv = 1
        while e:
            if e & 1:
                inv = (inv * base) % p
            base = (base * base) % p
            e >>= 1
        for c in range(cols):
            a[rank, c] = (a[rank, c] * inv) % p
        for r in range(rank + 1, rows):
            f = a[r, col]
            if f != 0:
                for c in range(cols):
                    a[r, c] = (a[r, c] - f * a[rank, c]) % p
        rank += 1
    return rank


def rank_mod_p(a, p):
    work = np.mod(np.array(a, dtype=np.int64), p)
    return int(_rank_mod_p(work, np.int64(p)))
