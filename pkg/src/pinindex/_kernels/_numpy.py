"""Pure-numpy implementations of the integer kernels.

Every function here has a twin with the same signature in ``_numba.py``.
"""

import numpy as np


def blade_product_signs(a, b):
    """Signs of ``e_A e_B`` for bitmask blades, with ``e_i**2 = -1``.

    Returns an int8 array of shape ``(len(a), len(b))``; the product blade
    itself is always ``a ^ b``.
    """
    a = np.asarray(a, dtype=np.int64)[:, None]
    b = np.asarray(b, dtype=np.int64)[None, :]
    parity = np.bitwise_count(a & b).astype(np.int64)
    nbits = int(max(int(a.max(initial=0)), int(b.max(initial=0)))).bit_length()
    for t in range(nbits):
        has_t = (b >> t) & 1
        parity = parity + has_t * np.bitwise_count(a >> (t + 1))
    return np.where(parity % 2 == 0, 1, -1).astype(np.int8)


def exterior_tables(m, i):
    """Action of ``e_i^* wedge`` and of the contraction ``i_{e_i}`` on basis blades.

    ``i`` is 0-based. Returns ``(wedge_target, wedge_sign, contr_target,
    contr_sign)``; a sign of 0 means the blade is annihilated.
    """
    masks = np.arange(1 << m, dtype=np.int64)
    bit = np.int64(1) << i
    below = np.bitwise_count(masks & (bit - 1)).astype(np.int64)
    sign = np.where(below % 2 == 0, 1, -1).astype(np.int8)
    occupied = (masks & bit) != 0
    wedge_sign = np.where(occupied, 0, sign).astype(np.int8)
    contr_sign = np.where(occupied, sign, 0).astype(np.int8)
    return masks | bit, wedge_sign, masks & ~bit, contr_sign


def binomial_parities(n, jmax):
    """``C(n, j) mod 2`` for ``j = 0..jmax`` by Lucas' theorem."""
    j = np.arange(jmax + 1, dtype=np.int64)
    return ((np.int64(n) & j) == j).astype(np.uint8)


def q_numerators(m, n, k):
    """Numerators of ``m/2^(4k+2) + n/2^(4k+1)`` mod 2, over ``2^(4k+2)``."""
    mod = np.int64(1) << (4 * k + 3)
    m = np.asarray(m, dtype=np.int64)
    n = np.asarray(n, dtype=np.int64)
    return np.mod(np.mod(m, mod) + np.mod(2 * n, mod), mod)


def rank_mod_p(a, p):
    """Rank of an integer matrix over GF(p); ``p`` must be below 2**31."""
    a = np.mod(np.array(a, dtype=np.int64), p)
    rows, cols = a.shape
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(a[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, col]), p - 2, p)
        a[rank] = (a[rank] * inv) % p
        below = a[rank + 1:, col].copy()
        if below.any():
            a[rank + 1:] = (a[rank + 1:] - below[:, None] * a[rank]) % p
        rank += 1
    return rank
