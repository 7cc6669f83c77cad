"""Exact rational matrices and small exact linear-algebra helpers.

An :class:`ExactMatrix` is ``i**phase * num / den`` where ``num`` is a sparse
int64 matrix. Everything the library builds (Clifford generators, exterior
operators) is sparse with tiny entries, so int64 never comes close to
overflowing in practice; products are still guarded and raise
``OverflowError`` rather than wrap around.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from numbers import Rational

import numpy as np
import scipy.sparse as sp

from ._kernels import PRIME, rank_mod_p

_LIMIT = 1 << 62


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"exact rational expected, got {type(x).__name__}")


def _maxabs(a: sp.csr_array) -> int:
    return int(np.abs(a.data).max()) if a.nnz else 0


def _max_row_nnz(a: sp.csr_array) -> int:
    return int(np.diff(a.indptr).max()) if a.nnz else 0


class ExactMatrix:
    """Square-or-rectangular exact matrix ``i**phase * num / den``.

    ``phase`` is 0 for real matrices and 1 for purely imaginary ones; only
    the two "homogeneous" cases are representable, which is all that the
    exterior-algebra operators need.
    """

    __slots__ = ("num", "den", "phase")

    def __init__(self, num, den: int = 1, phase: int = 0):
        a = sp.csr_array(num, dtype=np.int64)
        a.eliminate_zeros()
        den = int(den)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        phase %= 4
        if den < 0:
            a, den = -a, -den
        if phase >= 2:
            a, phase = -a, phase - 2
        if a.nnz == 0:
            den, phase = 1, 0
        else:
            g = den
            for v in np.unique(np.abs(a.data)):
                g = gcd(g, int(v))
                if g == 1:
                    break
            if g > 1:
                a = sp.csr_array((a.data // g, a.indices, a.indptr), shape=a.shape)
                den //= g
        a.sort_indices()
        self.num, self.den, self.phase = a, den, phase

    # -- constructors -------------------------------------------------
    @classmethod
    def identity(cls, size: int):
        return cls(sp.identity(size, dtype=np.int64, format="csr"))

    @classmethod
    def zeros(cls, shape):
        return cls(sp.csr_array(shape, dtype=np.int64))

    @classmethod
    def diag(cls, values):
        fr = [_as_fraction(v) for v in values]
        den = 1
        for f in fr:
            den = den * f.denominator // gcd(den, f.denominator)
        data = np.array([int(f * den) for f in fr], dtype=np.int64)
        return cls(sp.diags_array(data, format="csr", dtype=np.int64), den)

    @classmethod
    def monomial(cls, targets, signs, size: int | None = None):
        """Matrix sending basis vector ``j`` to ``signs[j] * basis[targets[j]]``."""
        targets = np.asarray(targets, dtype=np.int64)
        signs = np.asarray(signs, dtype=np.int64)
        size = len(targets) if size is None else size
        cols = np.arange(len(targets), dtype=np.int64)
        keep = signs != 0
        a = sp.csr_array((signs[keep], (targets[keep], cols[keep])), shape=(size, len(targets)))
        return cls(a)

    @classmethod
    def from_rows(cls, rows):
        fr = [[_as_fraction(x) for x in row] for row in rows]
        den = 1
        for row in fr:
            for f in row:
                den = den * f.denominator // gcd(den, f.denominator)
        data = np.array([[int(f * den) for f in row] for row in fr], dtype=np.int64)
        return cls(data, den)

    # -- basic structure ----------------------------------------------
    @property
    def shape(self):
        return self.num.shape

    @property
    def is_real(self) -> bool:
        return self.phase == 0

    def _new(self, num, den, phase):
        return type(self)(num, den, phase)

    def is_zero(self) -> bool:
        return self.num.nnz == 0

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        if self.den != other.den or self.phase != other.phase:
            return False
        return (self.num != other.num).nnz == 0

    __hash__ = None

    def __repr__(self):
        tag = "i*" if self.phase else ""
        return f"<{type(self).__name__} {self.shape[0]}x{self.shape[1]} {tag}nnz={self.num.nnz}/{self.den}>"

    # -- arithmetic -----------------------------------------------------
    def __neg__(self):
        return self._new(-self.num, self.den, self.phase)

    def _align(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        if self.is_zero() or other.is_zero() or self.phase == other.phase:
            return max(self.phase, other.phase)
        raise ValueError("cannot add a real matrix to an imaginary one")

    def __add__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        phase = self._align(other)
        if (_maxabs(self.num) * other.den + _maxabs(other.num) * self.den) >= _LIMIT:
            raise OverflowError("exact matrix sum exceeds int64 headroom")
        num = self.num * other.den + other.num * self.den
        return self._new(num, self.den * other.den, phase)

    def __sub__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self + (-other)

    def __matmul__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        bound = _maxabs(self.num) * _maxabs(other.num) * max(1, _max_row_nnz(self.num))
        if bound >= _LIMIT:
            raise OverflowError("exact matrix product exceeds int64 headroom")
        return self._new(self.num @ other.num, self.den * other.den, self.phase + other.phase)

    def scale(self, c):
        c = _as_fraction(c)
        if abs(c.numerator) * _maxabs(self.num) >= _LIMIT:
            raise OverflowError("scaled matrix exceeds int64 headroom")
        return self._new(self.num * c.numerator, self.den * c.denominator, self.phase)

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def times_i(self):
        return self._new(self.num, self.den, self.phase + 1)

    def transpose(self):
        return self._new(self.num.T, self.den, self.phase)

    # -- inspection -----------------------------------------------------
    def entry(self, i: int, j: int) -> Fraction:
        """Real entry; imaginary matrices report the coefficient of ``i``."""
        return Fraction(int(self.num[i, j]), self.den)

    def column(self, j: int):
        """Nonzero ``(row, value)`` pairs of column ``j`` (value excludes the phase)."""
        col = self.num[:, [j]].tocoo()
        return [(int(r), Fraction(int(v), self.den)) for r, v in zip(col.coords[0], col.data)]

    def diagonal(self):
        return [Fraction(int(v), self.den) for v in self.num.diagonal()]

    def is_diagonal(self) -> bool:
        coo = self.num.tocoo()
        return bool(np.all(coo.coords[0] == coo.coords[1]))

    def is_identity(self) -> bool:
        return self.shape[0] == self.shape[1] and self == ExactMatrix.identity(self.shape[0])

    def to_fraction_rows(self):
        dense = self.num.toarray()
        return [[Fraction(int(v), self.den) for v in row] for row in dense]

    def rank(self) -> int:
        """Exact rank over the rationals (the phase does not change it)."""
        if self.is_zero():
            return 0
        dense = self.num.toarray()
        r = rank_mod_p(dense, PRIME)
        if r == min(dense.shape):
            # full rank mod p certifies full rank over Q
            return r
        return exact_rank([[int(v) for v in row] for row in dense])


def exact_rank(rows) -> int:
    from sympy import QQ
    from sympy.polys.matrices import DomainMatrix

    dm = DomainMatrix([[QQ(int(v.numerator), int(v.denominator)) if isinstance(v, Fraction) else QQ(int(v))
                        for v in row] for row in rows], (len(rows), len(rows[0]) if rows else 0), QQ)
    return dm.rank()


def exact_nullspace(rows):
    """Basis of the right nullspace of a rational matrix, as lists of Fractions."""
    from sympy import QQ
    from sympy.polys.matrices import DomainMatrix

    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    dm = DomainMatrix([[QQ(_as_fraction(v).numerator, _as_fraction(v).denominator) for v in row]
                       for row in rows], (nrows, ncols), QQ)
    null = dm.nullspace().to_Matrix()
    basis = []
    for r in range(null.rows):
        basis.append([Fraction(int(x.p), int(x.q)) for x in null.row(r)])
    return basis
