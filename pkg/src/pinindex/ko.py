"""KO(RP^{8k+2}) arithmetic and the topological index q_{8k+2}.

A class is written m + n(1 - gamma) with gamma the tautological line bundle;
m is the virtual rank and n is taken in [0, 2^{4k+2}) since 1 - gamma
generates the reduced group, which has that order. The virtual rank pins
down m, so the normalized pair is unique.

For a bundle over a general pin^- manifold B, the caller supplies the class
on RP^{8k+2} obtained by pushing forward along B -> RP^{8k+2} x S^{8m} and
pulling back along RP^{8k+2} x {p}; constructing that class is not done
here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._kernels import q_numerators

__all__ = [
    "DyadicMod2",
    "KOClassRP",
    "eta_prediction",
    "ind_t",
    "ko_from_sum",
    "ko_order",
    "ko_order_general",
    "q_index",
    "q_index_batch",
]


def ko_order(k: int) -> int:
    """Order of the reduced KO group of RP^{8k+2}."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return 1 << (4 * k + 2)


def ko_order_general(n: int) -> int:
    """Order of the reduced KO group of RP^n: 2^phi(n), phi(n) = #{0 < s <= n : s = 0,1,2,4 mod 8}."""
    if n < 1:
        raise ValueError("n must be >= 1")
    phi = sum(1 for s in range(1, n + 1) if s % 8 in (0, 1, 2, 4))
    return 1 << phi


@dataclass(frozen=True)
class KOClassRP:
    k: int
    m: int
    n: int = 0

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("k must be >= 0")
        object.__setattr__(self, "n", self.n % ko_order(self.k))

    def _check(self, other):
        if not isinstance(other, KOClassRP):
            raise TypeError("KOClassRP expected")
        if other.k != self.k:
            raise ValueError(f"classes over RP^{8 * self.k + 2} and RP^{8 * other.k + 2}")

    def __add__(self, other: "KOClassRP") -> "KOClassRP":
        if not isinstance(other, KOClassRP):
            return NotImplemented
        self._check(other)
        return KOClassRP(self.k, self.m + other.m, self.n + other.n)

    def __neg__(self):
        return KOClassRP(self.k, -self.m, -self.n)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c: int):
        return KOClassRP(self.k, c * self.m, c * self.n)

    __rmul__ = __mul__

    def __str__(self):
        return f"{self.m} + {self.n}(1-gamma) in KO(RP^{8 * self.k + 2})"


def ko_from_sum(a: int, b: int, k: int) -> KOClassRP:
    """a trivial lines plus b copies of gamma: a + b gamma = (a + b) - b(1 - gamma)."""
    if a < 0 or b < 0:
        raise ValueError("multiplicities must be >= 0")
    return KOClassRP(k, a + b, -b)


@dataclass(frozen=True)
class DyadicMod2:
    """A dyadic rational modulo 2, represented in [0, 2)."""

    value: Fraction

    def __post_init__(self):
        v = Fraction(self.value)
        d = v.denominator
        if d & (d - 1):
            raise ValueError(f"{v} is not dyadic")
        object.__setattr__(self, "value", v - 2 * (v // 2))

    def __add__(self, other):
        if isinstance(other, DyadicMod2):
            return DyadicMod2(self.value + other.value)
        return DyadicMod2(self.value + Fraction(other))

    __radd__ = __add__

    def __neg__(self):
        return DyadicMod2(-self.value)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c: int):
        if not isinstance(c, int):
            raise TypeError("only integer multiples are well defined mod 2")
        return DyadicMod2(c * self.value)

    __rmul__ = __mul__

    @property
    def denominator(self) -> int:
        return self.value.denominator

    def __str__(self):
        return str(self.value)


def q_index(alpha: KOClassRP) -> DyadicMod2:
    """m / 2^{4k+2} + n / 2^{4k+1} (mod 2)."""
    return DyadicMod2(Fraction(alpha.m, 1 << (4 * alpha.k + 2)) + Fraction(alpha.n, 1 << (4 * alpha.k + 1)))


def q_index_batch(k: int, m, n) -> np.ndarray:
    """Numerators of q over 2^{4k+2} for arrays of (m, n), each in [0, 2^{4k+3})."""
    if not 0 <= k <= 14:
        raise ValueError("batch evaluation supports 0 <= k <= 14")
    return q_numerators(m, n, k)


def ind_t(alpha: KOClassRP) -> DyadicMod2:
    """Topological index of the bundle whose RP-level class is alpha."""
    return q_index(alpha)


def eta_prediction(alpha: KOClassRP) -> DyadicMod2:
    """Predicted reduced eta invariant mod 2 of the twisted Dirac operator on RP^{8k+2}."""
    return q_index(alpha)
