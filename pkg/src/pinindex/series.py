"""Truncated power series in one variable with exact rational coefficients.

The variable is the Euler class e throughout. A series of order D stores
c_0..c_D and is known exactly through e^D.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable

from ._exact import _as_fraction

__all__ = [
    "HYPERBOLIC_NAMES",
    "RationalSeries",
    "ch_rank2_complexified",
    "hyperbolic",
    "identity_a45",
    "identity_a45_sides",
    "identity_a8",
    "identity_a8_sides",
]


class RationalSeries:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = [_as_fraction(c) for c in coeffs]
        if order is not None:
            if order < 0:
                raise ValueError("order must be >= 0")
            cs = (cs + [Fraction(0)] * (order + 1))[: order + 1]
        if not cs:
            raise ValueError("a series needs at least the constant coefficient")
        self.coeffs = tuple(cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def variable(cls, order: int, scale=1) -> "RationalSeries":
        return cls([0, scale], order)

    @classmethod
    def constant(cls, c, order: int) -> "RationalSeries":
        return cls([c], order)

    def __getitem__(self, j: int) -> Fraction:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else Fraction(0)

    def truncate(self, order: int) -> "RationalSeries":
        if order > self.order:
            raise ValueError(f"cannot extend a series known to order {self.order} to {order}")
        return RationalSeries(self.coeffs[: order + 1])

    def valuation(self) -> int | None:
        for j, c in enumerate(self.coeffs):
            if c:
                return j
        return None

    def _lift(self, other) -> "RationalSeries":
        if isinstance(other, RationalSeries):
            return other
        return RationalSeries.constant(other, self.order)

    def __add__(self, other):
        other = self._lift(other)
        d = min(self.order, other.order)
        return RationalSeries([self[j] + other[j] for j in range(d + 1)])

    __radd__ = __add__

    def __neg__(self):
        return RationalSeries([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RationalSeries):
            c = _as_fraction(other)
            return RationalSeries([c * x for x in self.coeffs])
        d = min(self.order, other.order)
        out = [Fraction(0)] * (d + 1)
        for i, a in enumerate(self.coeffs[: d + 1]):
            if a:
                for j in range(d + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return RationalSeries(out)

    __rmul__ = __mul__

    def inverse(self) -> "RationalSeries":
        if not self.coeffs[0]:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv0 = 1 / self.coeffs[0]
        out = [inv0]
        for n in range(1, self.order + 1):
            acc = sum((self.coeffs[j] * out[n - j] for j in range(1, n + 1)), Fraction(0))
            out.append(-acc * inv0)
        return RationalSeries(out)

    def shift_down(self, k: int) -> "RationalSeries":
        """Divide by e^k; the first k coefficients must vanish. Loses k orders."""
        if any(self.coeffs[:k]):
            raise ZeroDivisionError(f"series is not divisible by e^{k}")
        if k > self.order:
            raise ValueError("nothing left after division")
        return RationalSeries(self.coeffs[k:])

    def shift_up(self, k: int) -> "RationalSeries":
        """Multiply by e^k, keeping the order."""
        return RationalSeries([Fraction(0)] * k + list(self.coeffs), self.order)

    def __truediv__(self, other):
        """Division, cancelling a common power of e when the divisor vanishes at 0.

        The quotient is exact through order ``min(orders) - v`` where v is the
        valuation of the divisor.
        """
        if not isinstance(other, RationalSeries):
            c = _as_fraction(other)
            return RationalSeries([x / c for x in self.coeffs])
        v = other.valuation()
        if v is None:
            raise ZeroDivisionError("division by the zero series")
        d = min(self.order, other.order)
        num = self.truncate(d).shift_down(v) if v else self.truncate(d)
        den = other.truncate(d).shift_down(v) if v else other.truncate(d)
        return num * den.inverse()

    def rescale(self, s) -> "RationalSeries":
        """f(s e)."""
        s = _as_fraction(s)
        return RationalSeries([c * s ** j for j, c in enumerate(self.coeffs)])

    def derivative(self) -> "RationalSeries":
        return RationalSeries([j * self.coeffs[j] for j in range(1, self.order + 1)] or [0])

    def integral(self) -> "RationalSeries":
        """Antiderivative with zero constant term; gains one order."""
        return RationalSeries([0] + [c / (j + 1) for j, c in enumerate(self.coeffs)])

    def log(self) -> "RationalSeries":
        if self.coeffs[0] != 1:
            raise ValueError("log needs constant term 1")
        if self.order == 0:
            return RationalSeries([0])
        return (self.derivative() / self.truncate(self.order - 1)).integral()

    def exp(self) -> "RationalSeries":
        if self.coeffs[0]:
            raise ValueError("exp needs zero constant term")
        # f' = g' f, solved coefficient by coefficient
        d = self.order
        out = [Fraction(1)] + [Fraction(0)] * d
        for n in range(1, d + 1):
            out[n] = sum((j * self.coeffs[j] * out[n - j] for j in range(1, n + 1)), Fraction(0)) / n
        return RationalSeries(out)

    def is_odd(self) -> bool:
        return all(c == 0 for j, c in enumerate(self.coeffs) if j % 2 == 0)

    def is_even(self) -> bool:
        return all(c == 0 for j, c in enumerate(self.coeffs) if j % 2 == 1)

    def evaluate(self, x):
        """Evaluate the truncated polynomial at x (any numeric type)."""
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + (float(c) if isinstance(x, float) else c)
        return acc

    def __eq__(self, other):
        if not isinstance(other, RationalSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    __hash__ = None

    def __repr__(self):
        terms = []
        for j, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if j == 0 else f"{c}*e" if j == 1 else f"{c}*e^{j}")
        return f"RationalSeries({' + '.join(terms) or '0'}; O(e^{self.order + 1}))"


HYPERBOLIC_NAMES = ("sinh", "cosh", "tanh", "x/sinh(x)")


def _exp_series(scale: Fraction, order: int) -> RationalSeries:
    return RationalSeries([scale ** j / factorial(j) for j in range(order + 1)])


def hyperbolic(name: str, scale, order: int) -> RationalSeries:
    """Taylor series of name(scale * e) through e^order.

    Built from the exponential series: sinh and cosh from exp(x) and its
    series inverse, tanh as their quotient, x/sinh(x) by cancelling the
    common factor of e.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    if name not in HYPERBOLIC_NAMES:
        raise ValueError(f"unknown function {name!r}; expected one of {HYPERBOLIC_NAMES}")
    s = _as_fraction(scale)
    if name == "x/sinh(x)":
        if s == 0:
            return RationalSeries([1], order)
        # x/sinh x = 1 / (sinh(x)/x); one extra order absorbs the shift
        sinh_x = hyperbolic("sinh", 1, order + 1)
        return sinh_x.shift_down(1).inverse().rescale(s)
    e_plus = _exp_series(s, order)
    e_minus = e_plus.inverse()
    if name == "sinh":
        return (e_plus - e_minus) * Fraction(1, 2)
    if name == "cosh":
        return (e_plus + e_minus) * Fraction(1, 2)
    return (e_plus - e_minus) / (e_plus + e_minus)


def ch_rank2_complexified(order: int) -> RationalSeries:
    """ch(N_C) = e^e + e^{-e} = 2 cosh(e) for an oriented 2-plane bundle N with Euler class e."""
    if order < 2:
        raise ValueError("order must be >= 2")
    line = _exp_series(Fraction(1), order)
    return line + line.inverse()


def _guard(order: int):
    if order < 4:
        raise ValueError("truncation order below 4 is too small to be meaningful")


def identity_a45_sides(order: int) -> tuple[RationalSeries, RationalSeries]:
    """Both sides of

        (tanh(e/2) - e/2) / (e tanh(e/2)) + (1/e)((e/2)/sinh(e/2) - 1) = -(1/2) tanh(e/4)
    """
    _guard(order)
    work = order + 4
    e = RationalSeries.variable(work)
    t_half = hyperbolic("tanh", Fraction(1, 2), work)
    first = (t_half - e * Fraction(1, 2)) / (e * t_half)
    second = (hyperbolic("x/sinh(x)", Fraction(1, 2), work) - 1).shift_down(1)
    lhs = (first + second).truncate(order)
    rhs = (hyperbolic("tanh", Fraction(1, 4), order) * Fraction(-1, 2))
    return lhs, rhs


def identity_a45(order: int) -> bool:
    lhs, rhs = identity_a45_sides(order)
    return lhs == rhs


def identity_a8_sides(order: int) -> tuple[RationalSeries, RationalSeries]:
    """Both sides of

        tanh(e/4) cosh(e) + (cosh(e) - cosh(e/2)) / sinh(e/2) = sinh(e)
    """
    _guard(order)
    work = order + 2
    cosh_e = hyperbolic("cosh", 1, work)
    lhs = (hyperbolic("tanh", Fraction(1, 4), work) * cosh_e
           + (cosh_e - hyperbolic("cosh", Fraction(1, 2), work)) / hyperbolic("sinh", Fraction(1, 2), work))
    return lhs.truncate(order), hyperbolic("sinh", 1, order)


def identity_a8(order: int) -> bool:
    lhs, rhs = identity_a8_sides(order)
    return lhs == rhs
