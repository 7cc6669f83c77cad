"""Graded polynomials in Pontryagin classes p_i (degree 4i) and an Euler class e (degree 2).

Also: the A-hat multiplicative sequence, the Pontryagin character of a real
bundle, and pairing functionals <., [B]> given as data.

Text syntax
-----------
A monomial is a product of factors ``e``, ``e^j``, ``p3``, ``p3^j`` joined
by ``*`` or spaces, or ``1``. A polynomial is a signed sum of terms, each an
optional exact rational coefficient followed by a monomial, e.g.
``2 + p1 - 1/3*e^2 + 7/5 p1^2 e``. Floating-point literals are rejected.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Mapping

from ._exact import _as_fraction
from .series import RationalSeries, hyperbolic

__all__ = [
    "GradedPoly",
    "PairingFunctional",
    "UnknownMonomialError",
    "a_hat_polys",
    "a_hat_total",
    "ch_real",
    "format_monomial",
    "monomial_degree",
    "pair",
    "parse_monomial",
    "parse_pairing",
    "parse_poly",
    "parse_rational",
    "top_monomials",
]

MAX_AHAT_INDEX = 8

Monomial = tuple[int, ...]  # (exp of e, exp of p1, exp of p2, ...)


def _norm(mono) -> Monomial:
    mono = tuple(int(x) for x in mono)
    if any(x < 0 for x in mono):
        raise ValueError(f"negative exponent in {mono}")
    while len(mono) > 1 and mono[-1] == 0:
        mono = mono[:-1]
    return mono or (0,)


def monomial_degree(mono: Monomial) -> int:
    return 2 * mono[0] + sum(4 * i * a for i, a in enumerate(mono[1:], start=1))


def format_monomial(mono: Monomial) -> str:
    parts = []
    for i, a in enumerate(mono[1:], start=1):
        if a:
            parts.append(f"p{i}" if a == 1 else f"p{i}^{a}")
    if mono[0]:
        parts.append("e" if mono[0] == 1 else f"e^{mono[0]}")
    return "*".join(parts) or "1"


def _mul_mono(a: Monomial, b: Monomial) -> Monomial:
    n = max(len(a), len(b))
    return _norm([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


class GradedPoly:
    """Polynomial truncated above total degree ``max_degree``."""

    __slots__ = ("terms", "max_degree")

    def __init__(self, terms: Mapping | None = None, max_degree: int = 0):
        if max_degree < 0:
            raise ValueError("max_degree must be >= 0")
        clean: dict[Monomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            mono = _norm(mono)
            if monomial_degree(mono) > max_degree:
                continue
            clean[mono] = clean.get(mono, Fraction(0)) + _as_fraction(c)
        self.terms = {k: v for k, v in clean.items() if v != 0}
        self.max_degree = max_degree

    @classmethod
    def constant(cls, c, max_degree: int) -> "GradedPoly":
        return cls({(0,): c}, max_degree)

    @classmethod
    def p(cls, i: int, max_degree: int) -> "GradedPoly":
        mono = [0] * (i + 1)
        mono[i] = 1
        return cls({tuple(mono): 1}, max_degree)

    @classmethod
    def from_series(cls, s: RationalSeries, max_degree: int) -> "GradedPoly":
        """Series in e as a graded polynomial; needs the series through degree max_degree."""
        if 2 * s.order < max_degree - 1:
            raise ValueError(f"series of order {s.order} does not reach degree {max_degree}")
        return cls({(j,): c for j, c in enumerate(s.coeffs) if 2 * j <= max_degree}, max_degree)

    def _lift(self, other) -> "GradedPoly":
        if isinstance(other, GradedPoly):
            return other
        return GradedPoly.constant(other, self.max_degree)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return GradedPoly(out, min(self.max_degree, other.max_degree))

    __radd__ = __add__

    def __neg__(self):
        return GradedPoly({k: -v for k, v in self.terms.items()}, self.max_degree)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GradedPoly):
            c = _as_fraction(other)
            return GradedPoly({k: c * v for k, v in self.terms.items()}, self.max_degree)
        bound = min(self.max_degree, other.max_degree)
        out: dict[Monomial, Fraction] = {}
        for a, ca in self.terms.items():
            da = monomial_degree(a)
            for b, cb in other.terms.items():
                if da + monomial_degree(b) <= bound:
                    k = _mul_mono(a, b)
                    out[k] = out.get(k, Fraction(0)) + ca * cb
        return GradedPoly(out, bound)

    __rmul__ = __mul__

    def homogeneous(self, degree: int) -> "GradedPoly":
        return GradedPoly({k: v for k, v in self.terms.items() if monomial_degree(k) == degree}, self.max_degree)

    def truncate(self, max_degree: int) -> "GradedPoly":
        return GradedPoly(self.terms, min(max_degree, self.max_degree))

    def substitute(self, p_values=(), e_value=0):
        """Evaluate at p_i = p_values[i-1], e = e_value."""
        total = Fraction(0)
        for mono, c in self.terms.items():
            v = c * _as_fraction(e_value) ** mono[0]
            for i, a in enumerate(mono[1:], start=1):
                if a:
                    v *= _as_fraction(p_values[i - 1] if i <= len(p_values) else 0) ** a
            total += v
        return total

    def exp(self) -> "GradedPoly":
        """exp of a polynomial with no constant term."""
        if self.terms.get((0,), 0):
            raise ValueError("exp needs zero constant term")
        lowest = min((monomial_degree(k) for k in self.terms), default=None)
        out = GradedPoly.constant(1, self.max_degree)
        if lowest is None:
            return out
        power = GradedPoly.constant(1, self.max_degree)
        for n in range(1, self.max_degree // lowest + 1):
            power = power * self
            out = out + power * Fraction(1, factorial(n))
        return out

    def __eq__(self, other):
        if not isinstance(other, GradedPoly):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __str__(self):
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda kv: (monomial_degree(kv[0]), kv[0][::-1]))
        out = []
        for mono, c in items:
            body = format_monomial(mono)
            if body == "1":
                term = str(abs(c))
            elif abs(c) == 1:
                term = body
            else:
                term = f"{abs(c)}*{body}"
            out.append(("- " if c < 0 else "+ ") + term)
        s = " ".join(out)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self):
        return f"GradedPoly({self}; deg <= {self.max_degree})"


def top_monomials(degree: int) -> list[Monomial]:
    """All monomials in e and the p_i of exactly the given degree."""
    if degree % 2:
        return []
    out = []

    def rec(i: int, remaining: int, acc: list[int]):
        if i == 0:
            out.append(_norm([remaining // 2] + acc))
            return
        for a in range(remaining // (4 * i) + 1):
            rec(i - 1, remaining - 4 * i * a, [a] + acc)

    rec(degree // 4, degree, [])
    return sorted(out)


# -- Newton's identities -----------------------------------------------------

def _power_sums(max_k: int, max_degree: int, max_p: int | None = None) -> list[GradedPoly]:
    """s_k = sum_j z_j^k in terms of p_i = e_i(z), for k = 1..max_k.

    p_i with i > max_p are treated as zero.
    """
    def p(i):
        if max_p is not None and i > max_p:
            return GradedPoly({}, max_degree)
        return GradedPoly.p(i, max_degree)

    s: list[GradedPoly] = [GradedPoly({}, max_degree)]
    for k in range(1, max_k + 1):
        acc = p(k) * ((-1) ** (k - 1) * k)
        for i in range(1, k):
            acc = acc + p(i) * s[k - i] * (-1) ** (i - 1)
        s.append(acc)
    return s


@lru_cache(maxsize=None)
def _ahat_cached(max_degree: int) -> GradedPoly:
    max_k = max_degree // 4
    # (x/2)/sinh(x/2) as a series in z = x^2
    xs = hyperbolic("x/sinh(x)", Fraction(1, 2), 2 * max_k + 1)
    f = RationalSeries([xs[2 * j] for j in range(max_k + 1)])
    log_f = f.log()
    s = _power_sums(max_k, max_degree)
    exponent = GradedPoly({}, max_degree)
    for k in range(1, max_k + 1):
        exponent = exponent + s[k] * log_f[k]
    return exponent.exp()


def a_hat_total(max_degree: int) -> GradedPoly:
    """A-hat class through the given degree, generated by (x/2)/sinh(x/2)."""
    if max_degree // 4 > MAX_AHAT_INDEX:
        raise ValueError(f"A-hat is limited to degree {4 * MAX_AHAT_INDEX}")
    return _ahat_cached(max_degree)


def a_hat_polys(max_i: int) -> list[GradedPoly]:
    """[A_0, A_1, ..., A_max_i], A_i homogeneous of degree 4i in p_1..p_i."""
    if not 0 <= max_i <= MAX_AHAT_INDEX:
        raise ValueError(f"max_i must be in 0..{MAX_AHAT_INDEX}")
    total = a_hat_total(4 * max_i)
    return [total.homogeneous(4 * i) for i in range(max_i + 1)]


def ch_real(rank: int, max_degree: int) -> GradedPoly:
    """ch(E_C) of a real rank-r bundle in its Pontryagin classes.

    With formal roots +-x_j, ch(E_C) = r + sum_j (e^{x_j} + e^{-x_j} - 2)
    = r + sum_k 2 s_k(x^2) / (2k)!. Classes p_i with 2i > r vanish.
    """
    if rank < 0:
        raise ValueError("rank must be >= 0")
    max_k = max_degree // 4
    s = _power_sums(max_k, max_degree, max_p=rank // 2)
    out = GradedPoly.constant(rank, max_degree)
    for k in range(1, max_k + 1):
        out = out + s[k] * Fraction(2, factorial(2 * k))
    return out


# -- pairing ---------------------------------------------------------------

class UnknownMonomialError(KeyError, ValueError):
    """A top-degree monomial has no value in the pairing data."""


class PairingFunctional:
    """Values of <monomial, [B]> on top-degree monomials, dim = dim B."""

    __slots__ = ("dim", "values")

    def __init__(self, dim: int, values: Mapping | None = None):
        if dim < 0 or dim % 2:
            raise ValueError("dimension tag must be a non-negative even integer")
        self.dim = dim
        clean: dict[Monomial, Fraction] = {}
        for mono, v in (values or {}).items():
            if isinstance(mono, str):
                mono = parse_monomial(mono)
            mono = _norm(mono)
            if monomial_degree(mono) != dim:
                raise ValueError(f"monomial {format_monomial(mono)} has degree {monomial_degree(mono)}, "
                                 f"not the top degree {dim}")
            clean[mono] = _as_fraction(v)
        self.values = clean

    def with_value(self, mono, v) -> "PairingFunctional":
        vals = dict(self.values)
        vals[_norm(mono) if not isinstance(mono, str) else parse_monomial(mono)] = v
        return PairingFunctional(self.dim, vals)

    def to_text(self) -> str:
        lines = [f"dim = {self.dim}"]
        for mono in sorted(self.values):
            lines.append(f"{format_monomial(mono)} = {self.values[mono]}")
        return "\n".join(lines) + "\n"

    def __eq__(self, other):
        if not isinstance(other, PairingFunctional):
            return NotImplemented
        return self.dim == other.dim and self.values == other.values

    __hash__ = None


def pair(x: GradedPoly, f: PairingFunctional, allow_missing: bool = False) -> Fraction:
    """Linear evaluation of the degree-dim part of x; other degrees pair to 0."""
    if x.max_degree < f.dim:
        raise ValueError(f"polynomial known only through degree {x.max_degree} < dim {f.dim}")
    total = Fraction(0)
    for mono, c in x.homogeneous(f.dim).terms.items():
        if mono not in f.values:
            if allow_missing:
                continue
            raise UnknownMonomialError(f"no pairing value for {format_monomial(mono)}")
        total += c * f.values[mono]
    return total


# -- parsing ---------------------------------------------------------------

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")
_FACTOR = re.compile(r"^(e|p(\d+))(\^(\d+))?$")


def parse_rational(text: str) -> Fraction:
    t = text.strip()
    if not _RATIONAL.match(t):
        raise ValueError(f"not an exact rational literal: {text!r}")
    v = Fraction(t)
    return v


def parse_monomial(text: str) -> Monomial:
    t = text.strip()
    if t == "1":
        return (0,)
    exps: dict[int, int] = {}
    for tok in re.split(r"[\s*]+", t):
        if not tok:
            continue
        m = _FACTOR.match(tok)
        if not m:
            raise ValueError(f"bad monomial factor {tok!r} in {text!r}")
        slot = 0 if m.group(1) == "e" else int(m.group(2))
        if m.group(2) is not None and slot == 0:
            raise ValueError("Pontryagin classes are numbered from p1")
        exps[slot] = exps.get(slot, 0) + int(m.group(4) or 1)
    if not exps:
        raise ValueError(f"empty monomial {text!r}")
    mono = [0] * (max(exps) + 1)
    for slot, a in exps.items():
        mono[slot] = a
    return _norm(mono)


_TERM = re.compile(r"^(?P<coef>\d+(/\d+)?)?\s*\*?\s*(?P<mono>.*)$")


def parse_poly(text: str, max_degree: int) -> GradedPoly:
    """Parse ``2 + p1 - 1/3*e^2``-style text; floats are rejected."""
    if re.search(r"\d\.\d|\.\d|\d\.", text):
        raise ValueError(f"floating-point literal in {text!r}; use exact rationals")
    body = text.strip()
    if not body:
        raise ValueError("empty polynomial")
    pieces = re.split(r"(?<![/^])\s*([+-])\s*", body)
    if pieces[0] == "":
        pieces = pieces[1:]
    else:
        pieces = ["+"] + pieces
    terms: dict[Monomial, Fraction] = {}
    for sign, chunk in zip(pieces[::2], pieces[1::2]):
        chunk = chunk.strip()
        m = _TERM.match(chunk)
        if not chunk or not m:
            raise ValueError(f"bad term {chunk!r} in {text!r}")
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        mono_text = m.group("mono").strip()
        mono = parse_monomial(mono_text) if mono_text else (0,)
        if sign == "-":
            coef = -coef
        terms[mono] = terms.get(mono, Fraction(0)) + coef
    return GradedPoly(terms, max_degree)


def parse_pairing(text: str) -> PairingFunctional:
    """Parse ``dim = D`` followed by ``monomial = rational`` lines (# comments)."""
    dim = None
    values: dict[Monomial, Fraction] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'monomial = rational'")
        lhs, rhs = (s.strip() for s in line.split("=", 1))
        if lhs == "dim":
            dim = int(rhs)
            continue
        mono = parse_monomial(lhs)
        if mono in values:
            raise ValueError(f"line {lineno}: duplicate monomial {lhs}")
        try:
            values[mono] = parse_rational(rhs)
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if dim is None:
        raise ValueError("missing 'dim = ...' tag")
    return PairingFunctional(dim, values)
