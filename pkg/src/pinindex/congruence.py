"""Assemble-and-check for the Rokhlin-type congruences a1, a6, a7, a8, a9.

Everything here is mechanical: the characteristic numbers come from
user-supplied pairing functionals on K (dim 8k+4) and B (dim 8k+2), the
index terms from KO classes on RP^{8k+2} (or their dyadic values).

The checks, with q = ind^t and <.> the pairing on B unless marked [K]:

    a1  <A(TK) ch(E_C)>[K]  = q(E) - 1/2 <A(TB) tanh(e/4) ch(i*E_C)>
    a6  <A(TK) ch(T_C K)>[K] = q(TB) + q(N) - 1/2 <A(TB) tanh(e/4) (ch(T_C B) + 2 cosh e)>
    a7  <A(TK) ch(T_C K)>[K] = q(TB) + q(Ro) - 1/2 <A(TB) tanh(e/4) ch(T_C B)>
                               + <A(TB) (2 cosh e - 2 cosh(e/2)) / (2 sinh(e/2))>
    a8  q(N) - q(Ro) = <A(TB) sinh e>
    a9  2 q(N) = 2 q(Ro)

a1, a6, a7, a8 are compared in Q/2Z, a9 in Q/Z. Ro stands for R + o(TB).
The symbols p_i in the pairing data are Pontryagin classes of the tangent
bundle of K resp. B, and e is the Euler class of the normal bundle N, so
ch(N_C) = 2 cosh e. ch(T_C K) and ch(T_C B) are computed from p_i; for a1
the caller writes ch(E_C) and ch(i*E_C) in those same symbols.

Data file format::

    [index]
    k = 0
    E  = 3 1        # KO class m + n(1 - gamma), or a dyadic value such as 7/4
    TB = 2 0
    N  = 2 1
    Ro = 2 0
    [K]
    dim = 4
    p1 = -48
    [B]
    dim = 2
    e = 1/2
    [ch]
    E_K = 3         # ch(E_C) on K (a1 only)
    E_B = 3         # ch(i*E_C) on B (a1 only)
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .charclasses import (
    GradedPoly,
    PairingFunctional,
    a_hat_total,
    ch_real,
    pair,
    parse_monomial,
    parse_poly,
    parse_rational,
    top_monomials,
)
from .ko import DyadicMod2, KOClassRP, ko_order, q_index
from .series import hyperbolic

__all__ = [
    "CHECKS",
    "CongruenceData",
    "CongruenceReport",
    "DataError",
    "congruence_check",
    "parse_congruence_data",
    "perturb_normal_class",
    "synthetic_dataset",
]

CHECKS = ("a1", "a6", "a7", "a8", "a9")
INDEX_NAMES = ("E", "TB", "N", "Ro")
CH_NAMES = ("E_K", "E_B")


class DataError(ValueError):
    """Malformed or inconsistent congruence input."""


def _mod(x: Fraction, n: int) -> Fraction:
    return x - n * (x // n)


@dataclass
class CongruenceData:
    k: int
    K: PairingFunctional | None = None
    B: PairingFunctional | None = None
    index: dict[str, DyadicMod2] = field(default_factory=dict)
    classes: dict[str, KOClassRP] = field(default_factory=dict)
    ch: dict[str, GradedPoly] = field(default_factory=dict)

    def __post_init__(self):
        if self.k < 0:
            raise DataError("k must be >= 0")
        if self.K is not None and self.K.dim != 8 * self.k + 4:
            raise DataError(f"[K] has dim {self.K.dim}, expected {8 * self.k + 4} for k = {self.k}")
        if self.B is not None and self.B.dim != 8 * self.k + 2:
            raise DataError(f"[B] has dim {self.B.dim}, expected {8 * self.k + 2} for k = {self.k}")
        for name, c in self.classes.items():
            if c.k != self.k:
                raise DataError(f"class {name} lives over RP^{8 * c.k + 2}, not RP^{8 * self.k + 2}")
            self.index[name] = q_index(c)
        bound = ko_order(self.k)
        for name, v in self.index.items():
            if bound % v.denominator:
                raise DataError(f"index {name} = {v} has denominator not dividing {bound}")

    def q(self, name: str) -> DyadicMod2:
        try:
            return self.index[name]
        except KeyError:
            raise DataError(f"missing index entry {name}") from None

    def functional(self, which: str) -> PairingFunctional:
        f = getattr(self, which)
        if f is None:
            raise DataError(f"missing [{which}] section")
        return f

    def to_text(self) -> str:
        lines = ["[index]", f"k = {self.k}"]
        for name, v in self.index.items():
            c = self.classes.get(name)
            lines.append(f"{name} = {c.m} {c.n}" if c is not None else f"{name} = {v}")
        for tag in ("K", "B"):
            f = getattr(self, tag)
            if f is not None:
                lines.append(f"[{tag}]")
                lines.extend(f.to_text().splitlines())
        if self.ch:
            lines.append("[ch]")
            lines.extend(f"{name} = {poly}" for name, poly in self.ch.items())
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class CongruenceReport:
    which: str
    k: int
    lhs: Fraction
    rhs: Fraction
    modulus: int
    residue: Fraction
    passed: bool

    def as_dict(self) -> dict:
        return {
            "which": self.which,
            "k": self.k,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "modulus": self.modulus,
            "residue": str(self.residue),
            "passed": self.passed,
        }


# -- assembly ----------------------------------------------------------------

def _series_poly(name: str, scale, degree: int) -> GradedPoly:
    return GradedPoly.from_series(hyperbolic(name, scale, max(degree // 2 + 1, 1)), degree)


def _tanh_quarter(degree: int) -> GradedPoly:
    return _series_poly("tanh", Fraction(1, 4), degree)


def _cosh_e(degree: int) -> GradedPoly:
    return _series_poly("cosh", 1, degree)


def _normal_correction(degree: int) -> GradedPoly:
    """(2 cosh e - 2 cosh(e/2)) / (2 sinh(e/2)), an odd series."""
    d = degree // 2 + 2
    num = hyperbolic("cosh", 1, d) - hyperbolic("cosh", Fraction(1, 2), d)
    return GradedPoly.from_series(num / hyperbolic("sinh", Fraction(1, 2), d), degree)


def _k_number(data: CongruenceData, ch: GradedPoly) -> Fraction:
    f = data.functional("K")
    return pair(a_hat_total(f.dim) * ch, f)


def _b_number(data: CongruenceData, x: GradedPoly) -> Fraction:
    f = data.functional("B")
    return pair(a_hat_total(f.dim) * x, f)


def _ch_user(data: CongruenceData, name: str) -> GradedPoly:
    try:
        return data.ch[name]
    except KeyError:
        raise DataError(f"missing ch entry {name}") from None


def _sides(which: str, data: CongruenceData) -> tuple[Fraction, Fraction]:
    dk, db = 8 * data.k + 4, 8 * data.k + 2
    if which == "a1":
        lhs = _k_number(data, _ch_user(data, "E_K"))
        b = _b_number(data, _tanh_quarter(db) * _ch_user(data, "E_B"))
        return lhs, data.q("E").value - b / 2
    if which in ("a6", "a7"):
        lhs = _k_number(data, ch_real(dk, dk))
        ch_tb = ch_real(db, db)
        if which == "a6":
            b = _b_number(data, _tanh_quarter(db) * (ch_tb + _cosh_e(db) * 2))
            return lhs, (data.q("TB") + data.q("N")).value - b / 2
        b_tanh = _b_number(data, _tanh_quarter(db) * ch_tb)
        b_norm = _b_number(data, _normal_correction(db))
        return lhs, (data.q("TB") + data.q("Ro")).value - b_tanh / 2 + b_norm
    if which == "a8":
        return (data.q("N") - data.q("Ro")).value, _b_number(data, _series_poly("sinh", 1, db))
    if which == "a9":
        return 2 * data.q("N").value, 2 * data.q("Ro").value
    raise DataError(f"unknown congruence {which!r}; expected one of {CHECKS}")


def congruence_check(which: str, data: CongruenceData) -> CongruenceReport:
    lhs, rhs = _sides(which, data)
    modulus = 1 if which == "a9" else 2
    residue = _mod(lhs - rhs, modulus)
    return CongruenceReport(which, data.k, lhs, rhs, modulus, residue, residue == 0)


# -- parsing -----------------------------------------------------------------

def _parse_index_value(k: int, name: str, text: str):
    parts = text.split()
    if len(parts) == 2:
        try:
            return KOClassRP(k, int(parts[0]), int(parts[1]))
        except ValueError:
            raise DataError(f"index {name}: expected two integers 'm n', got {text!r}") from None
    if len(parts) == 1:
        try:
            v = parse_rational(parts[0])
        except ValueError as exc:
            raise DataError(f"index {name}: {exc}") from None
        try:
            return DyadicMod2(v)
        except ValueError:
            raise DataError(f"index {name} = {v} is not dyadic") from None
    raise DataError(f"index {name}: cannot parse {text!r}")


def parse_congruence_data(text: str) -> CongruenceData:
    sections: dict[str, list[tuple[int, str, str]]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip()
            if current not in ("index", "K", "B", "ch"):
                raise DataError(f"line {lineno}: unknown section [{current}]")
            if current in sections:
                raise DataError(f"line {lineno}: duplicate section [{current}]")
            sections[current] = []
            continue
        if current is None:
            raise DataError(f"line {lineno}: entry outside any section")
        if "=" not in line:
            raise DataError(f"line {lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        sections[current].append((lineno, key, value))

    index_entries = dict((key, (lineno, value)) for lineno, key, value in sections.get("index", []))
    if "k" not in index_entries:
        raise DataError("missing 'k = ...' in [index]")
    try:
        k = int(index_entries.pop("k")[1])
    except ValueError:
        raise DataError("k must be an integer") from None

    index: dict[str, DyadicMod2] = {}
    classes: dict[str, KOClassRP] = {}
    for name, (lineno, value) in index_entries.items():
        if name not in INDEX_NAMES:
            raise DataError(f"line {lineno}: unknown index entry {name}; expected one of {INDEX_NAMES}")
        v = _parse_index_value(k, name, value)
        if isinstance(v, KOClassRP):
            classes[name] = v
        else:
            index[name] = v

    functionals = {}
    for tag in ("K", "B"):
        if tag not in sections:
            continue
        dim, values = None, {}
        for lineno, key, value in sections[tag]:
            try:
                if key == "dim":
                    dim = int(value)
                    continue
                mono = parse_monomial(key)
                if mono in values:
                    raise DataError(f"line {lineno}: duplicate monomial {key}")
                values[mono] = parse_rational(value)
            except DataError:
                raise
            except ValueError as exc:
                raise DataError(f"line {lineno}: {exc}") from None
        if dim is None:
            raise DataError(f"[{tag}] lacks a 'dim = ...' tag")
        try:
            functionals[tag] = PairingFunctional(dim, values)
        except ValueError as exc:
            raise DataError(f"[{tag}]: {exc}") from None

    ch = {}
    for lineno, key, value in sections.get("ch", []):
        if key not in CH_NAMES:
            raise DataError(f"line {lineno}: unknown ch entry {key}; expected one of {CH_NAMES}")
        bound = 8 * k + 4 if key == "E_K" else 8 * k + 2
        try:
            ch[key] = parse_poly(value, bound)
        except ValueError as exc:
            raise DataError(f"line {lineno}: {exc}") from None

    return CongruenceData(k, functionals.get("K"), functionals.get("B"), index, classes, ch)


# -- synthetic data ----------------------------------------------------------

def _random_rational(rng: random.Random, span: int = 50, den: int = 12) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def _random_class(rng: random.Random, k: int) -> KOClassRP:
    return KOClassRP(k, rng.randint(-200, 200), rng.randrange(ko_order(k)))


def _solve_k_values(rng: random.Random, dim: int, target: Fraction) -> PairingFunctional:
    """Random [K] values with <A(TK) ch(T_C K), [K]> = target."""
    x = (a_hat_total(dim) * ch_real(dim, dim)).homogeneous(dim)
    monos = top_monomials(dim)
    values = {m: _random_rational(rng) for m in monos}
    pivot = next(m for m in sorted(x.terms, key=lambda m: -abs(x.terms[m])) if m[0] == 0)
    values[pivot] = Fraction(0)
    rest = sum((c * values[m] for m, c in x.terms.items()), Fraction(0))
    values[pivot] = (target - rest) / x.terms[pivot]
    return PairingFunctional(dim, values)


def synthetic_dataset(rng: random.Random, k: int) -> CongruenceData:
    """Data satisfying a6 and a7 exactly, built without using a8.

    All [B] values are random except v = <e^{4k+1}, [B]>. Both right-hand
    sides are affine in v, so two evaluations fix the v that makes them agree
    mod 2; the [K] values are then chosen to hit the common value.
    """
    db, dk = 8 * k + 2, 8 * k + 4
    top_e = (4 * k + 1,)
    b_values = {m: _random_rational(rng) for m in top_monomials(db)}
    classes = {name: _random_class(rng, k) for name in ("TB", "N", "Ro")}
    placeholder_k = PairingFunctional(dk, {m: 0 for m in top_monomials(dk)})

    def rhs_gap(v: Fraction) -> Fraction:
        b_values[top_e] = v
        data = CongruenceData(k, placeholder_k, PairingFunctional(db, b_values), {}, dict(classes))
        return _sides("a6", data)[1] - _sides("a7", data)[1]

    g0, g1 = rhs_gap(Fraction(0)), rhs_gap(Fraction(1))
    slope = g1 - g0
    if slope == 0:
        raise RuntimeError("degenerate slope in synthetic construction")
    v = (2 * rng.randint(-3, 3) - g0) / slope
    b_values[top_e] = v
    b = PairingFunctional(db, b_values)
    probe = CongruenceData(k, placeholder_k, b, {}, dict(classes))
    target = _sides("a7", probe)[1]
    return CongruenceData(k, _solve_k_values(rng, dk, target), b, {}, dict(classes))


def perturb_normal_class(data: CongruenceData) -> CongruenceData:
    """Shift N by 2^{4k}(1 - gamma), which moves q(N) by 1/2."""
    classes = dict(data.classes)
    n = classes["N"]
    classes["N"] = KOClassRP(n.k, n.m, n.n + (1 << (4 * n.k)))
    index = {name: v for name, v in data.index.items() if name not in classes}
    return CongruenceData(data.k, data.K, data.B, index, classes, dict(data.ch))
