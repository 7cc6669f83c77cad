"""Operator calculus on the exterior algebra Lambda((R^m)^*).

Basis vectors are blades in the sorted-subset convention, indexed by
bitmask exactly as in :mod:`pinindex.clifford`. Under the identification
c(R^m) = Lambda((R^m)^*) sending a blade to the same blade, ``clifford_op(e)``
is left Clifford multiplication by ``e`` and ``tilde_op(e)`` is right
multiplication.

Sign convention for tau
-----------------------
``tau`` is the grading of the spinor factor, transported to Lambda as
``kappa * L(s_m)`` where ``L(s_m) = c(e_1)...c(e_m)`` is left multiplication
by the volume element and ``kappa`` normalizes ``tau**2 = 1``:

====================  ===========  =========  ==============================
m mod 4               L(s_m)^2     kappa      tau on the blade 1
====================  ===========  =========  ==============================
0                     +1           1          tau(1) = s_m (real)
2                     -1           -i         tau(1) = -i s_m (imaginary)
====================  ===========  =========  ==============================

``tau_star`` is built independently as ``kappa * R(s_m)``, right
multiplication by the volume element, so ``tau_star == sigma @ tau`` is a
genuine check. For m = 2 (mod 4) the Dirac-type operators below carry the
factor ``i``; :class:`GaussianSection` keeps track of that phase exactly.
"""

from __future__ import annotations

from random import Random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import lcm
from typing import Mapping, Sequence

import numpy as np
import scipy.sparse as sp

from ._exact import ExactMatrix, _as_fraction, exact_nullspace
from ._kernels import exterior_tables

__all__ = [
    "GaussianSection",
    "OperatorMatrix",
    "OscillatorKernel",
    "StructureOps",
    "apply_D",
    "apply_DV",
    "apply_V",
    "clifford_exterior_iso",
    "clifford_op",
    "hat_op",
    "hat_sum",
    "harmonic_oscillator",
    "oscillator_kernel",
    "s_operator",
    "s_operator_closed_form",
    "s_spectrum",
    "structure_ops",
    "tau",
    "tau_star",
    "tilde_op",
]

MAX_M = 12
MAX_KERNEL_SIZE = 4096


class OperatorMatrix(ExactMatrix):
    """An exact 2^m x 2^m operator on Lambda((R^m)^*)."""

    __slots__ = ()

    def __init__(self, num, den: int = 1, phase: int = 0):
        super().__init__(num, den, phase)
        rows, cols = self.shape
        if rows != cols or rows & (rows - 1) or rows < 2:
            raise ValueError(f"operator must be 2^m x 2^m, got {self.shape}")

    @property
    def m(self) -> int:
        return self.shape[0].bit_length() - 1


def _check_m(m: int) -> int:
    if m < 2 or m % 2:
        raise ValueError(f"m must be a positive even integer, got {m}")
    if m > MAX_M:
        raise ValueError(f"m={m} exceeds the size guard m <= {MAX_M}")
    return m


@lru_cache(maxsize=None)
def _wedge_contr(m: int, i: int) -> tuple[OperatorMatrix, OperatorMatrix]:
    wt, ws, ct, cs = exterior_tables(m, i - 1)
    size = 1 << m
    return OperatorMatrix.monomial(wt, ws, size), OperatorMatrix.monomial(ct, cs, size)


def wedge_op(m: int, i: int) -> OperatorMatrix:
    """Exterior multiplication by e_i^* (i is 1-based)."""
    return _wedge_contr(m, i)[0]


def contraction_op(m: int, i: int) -> OperatorMatrix:
    """Interior multiplication i_{e_i}."""
    return _wedge_contr(m, i)[1]


def _combine(e: Sequence, sign: int) -> OperatorMatrix:
    m = _check_m(len(e))
    out = OperatorMatrix.zeros((1 << m, 1 << m))
    for i, c in enumerate(e, start=1):
        c = _as_fraction(c)
        if c:
            w, ctr = _wedge_contr(m, i)
            out = out + (w + ctr if sign > 0 else w - ctr).scale(c)
    return out


def clifford_op(e: Sequence) -> OperatorMatrix:
    """c(e) = e^* wedge - i_e."""
    return _combine(e, -1)


def hat_op(e: Sequence) -> OperatorMatrix:
    """c^(e) = e^* wedge + i_e."""
    return _combine(e, +1)


def _unit(m: int, i: int) -> list[int]:
    v = [0] * m
    v[i - 1] = 1
    return v


@lru_cache(maxsize=None)
def _basis_ops(m: int):
    c = tuple(clifford_op(_unit(m, i)) for i in range(1, m + 1))
    h = tuple(hat_op(_unit(m, i)) for i in range(1, m + 1))
    return c, h


@lru_cache(maxsize=None)
def sigma(m: int) -> OperatorMatrix:
    """Parity grading: (-1)^degree."""
    _check_m(m)
    return OperatorMatrix.diag([(-1) ** bin(b).count("1") for b in range(1 << m)])


@lru_cache(maxsize=None)
def number_op(m: int) -> OperatorMatrix:
    """N: multiplication by p on Lambda^p."""
    _check_m(m)
    return OperatorMatrix.diag([bin(b).count("1") for b in range(1 << m)])


def tilde_op(e: Sequence) -> OperatorMatrix:
    """c~(e) = c^(e) sigma, right Clifford multiplication by e."""
    return hat_op(e) @ sigma(len(e))


def _normalized(op: OperatorMatrix) -> OperatorMatrix:
    """kappa * op with kappa in {1, -i} so that the result squares to +1."""
    size = op.shape[0]
    sq = op @ op
    if sq == OperatorMatrix.identity(size):
        return op
    if sq == -OperatorMatrix.identity(size):
        return (-op).times_i()
    raise RuntimeError("volume operator does not square to +-1")


@lru_cache(maxsize=None)
def tau(m: int) -> OperatorMatrix:
    """+-1 on F_+- : kappa times left multiplication by s_m."""
    c, _ = _basis_ops(_check_m(m))
    vol = OperatorMatrix.identity(1 << m)
    for ci in c:
        vol = vol @ ci
    return _normalized(vol)


@lru_cache(maxsize=None)
def tau_star(m: int) -> OperatorMatrix:
    """+-1 on F^*_+- : kappa times right multiplication by s_m."""
    _check_m(m)
    right = [tilde_op(_unit(m, i)) for i in range(1, m + 1)]
    vol = OperatorMatrix.identity(1 << m)
    # x e_1 ... e_m: e_1 acts first
    for r in right:
        vol = r @ vol
    return _normalized(vol)


@dataclass(frozen=True, eq=False)
class StructureOps:
    sigma: OperatorMatrix
    tau: OperatorMatrix
    tau_star: OperatorMatrix
    number: OperatorMatrix


def structure_ops(m: int) -> StructureOps:
    return StructureOps(sigma(m), tau(m), tau_star(m), number_op(m))


def hat_sum(m: int) -> OperatorMatrix:
    """sum_i c(e_i) c^(e_i), which equals 2N - m."""
    c, h = _basis_ops(_check_m(m))
    out = OperatorMatrix.zeros((1 << m, 1 << m))
    for ci, hi in zip(c, h):
        out = out + ci @ hi
    return out


def s_operator_closed_form(m: int) -> OperatorMatrix:
    """(2N - m) sigma."""
    ident = OperatorMatrix.identity(1 << _check_m(m))
    return (number_op(m).scale(2) - ident.scale(m)) @ sigma(m)


@lru_cache(maxsize=None)
def s_operator(m: int) -> OperatorMatrix:
    """S = sum_i c(e_i) c~(e_i), cross-checked against (2N - m) sigma."""
    c, h = _basis_ops(_check_m(m))
    sg = sigma(m)
    out = OperatorMatrix.zeros((1 << m, 1 << m))
    for ci, hi in zip(c, h):
        out = out + ci @ (hi @ sg)
    if out != s_operator_closed_form(m):
        raise RuntimeError(f"S disagrees with (2N - m) sigma at m={m}")
    return out


def s_spectrum(m: int) -> list[tuple[int, int]]:
    """Eigenvalues of S with multiplicities, read off its exact diagonal."""
    s = s_operator(m)
    if not s.is_diagonal():
        raise RuntimeError("S is expected to be diagonal in the blade basis")
    counts: dict[int, int] = {}
    for v in s.diagonal():
        if v.denominator != 1:
            raise RuntimeError("non-integral eigenvalue of S")
        counts[int(v)] = counts.get(int(v), 0) + 1
    return sorted(counts.items())


def lowest_eigenspace(m: int) -> list[int]:
    """Blades spanning the eigenspace of the smallest eigenvalue of S."""
    diag = s_operator(m).diagonal()
    low = min(diag)
    return [b for b, v in enumerate(diag) if v == low]


def clifford_exterior_iso(m: int) -> OperatorMatrix:
    """Matrix of x -> (left action of x) applied to 1, over Clifford blades x.

    Column ``b`` is c(e_{i1}) ... c(e_{ik}) 1 for the blade b = {i1 < ... < ik}.
    Raises if the map is singular or mixes degrees.
    """
    if m > 10:
        raise ValueError("clifford_exterior_iso is limited to m <= 10")
    c, _ = _basis_ops(_check_m(m))
    size = 1 << m
    one = OperatorMatrix.monomial([0] * size, [1] + [0] * (size - 1), size)  # projects onto blade 1
    rows, cols, vals = [], [], []
    for b in range(size):
        op = OperatorMatrix.identity(size)
        for i in range(m):
            if b >> i & 1:
                op = op @ c[i]
        image = op @ one
        for r, v in image.column(0):
            if bin(r).count("1") != bin(b).count("1"):
                raise RuntimeError("Clifford/exterior correspondence is not grading preserving")
            rows.append(r)
            cols.append(b)
            vals.append(v)
    den = lcm(*(v.denominator for v in vals))
    data = np.array([int(v * den) for v in vals], dtype=np.int64)
    iso = OperatorMatrix(sp.csr_array((data, (rows, cols)), shape=(size, size)), den)
    if iso.rank() != size:
        raise RuntimeError("Clifford/exterior correspondence is singular")
    return iso


# -- Gaussian-weighted polynomial sections -------------------------------------

Key = tuple[tuple[int, ...], int]


class GaussianSection:
    """sum coeff * Z^alpha exp(-|Z|^2/2) (x) blade, times i**phase.

    The Gaussian factor is implicit; derivatives act through the rule
    d/dZ_i (p beta) = (d_i p - Z_i p) beta.
    """

    __slots__ = ("m", "_terms", "phase")

    def __init__(self, m: int, terms: Mapping[Key, object] | None = None, phase: int = 0):
        self.m = _check_m(m)
        phase %= 4
        clean: dict[Key, Fraction] = {}
        for (alpha, blade), c in (terms or {}).items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != m or min(alpha, default=0) < 0:
                raise ValueError(f"bad multi-index {alpha} for m={m}")
            if not 0 <= blade < 1 << m:
                raise ValueError(f"bad blade {blade}")
            c = _as_fraction(c)
            if phase >= 2:
                c = -c
            clean[(alpha, blade)] = clean.get((alpha, blade), Fraction(0)) + c
        self._terms = {k: v for k, v in clean.items() if v != 0}
        self.phase = phase % 2 if self._terms else 0

    @classmethod
    def beta(cls, m: int) -> "GaussianSection":
        """exp(-|Z|^2/2) (x) 1."""
        return cls(m, {((0,) * m, 0): 1})

    @classmethod
    def random(cls, m: int, max_degree: int, rng: Random, nterms: int = 6,
               max_num: int = 9, max_den: int = 6) -> "GaussianSection":
        terms = {}
        for _ in range(nterms):
            deg = rng.randint(0, max_degree)
            alpha = [0] * m
            for _ in range(deg):
                alpha[rng.randrange(m)] += 1
            blade = rng.randrange(1 << m)
            terms[(tuple(alpha), blade)] = Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))
        return cls(m, terms)

    @property
    def terms(self) -> dict[Key, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other):
        if not isinstance(other, GaussianSection):
            return NotImplemented
        if other.m != self.m:
            raise ValueError("dimension mismatch")
        if self._terms and other._terms and self.phase != other.phase:
            raise ValueError("cannot add real and imaginary sections")
        phase = self.phase if self._terms else other.phase
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return GaussianSection(self.m, out, phase)

    def __neg__(self):
        return GaussianSection(self.m, {k: -v for k, v in self._terms.items()}, self.phase)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "GaussianSection":
        c = _as_fraction(c)
        return GaussianSection(self.m, {k: c * v for k, v in self._terms.items()}, self.phase)

    def __eq__(self, other):
        if not isinstance(other, GaussianSection):
            return NotImplemented
        return self.m == other.m and self.phase == other.phase and self._terms == other._terms

    __hash__ = None

    def max_degree(self) -> int:
        return max((sum(a) for a, _ in self._terms), default=0)

    def __repr__(self):
        pre = "i*" if self.phase else ""
        return f"GaussianSection(m={self.m}, {pre}{len(self._terms)} terms)"


@lru_cache(maxsize=None)
def _dirac_data(m: int):
    """Columns of c(e_i) tau^* and tau^* c~(e_i) for every blade, plus the phase."""
    c, _ = _basis_ops(m)
    ts = tau_star(m)
    a_ops = [ci @ ts for ci in c]
    b_ops = [ts @ tilde_op(_unit(m, i)) for i in range(1, m + 1)]
    phase = ts.phase
    size = 1 << m
    a_cols = [[op.column(b) for b in range(size)] for op in a_ops]
    b_cols = [[op.column(b) for b in range(size)] for op in b_ops]
    return phase, a_cols, b_cols


def _accumulate(out: dict, key, value):
    out[key] = out.get(key, Fraction(0)) + value


def apply_D(s: GaussianSection) -> GaussianSection:
    """D = sum_i (c(e_i) tau^*) d/dZ_i, acting through the Gaussian factor."""
    m = s.m
    phase, a_cols, _ = _dirac_data(m)
    out: dict[Key, Fraction] = {}
    for (alpha, blade), coeff in s._terms.items():
        for i in range(m):
            # d_i(Z^alpha beta) = alpha_i Z^(alpha - e_i) beta - Z^(alpha + e_i) beta
            derivs = []
            if alpha[i]:
                lower = alpha[:i] + (alpha[i] - 1,) + alpha[i + 1:]
                derivs.append((lower, coeff * alpha[i]))
            upper = alpha[:i] + (alpha[i] + 1,) + alpha[i + 1:]
            derivs.append((upper, -coeff))
            for row, val in a_cols[i][blade]:
                for poly, c in derivs:
                    _accumulate(out, (poly, row), c * val)
    return GaussianSection(m, out, s.phase + phase)


def apply_V(s: GaussianSection) -> GaussianSection:
    """V = tau^* c~(Z) = sum_i Z_i tau^* c^(e_i) sigma."""
    m = s.m
    phase, _, b_cols = _dirac_data(m)
    out: dict[Key, Fraction] = {}
    for (alpha, blade), coeff in s._terms.items():
        for i in range(m):
            upper = alpha[:i] + (alpha[i] + 1,) + alpha[i + 1:]
            for row, val in b_cols[i][blade]:
                _accumulate(out, (upper, row), coeff * val)
    return GaussianSection(m, out, s.phase + phase)


def apply_DV(s: GaussianSection) -> GaussianSection:
    """(D + V) s."""
    return apply_D(s) + apply_V(s)


def harmonic_oscillator(s: GaussianSection) -> GaussianSection:
    """(-Delta + |Z|^2 + S) s.

    On p beta the scalar part is (-Delta p + 2 Z.grad p + m p) beta.
    """
    m = s.m
    smat = s_operator(m)
    out: dict[Key, Fraction] = {}
    for (alpha, blade), coeff in s._terms.items():
        _accumulate(out, (alpha, blade), coeff * (2 * sum(alpha) + m))
        for i in range(m):
            if alpha[i] >= 2:
                lower = alpha[:i] + (alpha[i] - 2,) + alpha[i + 1:]
                _accumulate(out, (lower, blade), -coeff * alpha[i] * (alpha[i] - 1))
        for row, val in smat.column(blade):
            _accumulate(out, (alpha, row), coeff * val)
    return GaussianSection(m, out, s.phase)


@dataclass(frozen=True, eq=False)
class OscillatorKernel:
    m: int
    degree: int
    dimension: int
    basis: tuple[GaussianSection, ...]


def _monomials(m: int, d: int) -> list[tuple[int, ...]]:
    out = [a for a in product(range(d + 1), repeat=m) if sum(a) <= d]
    out.sort(key=lambda a: (sum(a), tuple(-x for x in a)))
    return out


def oscillator_kernel(m: int, d: int) -> OscillatorKernel:
    """Kernel of (D + V)^2 on Gaussian sections with polynomial degree <= d.

    Works with the conjugated operator H = -Delta + 2 Z.grad + m + S on the
    polynomial coefficients, which maps degree <= d into itself.
    """
    _check_m(m)
    if d < 0:
        raise ValueError("degree must be >= 0")
    monos = _monomials(m, d)
    size = len(monos) << m
    if size > MAX_KERNEL_SIZE:
        raise ValueError(f"oscillator space of dimension {size} exceeds guard {MAX_KERNEL_SIZE}")
    index = {(a, b): t for t, (a, b) in enumerate(product(monos, range(1 << m)))}
    rows = [[Fraction(0)] * size for _ in range(size)]
    for (alpha, blade), col in index.items():
        image = harmonic_oscillator(GaussianSection(m, {(alpha, blade): 1}))
        for key, v in image.terms.items():
            rows[index[key]][col] = v
    null = exact_nullspace(rows)
    keys = list(index)
    basis = tuple(GaussianSection(m, {keys[t]: v for t, v in enumerate(vec) if v}) for vec in null)
    return OscillatorKernel(m, d, len(basis), basis)
