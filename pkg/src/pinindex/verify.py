"""Property suites for every module; ``verify-all`` runs them in order.

Each check returns a :class:`CheckResult`. Randomized checks use fixed seeds,
so a run is reproducible.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable

import numpy as np

from . import charclasses, clifford, congruence, exterior, ko, projective, series

__all__ = ["CheckResult", "SUITES", "run_suite", "verify_all"]


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    seconds: float
    detail: str = ""

    def as_dict(self) -> dict:
        return {"suite": self.suite, "name": self.name, "passed": self.passed,
                "seconds": round(self.seconds, 3), "detail": self.detail}


# -- clifford ------------------------------------------------------------------

def check_rep_dims(max_n: int = 12) -> bool:
    for n in range(1, max_n + 1):
        rep = clifford.build_rep(n)
        if rep.dim != clifford.classify(n).irrep_real_dim or not rep.check_relations():
            return False
    return True


def check_quaternionic_dims() -> bool:
    for k in (0, 1):
        t = clifford.classify(8 * k + 3)
        if t.field != "H" or t.irrep_dim != 1 << (4 * k):
            return False
    return True


def check_volume_positive(max_n: int = 11) -> bool:
    for n in range(3, max_n + 1, 4):
        rep = clifford.build_rep(n)
        if rep.volume_matrix() != clifford.ExactMatrix.identity(rep.dim):
            return False
    return True


def check_volume_square(max_n: int = 12) -> bool:
    # s_n^2 = (-1)^{n(n+1)/2} with e_i^2 = -1
    return all(clifford.volume_square_sign(n) == (-1) ** (n * (n + 1) // 2) for n in range(1, max_n + 1))


def _random_unit(rng: random.Random, n: int, small: bool = False):
    # rational points on the sphere by stereographic projection
    while True:
        if small:
            # keeps matrix denominators inside int64 for words of length <= 3
            t = [Fraction(rng.randint(-2, 2)) for _ in range(n - 1)]
        else:
            t = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(n - 1)]
        s = sum(x * x for x in t)
        v = [2 * x / (1 + s) for x in t] + [(s - 1) / (1 + s)]
        if any(v):
            return v


def check_equivariance(seed: int = 0, trials: int = 20) -> bool:
    rng = random.Random(seed)
    for _ in range(trials):
        n = rng.choice([2, 3, 4, 5])
        rep = clifford.build_rep(n)
        w = clifford.PinWord(n, tuple(tuple(_random_unit(rng, n, small=True)) for _ in range(rng.randint(1, 3))))
        e = [Fraction(rng.randint(-4, 4)) for _ in range(n)]
        if not clifford.equivariance_check(w, e, rep):
            return False
    return True


def check_twisted_adjoint_orthogonal(seed: int = 1, trials: int = 40) -> bool:
    rng = random.Random(seed)
    for _ in range(trials):
        n = rng.randint(2, 6)
        w = clifford.PinWord(n, tuple(tuple(_random_unit(rng, n)) for _ in range(rng.randint(1, 4))))
        v = [Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(n)]
        gv = clifford.twisted_adjoint(w, v)
        if sum(x * x for x in gv) != sum(x * x for x in v):
            return False
        # multiplicativity: gamma(w1 w2) = gamma(w1) gamma(w2)
        w2 = clifford.PinWord(n, (tuple(_random_unit(rng, n)),))
        if clifford.twisted_adjoint(w + w2, v) != clifford.twisted_adjoint(w, clifford.twisted_adjoint(w2, v)):
            return False
    return True


def check_span_n8() -> bool:
    return clifford.build_rep(8).span_rank() == 256


# -- exterior ------------------------------------------------------------------

EXTERIOR_MS = (2, 4, 6, 8)


def check_s_operator(ms=EXTERIOR_MS) -> bool:
    for m in ms:
        exterior.s_operator(m)  # raises on mismatch with (2N - m) sigma
        ident = exterior.OperatorMatrix.identity(1 << m)
        if exterior.hat_sum(m) != exterior.number_op(m).scale(2) - ident.scale(m):
            return False
    return True


def check_s_spectrum(ms=EXTERIOR_MS) -> bool:
    for m in ms:
        expected = sorted(((-1) ** p * (2 * p - m), comb(m, p)) for p in range(m + 1))
        merged: dict[int, int] = {}
        for v, mult in expected:
            merged[v] = merged.get(v, 0) + mult
        if exterior.s_spectrum(m) != sorted(merged.items()):
            return False
        low = exterior.lowest_eigenspace(m)
        if exterior.s_spectrum(m)[0][0] != -m or low != [0]:
            return False
    return True


def check_tau(ms=EXTERIOR_MS) -> bool:
    for m in ms:
        ops = exterior.structure_ops(m)
        ident = exterior.OperatorMatrix.identity(1 << m)
        if ops.tau @ ops.tau != ident or ops.tau_star @ ops.tau_star != ident:
            return False
        if ops.tau_star != ops.sigma @ ops.tau:
            return False
    return True


def check_dirac_beta(ms=(2, 4)) -> bool:
    return all(exterior.apply_DV(exterior.GaussianSection.beta(m)).is_zero() for m in ms)


def check_dirac_square(ms=(2, 4), trials: int = 100, max_degree: int = 4, seed: int = 2) -> bool:
    rng = random.Random(seed)
    for m in ms:
        for _ in range(trials):
            s = exterior.GaussianSection.random(m, max_degree, rng)
            if exterior.apply_DV(exterior.apply_DV(s)) != exterior.harmonic_oscillator(s):
                return False
    return True


def check_oscillator_kernel(ms=(2, 4), max_d: int = 2) -> bool:
    for m in ms:
        for d in range(max_d + 1):
            ker = exterior.oscillator_kernel(m, d)
            if ker.dimension != 1:
                return False
            (vec,) = ker.basis
            if set(vec.terms) != {((0,) * m, 0)}:
                return False
    return True


# -- projective -----------------------------------------------------------------

def check_pin_obstruction_sweep(max_q: int = 10_000) -> bool:
    return all(projective.pin_obstruction(q) == projective.pin_obstruction_closed_form(q)
               for q in range(2, max_q + 1))


def check_sw_oracle(max_q: int = 300) -> bool:
    return all(projective.sw_total(q) == projective.sw_total_by_powering(q) for q in range(1, max_q + 1))


def check_structure_kinds(max_q: int = 64) -> bool:
    for q in range(2, max_q + 1):
        kind = projective.structure_kind(q)
        if q % 4 == 3 and kind != projective.StructureKind.SPIN:
            return False
        if q % 4 == 2 and kind != projective.StructureKind.PIN_MINUS_NONORIENTABLE:
            return False
        if q % 4 in (0, 1) and kind != projective.StructureKind.NOT_PIN_MINUS:
            return False
    return True


# -- ko -------------------------------------------------------------------------

def check_ko_order(max_k: int = 8) -> bool:
    return all(ko.ko_order(k) == 1 << (4 * k + 2) == ko.ko_order_general(8 * k + 2) for k in range(max_k + 1))


def check_q_homomorphism(seed: int = 3, pairs: int = 1000, ks=(0, 1, 2)) -> bool:
    rng = random.Random(seed)
    for k in ks:
        order = ko.ko_order(k)
        for t in range(pairs):
            a = ko.KOClassRP(k, rng.randint(-10**6, 10**6), rng.randrange(order))
            if t % 4 == 0:
                # force the n-components to wrap around the group order
                b = ko.KOClassRP(k, rng.randint(-10**6, 10**6), order - a.n + rng.randrange(order))
            else:
                b = ko.KOClassRP(k, rng.randint(-10**6, 10**6), rng.randrange(order))
            if ko.q_index(a + b) != ko.q_index(a) + ko.q_index(b):
                return False
            if ko.q_index(a - b) != ko.q_index(a) - ko.q_index(b):
                return False
    return True


def check_q_examples() -> bool:
    gamma = ko.ko_from_sum(0, 1, 0)  # 1 - (1 - gamma)
    return (ko.q_index(ko.KOClassRP(0, 1, 0)).value == Fraction(1, 4)
            and ko.q_index(gamma).value == Fraction(7, 4)
            and ko.q_index(ko.KOClassRP(2, 63, 0)).value == Fraction(63, 1024)
            and ko.ko_order(1) == 64)


def check_q_denominators(seed: int = 4, samples: int = 100_000, ks=range(0, 9)) -> bool:
    rng = np.random.default_rng(seed)
    for k in ks:
        bound = 1 << (4 * k + 2)
        m = rng.integers(0, 1 << 62, size=samples, dtype=np.int64)
        n = rng.integers(0, 1 << 62, size=samples, dtype=np.int64)
        num = ko.q_index_batch(k, m, n)
        if num.min() < 0 or num.max() >= 2 * bound:
            return False
        # spot-check the batch numerators against the exact scalar path
        for t in range(0, samples, samples // 50):
            q = ko.q_index(ko.KOClassRP(k, int(m[t]), int(n[t])))
            if bound % q.denominator or q.value != Fraction(int(num[t]), bound):
                return False
    return True


# -- series ---------------------------------------------------------------------

def check_series_identities(orders=(24, 40)) -> bool:
    return all(series.identity_a45(d) and series.identity_a8(d) for d in orders)


def check_series_ring_laws(seed: int = 5, trials: int = 30, order: int = 12) -> bool:
    rng = random.Random(seed)

    def rnd():
        return series.RationalSeries([Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(order + 1)])

    for _ in range(trials):
        f, g, h = rnd(), rnd(), rnd()
        if (f * g) * h != f * (g * h) or f * (g + h) != f * g + f * h:
            return False
        if f.coeffs[0]:
            one = series.RationalSeries([1], order)
            if f * f.inverse() != one:
                return False
    return True


def check_series_parity(order: int = 30) -> bool:
    odd = [series.hyperbolic("tanh", Fraction(1, 4), order), series.hyperbolic("sinh", 1, order)]
    odd += list(series.identity_a45_sides(order))
    even = [series.hyperbolic("cosh", 1, order), series.hyperbolic("cosh", Fraction(1, 2), order)]
    return all(s.is_odd() for s in odd) and all(s.is_even() for s in even)


# -- characteristic classes -------------------------------------------------------

def _elementary(zs):
    e = [Fraction(1)]
    for z in zs:
        e = [a + (z * b if i else 0) for i, (a, b) in enumerate(zip(e + [Fraction(0)], [Fraction(0)] + e))]
    return e[1:]


def check_ahat_oracle(seed: int = 6, trials: int = 8, max_i: int = 4) -> bool:
    """A_i(p(z)) against the t^i coefficient of prod_j f(z_j t) at random roots."""
    rng = random.Random(seed)
    polys = charclasses.a_hat_polys(max_i)
    xs = series.hyperbolic("x/sinh(x)", Fraction(1, 2), 2 * max_i + 1)
    f = [xs[2 * j] for j in range(max_i + 1)]
    for _ in range(trials):
        zs = [Fraction(rng.randint(-7, 7), rng.randint(1, 4)) for _ in range(max_i)]
        prod = series.RationalSeries([1], max_i)
        for z in zs:
            prod = prod * series.RationalSeries([c * z ** j for j, c in enumerate(f)])
        ps = _elementary(zs)
        for i, poly in enumerate(polys):
            if poly.substitute(ps) != prod[i]:
                return False
    return True


def check_ahat_low() -> bool:
    a = charclasses.a_hat_polys(2)
    p = charclasses.parse_poly
    return (a[0] == p("1", 8) and a[1] == p("-1/24 p1", 8)
            and a[2] == p("7/5760 p1^2 - 4/5760 p2", 8))


def check_pairing_examples() -> bool:
    a1 = charclasses.a_hat_polys(1)[1]
    f = charclasses.parse_pairing("dim = 4\np1 = -48\n")
    g = charclasses.PairingFunctional(4, {"p1": 3})
    sinh = charclasses.GradedPoly.from_series(series.hyperbolic("sinh", 1, 3), 4)
    return (charclasses.pair(a1, f) == 2 and charclasses.pair(charclasses.GradedPoly.p(1, 4), g) == 3
            and charclasses.pair(sinh, charclasses.PairingFunctional(4, {"e^2": 5})) == 0)


# -- congruence -----------------------------------------------------------------

def check_congruence_implication(seed: int = 7, datasets: int = 50) -> bool:
    rng = random.Random(seed)
    for t in range(datasets):
        data = congruence.synthetic_dataset(rng, t % 2)
        if not (congruence.congruence_check("a6", data).passed and congruence.congruence_check("a7", data).passed):
            return False
        if not congruence.congruence_check("a8", data).passed:
            return False
        bad = congruence.perturb_normal_class(data)
        report = congruence.congruence_check("a8", bad)
        if report.passed or report.residue != Fraction(1, 2):
            return False
    return True


def check_congruence_trivial() -> bool:
    data = congruence.parse_congruence_data(
        "[index]\nk = 0\nE = 0 0\n[K]\ndim = 4\np1 = 0\n[B]\ndim = 2\ne = 0\n[ch]\nE_K = 3\nE_B = 3\n")
    r = congruence.congruence_check("a1", data)
    return r.passed and r.lhs == 0 and r.rhs == 0


# -- kernels --------------------------------------------------------------------

def check_kernel_parity(seed: int = 8) -> bool:
    from ._kernels import _numpy
    try:
        from ._kernels import _numba
    except ImportError:  # pragma: no cover
        return True
    rng = np.random.default_rng(seed)
    a = rng.integers(0, 1 << 10, size=64, dtype=np.int64)
    b = rng.integers(0, 1 << 10, size=64, dtype=np.int64)
    if not np.array_equal(_numpy.blade_product_signs(a, b), _numba.blade_product_signs(a, b)):
        return False
    for m in (2, 4, 6):
        for i in range(m):
            for x, y in zip(_numpy.exterior_tables(m, i), _numba.exterior_tables(m, i)):
                if not np.array_equal(x, y):
                    return False
    for n in (1, 7, 100, 1023):
        if not np.array_equal(_numpy.binomial_parities(n, n), _numba.binomial_parities(n, n)):
            return False
    m = rng.integers(0, 1 << 62, size=500, dtype=np.int64)
    n = rng.integers(0, 1 << 62, size=500, dtype=np.int64)
    for k in (0, 3, 14):
        if not np.array_equal(_numpy.q_numerators(m, n, k), _numba.q_numerators(m, n, k)):
            return False
    mat = rng.integers(-5, 6, size=(12, 9), dtype=np.int64)
    return _numpy.rank_mod_p(mat, 2_147_483_647) == _numba.rank_mod_p(mat, 2_147_483_647)


SUITES: dict[str, list[tuple[str, Callable[[], bool]]]] = {
    "clifford": [
        ("rep dimensions and relations, n <= 12", check_rep_dims),
        ("quaternionic dims in 8k+3", check_quaternionic_dims),
        ("s_n = +Id for n = 3 mod 4", check_volume_positive),
        ("s_n^2 sign", check_volume_square),
        ("pin equivariance", check_equivariance),
        ("twisted adjoint orthogonal and multiplicative", check_twisted_adjoint_orthogonal),
        ("c(R^8) spanned by blade matrices", check_span_n8),
    ],
    "exterior": [
        ("S = (2N - m) sigma and hat sum", check_s_operator),
        ("S spectrum and lowest eigenspace", check_s_spectrum),
        ("tau, tau* involutions, tau* = sigma tau", check_tau),
        ("(D + V) beta = 0", check_dirac_beta),
        ("(D + V)^2 = harmonic oscillator", check_dirac_square),
        ("oscillator kernel is one-dimensional", check_oscillator_kernel),
    ],
    "projective": [
        ("pin obstruction closed form, q <= 10^4", check_pin_obstruction_sweep),
        ("w(RP^q) by Lucas vs powering", check_sw_oracle),
        ("structure kinds of RP^q", check_structure_kinds),
    ],
    "ko": [
        ("KO(RP^{8k+2}) order", check_ko_order),
        ("q is a homomorphism", check_q_homomorphism),
        ("q examples", check_q_examples),
        ("q denominators divide 2^{4k+2}", check_q_denominators),
    ],
    "series": [
        ("series identities a45 and a8", check_series_identities),
        ("series ring laws", check_series_ring_laws),
        ("series parity", check_series_parity),
    ],
    "charclasses": [
        ("A-hat vs root oracle", check_ahat_oracle),
        ("A-hat low degrees", check_ahat_low),
        ("pairing examples", check_pairing_examples),
    ],
    "congruence": [
        ("a6 and a7 imply a8; negative control", check_congruence_implication),
        ("zero data passes a1", check_congruence_trivial),
    ],
    "kernels": [
        ("numpy and numba kernels agree", check_kernel_parity),
    ],
}


def run_suite(name: str) -> list[CheckResult]:
    out = []
    for label, fn in SUITES[name]:
        t0 = time.perf_counter()
        try:
            ok, detail = bool(fn()), ""
        except Exception as exc:  # a crash counts as a failed check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(name, label, ok, time.perf_counter() - t0, detail))
    return out


def verify_all() -> list[CheckResult]:
    results = []
    for name in SUITES:
        results.extend(run_suite(name))
    return results
