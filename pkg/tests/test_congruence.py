import random
from fractions import Fraction

import pytest

from pinindex.charclasses import PairingFunctional, top_monomials
from pinindex.congruence import (
    CongruenceData,
    DataError,
    congruence_check,
    parse_congruence_data,
    perturb_normal_class,
    synthetic_dataset,
)
from pinindex.ko import KOClassRP

ZERO = """[index]
k = 0
E = 0 0
[K]
dim = 4
p1 = 0
e^2 = 0
[B]
dim = 2
e = 0
[ch]
E_K = 3
E_B = 3
"""


def test_zero_data_passes_a1():
    r = congruence_check("a1", parse_congruence_data(ZERO))
    assert r.passed and r.lhs == 0 and r.rhs == 0 and r.residue == 0


def test_a1_assembly_by_hand():
    # k = 0: <A(TK) ch(E_C), [K]> with ch = 3 is 3 * (-1/24) <p1, [K]>
    text = ZERO.replace("p1 = 0", "p1 = -48").replace("E = 0 0", "E = 1 0").replace("e = 0", "e = 8")
    r = congruence_check("a1", parse_congruence_data(text))
    assert r.lhs == 6
    # rhs = 1/4 - 1/2 <tanh(e/4) * 3, [B]> = 1/4 - 1/2 * 3/4 * 8
    assert r.rhs == Fraction(1, 4) - 3
    assert r.residue == Fraction(3, 4) and not r.passed


def test_a8_by_hand():
    data = CongruenceData(0, None, PairingFunctional(2, {"e": Fraction(1, 4)}), {},
                          {"N": KOClassRP(0, 1, 0), "Ro": KOClassRP(0, 0, 0)})
    r = congruence_check("a8", data)
    # <A sinh e, [B]> = <e, [B]> in dimension 2
    assert r.lhs == Fraction(1, 4) and r.rhs == Fraction(1, 4) and r.passed


def test_a9_mod_one():
    data = CongruenceData(0, index={}, classes={"N": KOClassRP(0, 2, 0), "Ro": KOClassRP(0, 0, 0)})
    r = congruence_check("a9", data)
    assert r.modulus == 1 and r.residue == 0 and r.passed
    data = CongruenceData(0, index={}, classes={"N": KOClassRP(0, 1, 0), "Ro": KOClassRP(0, 0, 0)})
    assert congruence_check("a9", data).residue == Fraction(1, 2)


@pytest.mark.parametrize("k", [0, 1])
def test_synthetic_implication(k):
    rng = random.Random(k)
    for _ in range(25):
        data = synthetic_dataset(rng, k)
        assert congruence_check("a6", data).passed
        assert congruence_check("a7", data).passed
        assert congruence_check("a8", data).passed


def test_negative_control_residue():
    rng = random.Random(42)
    for k in (0, 1):
        bad = perturb_normal_class(synthetic_dataset(rng, k))
        r = congruence_check("a8", bad)
        assert not r.passed and r.residue == Fraction(1, 2)
        assert not congruence_check("a6", bad).passed
        assert congruence_check("a7", bad).passed


def test_a6_minus_a7_is_the_series_identity():
    # for random data the gap between the a6 and a7 right sides is q(N) - q(Ro) - <A sinh e>
    rng = random.Random(5)
    data = synthetic_dataset(rng, 1)
    b = dict(data.B.values)
    for m in b:
        b[m] = Fraction(rng.randint(-9, 9), rng.randint(1, 7))
    other = CongruenceData(1, data.K, PairingFunctional(10, b), {}, dict(data.classes))
    r6, r7, r8 = (congruence_check(w, other) for w in ("a6", "a7", "a8"))
    # index values are reduced into [0, 2) one by one, so compare in Q/2Z
    gap = (r6.rhs - r7.rhs) - ((other.q("N") - other.q("Ro")).value - r8.rhs)
    assert gap.denominator == 1 and gap % 2 == 0


def test_text_roundtrip():
    data = synthetic_dataset(random.Random(3), 1)
    again = parse_congruence_data(data.to_text())
    for which in ("a6", "a7", "a8", "a9"):
        assert congruence_check(which, again) == congruence_check(which, data)


def test_inconsistent_dimension_tags():
    with pytest.raises(DataError):
        parse_congruence_data(ZERO.replace("dim = 2", "dim = 10"))
    with pytest.raises(DataError):
        CongruenceData(1, PairingFunctional(4, {}), None)


def test_non_dyadic_index_rejected():
    with pytest.raises(DataError):
        parse_congruence_data(ZERO.replace("E = 0 0", "E = 1/3"))


def test_index_denominator_bound():
    with pytest.raises(DataError):
        parse_congruence_data(ZERO.replace("E = 0 0", "E = 1/8"))
    data = parse_congruence_data(ZERO.replace("E = 0 0", "E = 3/4"))
    assert data.q("E").value == Fraction(3, 4)


@pytest.mark.parametrize("bad", ["p1 = 0.5", "p1 = 1e2", "p1 = x"])
def test_malformed_rationals(bad):
    with pytest.raises(DataError):
        parse_congruence_data(ZERO.replace("p1 = 0", bad))


def test_missing_inputs_reported():
    data = parse_congruence_data(ZERO)
    with pytest.raises(DataError):
        congruence_check("a8", data)
    with pytest.raises(DataError):
        congruence_check("a5", data)


def test_unknown_section():
    with pytest.raises(DataError):
        parse_congruence_data("[foo]\nx = 1\n")


def test_missing_pairing_value_is_an_error():
    data = CongruenceData(1, None, PairingFunctional(10, {m: 1 for m in top_monomials(10)[1:]}), {},
                          {"N": KOClassRP(1, 0, 0), "Ro": KOClassRP(1, 0, 0)})
    with pytest.raises(KeyError):
        congruence_check("a8", data)
