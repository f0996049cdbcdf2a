import json
import random
from fractions import Fraction
from pathlib import Path

import pytest

from heatsums.arith import CycloNumber, binomial, root_of_unity
from heatsums.closed_forms import (
    COS,
    SIN,
    additive_twisted_cos_sum,
    additive_twisted_lhs,
    alternating_S_lhs,
    alternating_cos_S,
    brute_force_trig_sum,
    cos_power_lhs,
    cos_power_sum,
    linear_combo_lhs,
    linear_combo_power_sum,
    mixed_2d_lhs,
    mixed_cos_sin_2d,
    multiplicative_lhs,
    multiplicative_twisted_sum,
    product_cos_lhs,
    product_cos_power_sum,
)
from heatsums.model import enumerate_dirichlet_characters, gauss_sum, is_primitive
from heatsums.torus import images_kernel

from helpers import simple

F = Fraction
GOLDEN = json.loads((Path(__file__).parent / "data" / "golden.json").read_text())


def brute(desc):
    return brute_force_trig_sum(desc)


def rand_angle(rng):
    return F(rng.randint(-6, 6), rng.randint(1, 6))


# -- cos_power_sum -------------------------------------------------------------


def test_cos_power_examples():
    assert cos_power_sum(5, 2) == F(5, 2)
    assert cos_power_sum(5, 1) == 0
    assert cos_power_sum(1, 2) == 1
    assert brute(cos_power_lhs(5, 2)) == F(5, 2)


@pytest.mark.parametrize("m", range(1, 11))
def test_untwisted_case_exhaustive(m):
    for n in range(17):
        value = cos_power_sum(m, n)
        assert value.is_rational()
        assert value == brute(cos_power_lhs(m, n))
        # the same number is m times the return probability of the simple walk on Z/m
        assert value == images_kernel(simple([m]), [0], [0], n) * m


def test_cos_power_random_twists():
    rng = random.Random(1)
    for _ in range(25):
        m, n, beta = rng.randint(1, 12), rng.randint(0, 20), rand_angle(rng)
        sine = rng.random() < 0.5
        assert cos_power_sum(m, n, beta, sine) == brute(cos_power_lhs(m, n, beta, sine))


def test_cos_power_float_mode():
    exact = complex(cos_power_sum(7, 9, F(1, 3)))
    assert abs(cos_power_sum(7, 9, 1 / 3) - exact) < 1e-12


# -- additive twist ---------------------------------------------------------------


def test_additive_examples():
    assert additive_twisted_cos_sum(4, 1, 2, 0, 2) == 2
    assert brute(additive_twisted_lhs(4, 1, 2, 0, 2)) == 2
    # no d satisfies the divisibility condition
    assert additive_twisted_cos_sum(4, 2, 1, 0, 3) == 0


def test_cube_root_twist_value():
    value = additive_twisted_cos_sum(102, 1, 34, 0, 100)
    assert value.is_rational()
    assert value == F(102 * (binomial(100, 16) + binomial(100, 67)), 2**100)
    assert value == F(7514656923394238847040235025, 2**98)
    assert value == brute(additive_twisted_lhs(102, 1, 34, 0, 100))


def test_additive_random():
    rng = random.Random(2)
    for _ in range(25):
        m = rng.randint(2, 12)
        b, r = rng.randint(1, m - 1), rng.randint(1, m - 1)
        n, alpha, sine = rng.randint(0, 20), rand_angle(rng), rng.random() < 0.5
        assert additive_twisted_cos_sum(m, b, r, alpha, n, sine) == brute(additive_twisted_lhs(m, b, r, alpha, n, sine))


def test_additive_rejects_principal():
    with pytest.raises(ValueError):
        additive_twisted_cos_sum(5, 1, 0, 0, 2)


# -- S(n, m) ------------------------------------------------------------------------


def test_alternating_examples():
    assert alternating_cos_S(1, 1) == F(-1, 2)
    assert brute(alternating_S_lhs(1, 1)) == F(-1, 2)
    assert str(alternating_cos_S(100, 13)) == GOLDEN["S(100,13)"]
    assert str(alternating_cos_S(110, 18)) == GOLDEN["S(110,18)"]


def test_alternating_random():
    rng = random.Random(3)
    for _ in range(25):
        n, m = rng.randint(1, 20), rng.randint(1, 12)
        assert alternating_cos_S(n, m) == brute(alternating_S_lhs(n, m))


# -- multiplicative twist --------------------------------------------------------------


def quadratic(m, parity):
    for chi in enumerate_dirichlet_characters(m):
        if chi.order == 2 and is_primitive(chi) and chi(m - 1) == parity:
            return chi
    raise LookupError


def test_gauss_formula_even():
    chi = quadratic(5, 1)
    value = multiplicative_twisted_sum(chi, 1, 0, 1)
    assert value == brute(multiplicative_lhs(chi, 1, 0, 1))
    assert value == gauss_sum(chi)
    assert value * value == 5


def test_gauss_formula_odd():
    chi = quadratic(4, -1)
    value = multiplicative_twisted_sum(chi, 1, F(-1, 2), 1)
    assert value == brute(multiplicative_lhs(chi, 1, F(-1, 2), 1)) == 2
    tau = gauss_sum(chi)
    assert tau == 2 * root_of_unity(4, 1)
    assert tau * tau == -4


def test_multiplicative_random():
    rng = random.Random(4)
    prims = [c for m in range(3, 13) for c in enumerate_dirichlet_characters(m) if is_primitive(c)]
    for _ in range(20):
        chi = rng.choice(prims)
        b = rng.randint(1, chi.modulus - 1)
        n, alpha, variant = rng.randint(0, 20), rand_angle(rng), rng.choice([COS, SIN])
        assert multiplicative_twisted_sum(chi, b, alpha, n, variant) == brute(multiplicative_lhs(chi, b, alpha, n, variant))


def test_multiplicative_rejects_imprimitive():
    with pytest.raises(ValueError):
        multiplicative_twisted_sum(enumerate_dirichlet_characters(4)[0], 1, 0, 2)


# -- product and two-dimensional sums ------------------------------------------------------


def test_product_reduces_to_one_dimension():
    for m, n in [(3, 4), (7, 10), (1, 5)]:
        assert product_cos_power_sum([m], n) == cos_power_sum(m, n)


def test_product_random():
    rng = random.Random(5)
    for _ in range(15):
        d = rng.randint(1, 3)
        m = [rng.randint(1, 6) for _ in range(d)]
        beta = [rand_angle(rng) for _ in range(d)]
        n = rng.randint(0, 12)
        value = product_cos_power_sum(m, n, beta)
        assert value == brute(product_cos_lhs(m, n, beta))
        if not any(beta):
            assert value.is_rational()


def test_linear_combo_examples():
    assert linear_combo_power_sum(1, 1, 1) == 2 == brute(linear_combo_lhs(1, 1, 1))
    assert linear_combo_power_sum(2, 2, 2) == 8 == brute(linear_combo_lhs(2, 2, 2))


def test_linear_combo_random():
    rng = random.Random(6)
    for _ in range(15):
        m1, m2, n = rng.randint(1, 8), rng.randint(1, 8), rng.randint(0, 12)
        beta = (rand_angle(rng), rand_angle(rng))
        assert linear_combo_power_sum(m1, m2, n, beta) == brute(linear_combo_lhs(m1, m2, n, beta))


def test_mixed_examples():
    assert mixed_cos_sin_2d(1, 1, 1, 1, 1) == 0 == brute(mixed_2d_lhs(1, 1, 1, 1, 1))
    assert mixed_cos_sin_2d(2, 3, 1, 1, 2) == 3 == brute(mixed_2d_lhs(2, 3, 1, 1, 2))


def test_mixed_with_phases():
    # nonzero alpha exercises the exp(i k (alpha1 + alpha2)) prefactor
    rng = random.Random(7)
    for _ in range(20):
        m1, m2 = rng.randint(1, 6), rng.randint(1, 6)
        a, b, k = rng.randint(1, 6), rng.randint(1, 6), rng.randint(0, 10)
        a1, a2 = rand_angle(rng), rand_angle(rng)
        assert mixed_cos_sin_2d(m1, m2, a, b, k, a1, a2) == brute(mixed_2d_lhs(m1, m2, a, b, k, a1, a2))


def test_golden_products():
    value = product_cos_power_sum([40, 60, 80], 100)
    num = 1
    for factor in GOLDEN["S(100,40,60,80)_numerator_factors"].split("*"):
        base, _, exp = factor.strip().partition("^")
        num *= int(base) ** int(exp or 1)
    assert value.to_rational() == F(num, power_of_two(GOLDEN["S(100,40,60,80)_denominator"]))
    big = product_cos_power_sum([4, 6, 8], 1000).to_rational()
    assert big == F(int(GOLDEN["S(1000,4,6,8)_numerator"]), power_of_two(GOLDEN["S(1000,4,6,8)_denominator"]))


def power_of_two(text):
    base, exp = text.split("^")
    assert base == "2"
    return 2 ** int(exp)
