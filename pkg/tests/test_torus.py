import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heatsums.arith import CycloNumber, exp_2pi_i
from heatsums.model import FLOAT, make_spec
from heatsums.torus import (
    evolve_delta,
    images_kernel,
    product_kernel,
    product_spec,
    snf_kernel,
)

from helpers import random_point, random_spec, simple, specs

F = Fraction


def test_images_examples():
    assert images_kernel(simple([2]), [0], [0], 2) == 1
    assert images_kernel(simple([4]), [0], [0], 2) == F(1, 2)
    assert images_kernel(simple([4]), [5], [1], 0) == 1
    assert images_kernel(simple([4]), [1], [0], 0) == 0


def test_evolve_examples():
    state = evolve_delta(simple([4]), [0], 2)
    assert [state[(r,)] for r in range(4)] == [F(1, 2), 0, F(1, 2), 0]
    assert [evolve_delta(simple([3]), [1], 0)[(r,)] for r in range(3)] == [0, 1, 0]
    anti = evolve_delta(simple([2], ["1/2"]), [0], 1)
    assert anti[(0,)] == 0 and anti[(1,)] == 0


def test_snf_examples():
    assert snf_kernel(simple([5]), [0], 2) == F(1, 2)
    two = make_spec([4], {2: F(1, 2), -2: F(1, 2)})
    assert snf_kernel(two, [0], 2) == images_kernel(two, [0], [0], 2) == 1
    grid = simple([2, 2])
    assert snf_kernel(grid, [0, 0], 2) == images_kernel(grid, [0, 0], [0, 0], 2) == evolve_delta(grid, [0, 0], 2)[(0, 0)]


def test_snf_rejects_zero_step():
    lazy = make_spec([3], {1: F(1, 4), 0: F(1, 2), -1: F(1, 4)})
    with pytest.raises(ValueError):
        snf_kernel(lazy, [0], 2)


def test_exact_mode_rejects_float_beta():
    spec = make_spec([3], {1: F(1, 2), -1: F(1, 2)}, [0.25])
    with pytest.raises(ValueError):
        images_kernel(spec, [0], [0], 1)
    with pytest.raises(ValueError):
        evolve_delta(spec, [0], 1)


def test_float_mode_matches_exact():
    exact = simple([5, 3], ["1/3", "1/2"])
    fl = simple([5, 3], [1 / 3, 0.5])
    fl = make_spec(fl.m, fl.steps, fl.beta, mode=FLOAT)
    for x in [(0, 0), (1, 2), (-3, 4)]:
        e = complex(images_kernel(exact, x, [0, 0], 5))
        assert abs(images_kernel(fl, x, [0, 0], 5) - e) < 1e-12
        assert abs(evolve_delta(fl, [0, 0], 5).at(x) - e) < 1e-12


@settings(max_examples=40, deadline=None)
@given(specs(), st.integers(0, 8), st.integers(0, 2**16))
def test_oracle_equivalence(spec, n, seed):
    rng = random.Random(seed)
    y = random_point(rng, spec.d)
    state = evolve_delta(spec, y, n)
    for _ in range(3):
        x = random_point(rng, spec.d)
        assert images_kernel(spec, x, y, n) == state.at(x)


@settings(max_examples=40, deadline=None)
@given(specs(), st.integers(0, 8), st.integers(0, 2**16))
def test_twist_transformation(spec, n, seed):
    rng = random.Random(seed)
    x, y, l = (random_point(rng, spec.d, 4) for _ in range(3))
    shifted = tuple(a + b * mj for a, b, mj in zip(x, l, spec.m))
    phase = sum((F(lj) * bj for lj, bj in zip(l, spec.beta)), F(0))
    assert images_kernel(spec, shifted, y, n) == exp_2pi_i(phase) * images_kernel(spec, x, y, n)


@settings(max_examples=40, deadline=None)
@given(specs(), st.integers(0, 8), st.integers(0, 2**16))
def test_translation_invariance(spec, n, seed):
    rng = random.Random(seed)
    x, y = random_point(rng, spec.d), random_point(rng, spec.d)
    z = tuple(a - b for a, b in zip(x, y))
    assert images_kernel(spec, x, y, n) == images_kernel(spec, z, (0,) * spec.d, n)


@settings(max_examples=30, deadline=None)
@given(specs(twisted=False), st.integers(0, 8))
def test_untwisted_mass(spec, n):
    y = (0,) * spec.d
    total = sum((images_kernel(spec, r, y, n) for r in spec.residues()), CycloNumber.rational(0))
    assert total == 1


def test_product_examples():
    two = simple([2])
    assert product_kernel([two, two], [0, 0], [0, 0], 2) == 1
    a, b = simple([3], ["1/3"]), simple([4])
    assert product_kernel([a, b], [1, 2], [1, 2], 0) == 1
    assert product_kernel([a, b], [1, 2], [1, 3], 0) == 0
    with pytest.raises(ValueError):
        product_kernel([a, b], [1], [1, 2], 1)


def test_product_law_random():
    rng = random.Random(17)
    for _ in range(20):
        f1 = random_spec(rng, d=rng.randint(1, 2), max_offsets=4)
        f2 = random_spec(rng, d=1, max_offsets=4)
        big = product_spec([f1, f2])
        n = rng.randint(0, 5)
        x = [random_point(rng, f1.d), random_point(rng, 1)]
        y = [random_point(rng, f1.d), random_point(rng, 1)]
        flat = lambda v: tuple(c for part in v for c in part)
        assert product_kernel([f1, f2], x, y, n) == images_kernel(big, flat(x), flat(y), n)


def test_snf_agrees_with_images_random():
    rng = random.Random(23)
    for _ in range(40):
        spec = random_spec(rng, d=rng.randint(1, 2), allow_zero=False)
        n = rng.randint(0, 6)
        x = random_point(rng, spec.d)
        assert snf_kernel(spec, x, n) == images_kernel(spec, x, (0,) * spec.d, n)


def test_huge_beta_denominator_rejected():
    spec = simple([3], [F(1, 10**7 + 19)])
    with pytest.raises(ValueError):
        images_kernel(spec, [0], [0], 1)
