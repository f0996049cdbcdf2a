"""Random problem instances shared by the unit, property and acceptance tests."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from heatsums.model import StepDistribution, TorusSpec, make_spec


def random_steps(rng: random.Random, d: int, max_offsets: int = 6, max_entry: int = 3,
                 allow_zero: bool = True, uniform: bool = False) -> StepDistribution:
    """A symmetric step set with at most `max_offsets` offsets, entries in [-max_entry, max_entry]."""
    table: dict[tuple[int, ...], int] = {}
    target = rng.randint(1, max_offsets)
    for _ in range(50):
        off = tuple(rng.randint(-max_entry, max_entry) for _ in range(d))
        if not allow_zero and not any(off):
            continue
        neg = tuple(-c for c in off)
        if len(set(table) | {off, neg}) > max_offsets:
            break
        w = 1 if uniform else rng.randint(1, 4)
        table[off] = table[neg] = w
        if len(table) >= target:
            break
    if not table:
        e = (1,) + (0,) * (d - 1)
        table = {e: 1, tuple(-c for c in e): 1}
    total = sum(table.values())
    return StepDistribution.from_pairs((o, Fraction(w, total)) for o, w in table.items())


def random_spec(rng: random.Random, d: int | None = None, max_m: int = 6, max_den: int = 6,
                allow_zero: bool = True, uniform: bool = False, twisted: bool = True, **kw) -> TorusSpec:
    d = d or rng.randint(1, 3)
    steps = random_steps(rng, d, allow_zero=allow_zero, uniform=uniform, **kw)
    m = [rng.randint(1, max_m) for _ in range(d)]
    if twisted:
        beta = [Fraction(rng.randint(0, max_den - 1), rng.randint(1, max_den)) for _ in range(d)]
    else:
        beta = [0] * d
    return make_spec(m, steps, beta)


def random_point(rng: random.Random, d: int, spread: int = 6) -> tuple[int, ...]:
    return tuple(rng.randint(-spread, spread) for _ in range(d))


@st.composite
def specs(draw, max_d: int = 3, allow_zero: bool = True, twisted: bool = True, uniform: bool = False):
    """Hypothesis strategy: a valid exact-mode TorusSpec."""
    seed = draw(st.integers(0, 2**32 - 1))
    d = draw(st.integers(1, max_d))
    return random_spec(random.Random(seed), d, allow_zero=allow_zero, twisted=twisted, uniform=uniform)


def simple(m, beta=()):
    """Nearest-neighbour walk, weights 1/(2d)."""
    from heatsums.model import simple_walk

    return simple_walk(m, beta)
