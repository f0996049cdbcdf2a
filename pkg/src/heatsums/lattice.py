"""Heat kernel of the walk on Z^d by coefficient extraction from a Laurent polynomial."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Mapping, Sequence

from .arith import binomial
from .model import LatticeVector, StepDistribution, TorusSpec


class SparseLaurent:
    """Laurent polynomial in d variables: exponent tuple -> nonzero Fraction."""

    __slots__ = ("terms", "dim")

    def __init__(self, terms: Mapping[LatticeVector, object], dim: int | None = None):
        clean = {}
        for exp, c in terms.items():
            c = Fraction(c)
            if c:
                clean[tuple(exp)] = c
        if dim is None:
            if not clean:
                raise ValueError("dimension of an empty polynomial must be given")
            dim = len(next(iter(clean)))
        self.terms = clean
        self.dim = dim

    @classmethod
    def one(cls, dim: int) -> "SparseLaurent":
        return cls({(0,) * dim: 1}, dim)

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseLaurent):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __mul__(self, other: "SparseLaurent") -> "SparseLaurent":
        out: dict[LatticeVector, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return SparseLaurent(out, self.dim)

    def __pow__(self, n: int) -> "SparseLaurent":
        return laurent_power(self, n)

    def total(self) -> Fraction:
        return sum(self.terms.values(), Fraction(0))

    def __repr__(self) -> str:
        return f"SparseLaurent({self.terms!r})"


def step_polynomial(spec: TorusSpec) -> SparseLaurent:
    """sum over s in S of pi_S(s) t^s."""
    return SparseLaurent({s.offset: s.weight for s in spec.steps}, spec.d)


def _int_convolve(a: dict, b: dict) -> dict:
    out: dict = {}
    get = out.get
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = get(e, 0) + c1 * c2
    return out


def _int_power(base: dict, n: int, dim: int) -> dict:
    result = {(0,) * dim: 1}
    while n:
        if n & 1:
            result = _int_convolve(result, base)
        n >>= 1
        if n:
            base = _int_convolve(base, base)
    return result


def laurent_power(p: SparseLaurent, n: int) -> SparseLaurent:
    """p^n by binary exponentiation over integer coefficients."""
    if n < 0:
        raise ValueError("exponent must be nonnegative")
    den = 1
    for c in p.terms.values():
        den = lcm(den, c.denominator)
    base = {e: int(c * den) for e, c in p.terms.items()}
    raw = _int_power(base, n, p.dim)
    scale = den**n
    return SparseLaurent({e: Fraction(c, scale) for e, c in raw.items()}, p.dim)


@lru_cache(maxsize=128)
def _power_table(steps: StepDistribution, n: int) -> dict[LatticeVector, Fraction]:
    d = len(steps.steps[0].offset)
    poly = SparseLaurent({s.offset: s.weight for s in steps}, d)
    return laurent_power(poly, n).terms


def lattice_power_table(spec: TorusSpec, n: int) -> dict[LatticeVector, Fraction]:
    """All nonzero values x -> K_Y(x, 0; n); memoised per (step set, n)."""
    return _power_table(spec.steps, n)


def in_support(spec: TorusSpec, x: Sequence[int], n: int) -> bool:
    return all(abs(xj) <= n * sj for xj, sj in zip(x, spec.steps.maxima()))


def lattice_kernel(spec: TorusSpec, x: Sequence[int], n: int) -> Fraction:
    """K_Y(x, 0; n) on the infinite lattice Cayley graph."""
    x = tuple(x)
    if len(x) != spec.d:
        raise ValueError(f"x has length {len(x)}, expected {spec.d}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if not in_support(spec, x, n):
        return Fraction(0)
    return lattice_power_table(spec, n).get(x, Fraction(0))


def lattice_kernel_closed_form_d1(x: int, n: int, b: int) -> Fraction:
    """2^-n C(n, (x + bn) / 2b) for the walk with steps +-b, weight 1/2 each."""
    if b < 1:
        raise ValueError("b must be positive")
    top = x + b * n
    if abs(x) > b * n or top % (2 * b):
        return Fraction(0)
    return Fraction(binomial(n, top // (2 * b)), 2**n)
