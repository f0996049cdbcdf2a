"""Twisted heat kernels on discrete tori.

`images_kernel` (a character-weighted sum over lattice translates) is the
reference evaluation.  `evolve_delta` iterates the twisted averaging operator
directly and never touches the lattice kernel, `snf_kernel` evaluates the
multinomial formula through a Smith normal form, and `product_kernel` builds
kernels of product graphs from their factors.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import lcm
from typing import Iterator, Sequence, Union

from .arith import CycloNumber, binomial, multinomial
from .lattice import lattice_power_table
from .model import EXACT, FLOAT, LatticeVector, Step, StepDistribution, TorusSpec
from .snf import congruence_period, solve_shifted_congruences, solve_torus_congruences, matvec

KernelValue = Union[CycloNumber, complex]

# exact twists are accumulated in a group ring of this length at most
MAX_BETA_CONDUCTOR = 10**6


def _check_vector(spec: TorusSpec, v: Sequence[int], name: str) -> LatticeVector:
    v = tuple(int(c) for c in v)
    if len(v) != spec.d:
        raise ValueError(f"{name} has length {len(v)}, expected {spec.d}")
    return v


def _require_exact_beta(spec: TorusSpec) -> None:
    if spec.mode != EXACT:
        return
    for b in spec.beta:
        if not isinstance(b, (int, Fraction)):
            raise ValueError(f"beta component {b!r} cannot be represented exactly; use float mode")
    if beta_conductor(spec) > MAX_BETA_CONDUCTOR:
        raise ValueError(f"beta denominators exceed {MAX_BETA_CONDUCTOR}; use float mode")


def beta_conductor(spec: TorusSpec) -> int:
    """Least N with N * beta integral."""
    n = 1
    for b in spec.beta:
        n = lcm(n, Fraction(b).denominator)
    return n


def twist_exponent(spec: TorusSpec, k: Sequence[int], sign: int = 1) -> Fraction:
    """sign * k . beta, so the twist is exp(2 pi i * result)."""
    return sign * sum((Fraction(kj) * bj for kj, bj in zip(k, spec.beta)), Fraction(0))


def _float_twist(spec: TorusSpec, k: Sequence[int], sign: int) -> complex:
    phase = sum(kj * float(bj) for kj, bj in zip(k, spec.beta))
    return cmath.exp(sign * 2j * math.pi * phase)


def translate_range(spec: TorusSpec, z: Sequence[int], n: int) -> Iterator[tuple[int, ...]]:
    """All k with |z_j + k_j m_j| <= n S_j for every j (the support box)."""
    ranges = []
    for zj, mj, sj in zip(z, spec.m, spec.steps.maxima()):
        lo = -((n * sj + zj) // mj)
        hi = (n * sj - zj) // mj
        ranges.append(range(lo, hi + 1))
    return product(*ranges)


def images_kernel(spec: TorusSpec, x: Sequence[int], y: Sequence[int], n: int) -> KernelValue:
    """K_{X,beta}(x, y; n) = sum_k exp(-2 pi i k.beta) K_Y(x - y + k m, 0; n)."""
    _require_exact_beta(spec)
    x = _check_vector(spec, x, "x")
    y = _check_vector(spec, y, "y")
    if n < 0:
        raise ValueError("n must be nonnegative")
    z = tuple(a - b for a, b in zip(x, y))
    table = lattice_power_table(spec, n)
    if spec.mode == EXACT:
        cond = beta_conductor(spec)
        acc = [Fraction(0)] * cond
        for k in translate_range(spec, z, n):
            val = table.get(tuple(zj + kj * mj for zj, kj, mj in zip(z, k, spec.m)))
            if val:
                acc[int(twist_exponent(spec, k, -1) * cond) % cond] += val
        return CycloNumber(cond, acc)
    total = 0j
    for k in translate_range(spec, z, n):
        val = table.get(tuple(zj + kj * mj for zj, kj, mj in zip(z, k, spec.m)))
        if val:
            total += float(val) * _float_twist(spec, k, -1)
    return total


# ---------------------------------------------------------------------------
# state-vector evolution


@dataclass(frozen=True)
class StateVector:
    """Values of a twisted function on the fundamental domain prod_j [0, m_j)."""

    spec: TorusSpec
    values: tuple

    def _index(self, r: Sequence[int]) -> int:
        idx = 0
        for rj, mj in zip(r, self.spec.m):
            idx = idx * mj + rj
        return idx

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, r: Sequence[int]) -> KernelValue:
        r = tuple(r)
        if any(not 0 <= rj < mj for rj, mj in zip(r, self.spec.m)):
            raise IndexError(f"{r} is outside the fundamental domain")
        return self.values[self._index(r)]

    def at(self, x: Sequence[int]) -> KernelValue:
        """Value at an arbitrary lift, f(r + k m) = exp(2 pi i beta.k) f(r)."""
        x = tuple(x)
        k = tuple(xj // mj for xj, mj in zip(x, self.spec.m))
        r = tuple(xj % mj for xj, mj in zip(x, self.spec.m))
        value = self[r]
        if not any(k):
            return value
        if self.spec.mode == EXACT:
            from .arith import exp_2pi_i

            return value * exp_2pi_i(twist_exponent(self.spec, k))
        return value * _float_twist(self.spec, k, 1)

    def items(self):
        return zip(self.spec.residues(), self.values)


def _split(spec: TorusSpec, v: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    r = tuple(c % mj for c, mj in zip(v, spec.m))
    k = tuple(c // mj for c, mj in zip(v, spec.m))
    return r, k


def evolve_delta(spec: TorusSpec, y: Sequence[int], n: int) -> StateVector:
    """Apply the twisted averaging step n times to the delta function at y.

    new(x) = sum_s pi(s) old(x - s), where a neighbour x - s = r + k m outside
    the fundamental domain is read as exp(2 pi i beta.k) old(r).
    """
    _require_exact_beta(spec)
    y = _check_vector(spec, y, "y")
    if n < 0:
        raise ValueError("n must be nonnegative")
    residues = list(spec.residues())
    index = {r: i for i, r in enumerate(residues)}
    size = len(residues)
    exact = spec.mode == EXACT
    cond = beta_conductor(spec) if exact else 1

    # transitions[x] = [(source index, weight, twist)]
    int_w, den = spec.steps.integer_weights()
    transitions = []
    for r in residues:
        row = []
        for step, w in zip(spec.steps, int_w):
            src, k = _split(spec, tuple(a - b for a, b in zip(r, step.offset)))
            if exact:
                twist = int(twist_exponent(spec, k) * cond) % cond
            else:
                twist = _float_twist(spec, k, 1)
            row.append((index[src], w, twist))
        transitions.append(row)

    ry, ky = _split(spec, y)
    if exact:
        # each entry is a group-ring vector sum_e c_e zeta^e of length cond
        state = [[0] * cond for _ in range(size)]
        state[index[ry]][int(twist_exponent(spec, ky, -1) * cond) % cond] = 1
        for _ in range(n):
            new = []
            for row in transitions:
                acc = [0] * cond
                for src, w, e in row:
                    old = state[src]
                    for i, c in enumerate(old):
                        if c:
                            acc[(i + e) % cond] += w * c
                new.append(acc)
            state = new
        scale = den**n
        values = tuple(CycloNumber(cond, [Fraction(c, scale) for c in vec]) for vec in state)
    else:
        state = [0j] * size
        state[index[ry]] = _float_twist(spec, ky, -1)
        fw = [float(Fraction(w, den)) for w in int_w]
        for _ in range(n):
            state = [
                sum(fw_i * tw * state[src] for (src, _, tw), fw_i in zip(row, fw))
                for row in transitions
            ]
        values = tuple(state)
    return StateVector(spec, values)


# ---------------------------------------------------------------------------
# Smith-normal-form evaluation


def half_steps(spec: TorusSpec) -> list[Step]:
    """S_1 with S = S_1 u (-S_1): the lexicographically positive member of each pair."""
    zero = (0,) * spec.d
    out = []
    for s in spec.steps:
        if s.offset == zero:
            raise ValueError("the multinomial formula needs a step set without the zero step")
        if s.offset > tuple(-c for c in s.offset):
            out.append(s)
    return out


def compositions(n: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All (a_1, ..., a_parts) of nonnegative integers summing to n."""
    if parts == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in compositions(n - first, parts - 1):
            yield (first,) + rest


def snf_kernel(spec: TorusSpec, x: Sequence[int], n: int) -> KernelValue:
    """K_{X,beta}(x, 0; n) from the multinomial expansion over S_1 u (-S_1).

    With step matrix A (columns s_1..s_l) and exponent vector w = 2j - a, the
    lattice kernel collects the terms with A w = x + k m.  The admissible w
    are the classes w = w0 + z (mod P), P = lcm(m), where w0 solves
    A w0 = x (mod m) and z runs over the homogeneous solutions L_{S,m}; both
    come from the Smith normal form of the row-scaled step matrix.  The
    torus translate k = (A w - x) / m fixes the twist factor.
    """
    _require_exact_beta(spec)
    x = _check_vector(spec, x, "x")
    if n < 0:
        raise ValueError("n must be nonnegative")
    s1 = half_steps(spec)
    l = len(s1)
    a_mat = [[s.offset[r] for s in s1] for r in range(spec.d)]
    weights = [s.weight for s in s1]
    period = congruence_period(spec.m)
    homogeneous = solve_torus_congruences(a_mat, spec.m)
    shifted = solve_shifted_congruences(a_mat, spec.m, x)
    if not shifted:
        return CycloNumber.rational(0) if spec.mode == EXACT else 0j
    w0 = shifted[0]
    classes = sorted({tuple((p + q) % period for p, q in zip(w0, z)) for z in homogeneous})
    assert set(classes) == set(shifted)

    exact = spec.mode == EXACT
    cond = beta_conductor(spec) if exact else 1
    acc = [Fraction(0)] * cond
    total = 0j
    for a in compositions(n, l):
        coeff = multinomial(n, a)
        for wj, aj in zip(weights, a):
            coeff *= wj**aj
        for cls in classes:
            # w_r = cls_r + t_r P with |w_r| <= a_r and w_r = a_r (mod 2)
            options = []
            for r in range(l):
                lo = -((a[r] + cls[r]) // period)
                hi = (a[r] - cls[r]) // period
                opts = []
                for t in range(lo, hi + 1):
                    w = cls[r] + t * period
                    if (w + a[r]) % 2 == 0:
                        opts.append((w, binomial(a[r], (a[r] + w) // 2)))
                if not opts:
                    break
                options.append(opts)
            else:
                for choice in product(*options):
                    w = [c[0] for c in choice]
                    term = coeff
                    for c in choice:
                        term *= c[1]
                    image = matvec(a_mat, w)
                    k = [(v - xr) // mr for v, xr, mr in zip(image, x, spec.m)]
                    if exact:
                        acc[int(twist_exponent(spec, k, -1) * cond) % cond] += term
                    else:
                        total += float(term) * _float_twist(spec, k, -1)
    if exact:
        return CycloNumber(cond, acc)
    return total


# ---------------------------------------------------------------------------
# products of tori


def product_spec(specs: Sequence[TorusSpec]) -> TorusSpec:
    """Spec on G_1 x ... x G_r with S = S_1 x ... x S_r and pi = pi_1 ... pi_r."""
    if not specs:
        raise ValueError("need at least one factor")
    modes = {s.mode for s in specs}
    if len(modes) != 1:
        raise ValueError("cannot mix exact and float factors")
    steps = [Step((), Fraction(1))]
    for spec in specs:
        steps = [Step(a.offset + b.offset, a.weight * b.weight) for a in steps for b in spec.steps]
    m = tuple(mj for s in specs for mj in s.m)
    beta = tuple(b for s in specs for b in s.beta)
    return TorusSpec(len(m), m, StepDistribution(tuple(steps)), beta, specs[0].mode)


def product_kernel(specs: Sequence[TorusSpec], x: Sequence[Sequence[int]],
                   y: Sequence[Sequence[int]], n: int) -> KernelValue:
    """prod_i K_{X_i}(x_i, y_i; n) over the factor graphs."""
    if len(x) != len(specs) or len(y) != len(specs):
        raise ValueError("need one x and one y component per factor")
    if len({s.mode for s in specs}) != 1:
        raise ValueError("cannot mix exact and float factors")
    result = CycloNumber.rational(1) if specs[0].mode == EXACT else 1 + 0j
    for spec, xi, yi in zip(specs, x, y):
        xi = (xi,) if isinstance(xi, int) else xi
        yi = (yi,) if isinstance(yi, int) else yi
        result = result * images_kernel(spec, xi, yi, n)
    return result
