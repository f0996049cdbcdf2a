"""Spectral side of the twisted torus kernel: characters, eigenvalues, traces.

Nothing here builds the M x M adjacency matrix.  The characters
chi_n(x) = prod_j exp(2 pi i (n_j + beta_j) x_j / m_j) diagonalise the walk,
and lambda_n = sum_s pi(s) chi_n(s) is read off directly.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

from .arith import CycloNumber, format_rational
from .model import EXACT, LatticeVector, TorusSpec
from .torus import KernelValue, _require_exact_beta, images_kernel


@dataclass(frozen=True)
class SpectralDatum:
    index: LatticeVector
    eigenvalue: KernelValue


def spectral_conductor(spec: TorusSpec) -> int:
    """lcm(m_j * den(beta_j)): every character value lies in Q(zeta_N)."""
    n = 1
    for mj, bj in zip(spec.m, spec.beta):
        n = lcm(n, mj * Fraction(bj).denominator)
    return n


def _phase(spec: TorusSpec, idx: Sequence[int], x: Sequence[int]) -> Fraction:
    """sum_j (n_j + beta_j) x_j / m_j, so chi_n(x) = exp(2 pi i * phase)."""
    return sum(
        (Fraction(nj + bj) * xj / mj for nj, bj, xj, mj in zip(idx, spec.beta, x, spec.m)),
        Fraction(0),
    )


def _float_phase(spec: TorusSpec, idx: Sequence[int], x: Sequence[int]) -> float:
    return sum((nj + float(bj)) * xj / mj for nj, bj, xj, mj in zip(idx, spec.beta, x, spec.m))


def character_value(spec: TorusSpec, idx: Sequence[int], x: Sequence[int]) -> KernelValue:
    """chi_n^{m,beta}(x)."""
    _require_exact_beta(spec)
    if spec.mode == EXACT:
        n = spectral_conductor(spec)
        coeffs = [0] * n
        coeffs[int(_phase(spec, idx, x) * n) % n] = 1
        return CycloNumber(n, coeffs)
    return cmath.exp(2j * math.pi * _float_phase(spec, idx, x))


def _int_eigenvalue(spec: TorusSpec, idx: Sequence[int], n: int, int_w: Sequence[int]) -> CycloNumber:
    # den * lambda_idx with integer coefficients, as an element of Q(zeta_n)
    coeffs = [0] * n
    for step, w in zip(spec.steps, int_w):
        coeffs[int(_phase(spec, idx, step.offset) * n) % n] += w
    return CycloNumber(n, coeffs)


def eigenvalues(spec: TorusSpec) -> list[SpectralDatum]:
    """lambda_n for every n in G_m, in row-major residue order."""
    _require_exact_beta(spec)
    out = []
    if spec.mode == EXACT:
        n = spectral_conductor(spec)
        int_w, den = spec.steps.integer_weights()
        for idx in spec.residues():
            lam = _int_eigenvalue(spec, idx, n, int_w) * Fraction(1, den)
            out.append(SpectralDatum(idx, lam))
    else:
        for idx in spec.residues():
            lam = sum(
                float(s.weight) * cmath.exp(2j * math.pi * _float_phase(spec, idx, s.offset))
                for s in spec.steps
            )
            out.append(SpectralDatum(idx, lam))
    return out


def spectral_kernel(spec: TorusSpec, x: Sequence[int], y: Sequence[int], n: int) -> KernelValue:
    """(1/M) sum_n lambda_n^n chi_n(x) conj(chi_n(y))."""
    _require_exact_beta(spec)
    if n < 0:
        raise ValueError("n must be nonnegative")
    z = [a - b for a, b in zip(x, y)]
    if len(z) != spec.d:
        raise ValueError("x and y must have length d")
    if spec.mode == EXACT:
        cond = spectral_conductor(spec)
        int_w, den = spec.steps.integer_weights()
        total = CycloNumber(cond, [0])
        for idx in spec.residues():
            term = (_int_eigenvalue(spec, idx, cond, int_w) ** n).promote(cond)
            total = total + term.mul_root(int(_phase(spec, idx, z) * cond))
        return total * Fraction(1, spec.M * den**n)
    total = 0j
    for datum in eigenvalues(spec):
        total += datum.eigenvalue**n * cmath.exp(2j * math.pi * _float_phase(spec, datum.index, z))
    return total / spec.M


@dataclass
class IdentityReport:
    """Both sides of the spectral expansion of the twisted kernel."""

    lhs: CycloNumber
    rhs: CycloNumber
    equal: bool
    conductor: int
    diff: CycloNumber | None = None

    def to_json(self) -> dict:
        out = {
            "equal": self.equal,
            "conductor": self.conductor,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
        }
        if self.diff is not None:
            out["diff"] = self.diff.to_json()
        return out


def verify_main_identity(spec: TorusSpec, x: Sequence[int], y: Sequence[int], n: int) -> IdentityReport:
    """images_kernel(x, y; n) == spectral_kernel(x, y; n), compared exactly."""
    if spec.mode != EXACT:
        raise ValueError("exact verification needs an exact-mode spec")
    lhs = images_kernel(spec, x, y, n)
    rhs = spectral_kernel(spec, x, y, n)
    cond = lcm(lhs.conductor, rhs.conductor)
    lhs_c, rhs_c = lhs.promote(cond), rhs.promote(cond)
    equal = lhs_c == rhs_c
    return IdentityReport(lhs_c, rhs_c, equal, cond, None if equal else lhs_c - rhs_c)


def spectral_power_sum(spec: TorusSpec, n: int) -> KernelValue:
    """sum_n lambda_n^n, evaluated as M sum_k exp(-2 pi i k.beta) K_Y(k m, 0; n)."""
    _require_exact_beta(spec)
    if n < 0:
        raise ValueError("n must be nonnegative")
    value = images_kernel(spec, (0,) * spec.d, (0,) * spec.d, n)
    return value * spec.M


def eigenvalue_power_sum(spec: TorusSpec, n: int) -> KernelValue:
    """sum_n lambda_n^n computed directly from the eigenvalues."""
    _require_exact_beta(spec)
    if spec.mode == EXACT:
        cond = spectral_conductor(spec)
        int_w, den = spec.steps.integer_weights()
        total = CycloNumber(cond, [0])
        for idx in spec.residues():
            total = total + _int_eigenvalue(spec, idx, cond, int_w) ** n
        return total * Fraction(1, den**n)
    return sum(d.eigenvalue**n for d in eigenvalues(spec))


@dataclass
class IntegralityReport:
    value: Fraction
    direct: CycloNumber
    rational: bool
    integral: bool
    agrees: bool
    scale: int = field(default=1)

    @property
    def ok(self) -> bool:
        return self.rational and self.integral and self.agrees

    def to_json(self) -> dict:
        return {
            "a": format_rational(self.value) if self.rational else None,
            "rational": self.rational,
            "integer": self.integral,
            "sides_agree": self.agrees,
            "scale": self.scale,
            "direct": self.direct.to_json(),
        }


def galois_integrality_check(spec: TorusSpec, n: int) -> IntegralityReport:
    """a = |S|^n sum_n lambda_n^n must be a rational integer for uniform weights and beta = 0."""
    if spec.mode != EXACT:
        raise ValueError("integrality is an exact-mode statement")
    if not spec.steps.is_uniform():
        raise ValueError("integrality check needs uniform step weights")
    if not spec.beta_is_zero():
        raise ValueError("integrality check needs beta = 0")
    scale = len(spec.steps) ** n
    trace = spectral_power_sum(spec, n) * scale
    direct = eigenvalue_power_sum(spec, n) * scale
    rational = trace.is_rational() and direct.is_rational()
    value = trace.to_rational() if trace.is_rational() else Fraction(0)
    return IntegralityReport(
        value=value,
        direct=direct,
        rational=rational,
        integral=rational and value.denominator == 1,
        agrees=trace == direct,
        scale=scale,
    )
