"""Closed-form evaluations of finite trigonometric sums.

Each evaluator computes the binomial side of an identity.  The matching
trigonometric side is described by a `TrigSum` and evaluated independently by
`brute_force_trig_sum`, which adds up exact cosine and sine powers in a
cyclotomic field.  Angles are passed as multiples of pi: `alpha=Fraction(1, 3)`
means pi/3.  A float alpha switches the evaluator to floating point.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, Sequence, Union

from .arith import CycloNumber, binomial, cos_pi, exp_2pi_i, exp_pi_i, sin_pi
from .model import DirichletCharacter, gauss_sum, is_primitive

Angle = Union[int, Fraction, float]
Value = Union[CycloNumber, complex]

COS = "cos"
SIN = "sin"


def _is_exact(*angles: Angle) -> bool:
    return all(isinstance(a, (int, Fraction)) for a in angles)


def _exp_pi(q: Angle, exact: bool) -> Value:
    """exp(i pi q)."""
    if exact:
        return exp_pi_i(Fraction(q))
    return cmath.exp(1j * math.pi * float(q))


def _zero(exact: bool) -> Value:
    return CycloNumber.rational(0) if exact else 0j


def _check_variant(variant: str) -> None:
    if variant not in (COS, SIN):
        raise ValueError(f"variant must be {COS!r} or {SIN!r}")


# ---------------------------------------------------------------------------
# evaluators (binomial side)


def cos_power_sum(m: int, n: int, beta: Angle = 0, sine: bool = False) -> Value:
    """sum_{j<m} cos^n(2 pi (j + beta) / m) as 2^-n m sum_k e^{-2 pi i k beta} C(n, (km+n)/2).

    The sum runs over |k| <= n/m with km + n even.  With `sine=True` the
    left side uses sin instead of cos, which is the same identity at
    beta - m/4.
    """
    if m < 1 or n < 0:
        raise ValueError("need m >= 1 and n >= 0")
    exact = _is_exact(beta)
    if sine:
        beta = Fraction(beta) - Fraction(m, 4) if exact else float(beta) - m / 4
    total = _zero(exact)
    acc: dict[Fraction, int] = {}
    bound = n // m
    for k in range(-bound, bound + 1):
        if (k * m + n) % 2:
            continue
        c = binomial(n, (k * m + n) // 2)
        if exact:
            phase = (-k * Fraction(beta)) % 1
            acc[phase] = acc.get(phase, 0) + c
        else:
            total += c * cmath.exp(-2j * math.pi * k * float(beta))
    scale = Fraction(m, 2**n)
    if exact:
        for phase, c in acc.items():
            total = total + exp_2pi_i(phase) * c
        return total * scale
    return total * float(scale)


def _additive_sum(m: int, b: int, r: int, alpha: Angle, n: int, variant: str) -> Value:
    # the binomial side without range checks on r
    exact = _is_exact(alpha)
    total = _zero(exact)
    for d in range(n + 1):
        if ((2 * d - n) * b - r) % m:
            continue
        term = _exp_pi(Fraction(alpha) * (n - 2 * d) if exact else float(alpha) * (n - 2 * d), exact)
        if variant == SIN:
            # exp(-i pi/2 (n - 2d)) = i^(2d - n)
            term = term * _exp_pi(Fraction(2 * d - n, 2) if exact else (2 * d - n) / 2, exact)
        total = total + term * binomial(n, d)
    return total * (Fraction(m, 2**n) if exact else m / 2**n)


def additive_twisted_cos_sum(m: int, b: int, r: int, alpha: Angle, n: int, sine: bool = False) -> Value:
    """sum_j e^{2 pi i r j/m} cos^n(2 pi j b/m + alpha) = (m/2^n) sum_{m | (2d-n)b - r} C(n,d) e^{i alpha (n-2d)}.

    With `sine=True` the cosine becomes a sine and each term picks up
    exp(-i pi (n - 2d) / 2).  Only nonprincipal characters r in 1..m-1 are
    accepted; the principal one is `cos_power_sum`.
    """
    if m < 2 or not 1 <= b <= m - 1 or not 1 <= r <= m - 1:
        raise ValueError("need m >= 2 and b, r in 1..m-1")
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _additive_sum(m, b, r, alpha, n, SIN if sine else COS)


def alternating_cos_S(n: int, m: int) -> Fraction:
    """S(n, m) = sum_{k=1}^m (-1)^k cos^{2n}(k pi / (2m+2)).

    Evaluated as -1/2 + (m+1)/4^n sum C(2n, d) over d in 0..2n with
    2(m+1) | d - n - (m+1).
    """
    if n < 1 or m < 1:
        raise ValueError("need n, m >= 1")
    period = 2 * (m + 1)
    total = sum(binomial(2 * n, d) for d in range(2 * n + 1) if (d - n - (m + 1)) % period == 0)
    return Fraction(-1, 2) + Fraction((m + 1) * total, 4**n)


def multiplicative_twisted_sum(chi: DirichletCharacter, b: int, alpha: Angle, n: int,
                               variant: str = COS) -> Value:
    """sum_j conj(chi(j)) f^n(2 pi j b/m + alpha) for a primitive character chi, f = cos or sin.

    Binomial side: m / (2^n tau(chi)) sum_r chi(r) sum_{m | (2d-n)b - r} C(n,d) e^{i alpha (n-2d)},
    with an extra i^(2d-n) per term in the sine case.
    """
    _check_variant(variant)
    if not is_primitive(chi):
        raise ValueError("the character must be primitive")
    m = chi.modulus
    if m < 2 or not 1 <= b <= m - 1:
        raise ValueError("need b in 1..m-1")
    exact = _is_exact(alpha)
    tau = gauss_sum(chi)
    total = _zero(exact)
    for r in range(m):
        if chi.exponent(r) is None:
            continue
        inner = _additive_sum(m, b, r, alpha, n, variant)
        total = total + (chi(r) * inner if exact else complex(chi(r)) * inner)
    if exact:
        return total / tau
    return total / complex(tau)


def product_cos_power_sum(m: Sequence[int], n: int, beta: Sequence[Angle] = ()) -> Value:
    """sum over l in G_m of prod_j cos^n(2 pi (l_j + beta_j)/m_j).

    The binomial side is 2^{-dn} m_1...m_d times a sum over k in Z^d of
    e^{-2 pi i k.beta} prod_j C(n, (n + k_j m_j)/2); it factors coordinatewise,
    so it is evaluated as a product of one-dimensional sums.
    """
    m = tuple(m)
    beta = tuple(beta) or (0,) * len(m)
    if len(beta) != len(m) or not m:
        raise ValueError("m and beta must have the same positive length")
    result: Value = CycloNumber.rational(1) if _is_exact(*beta) else 1 + 0j
    for mj, bj in zip(m, beta):
        result = result * cos_power_sum(mj, n, bj)
    return result


def linear_combo_power_sum(m1: int, m2: int, n: int, beta: Sequence[Angle] = (0, 0)) -> Value:
    """sum_{a<m1, b<m2} (cos(2 pi (a+beta_1)/m1) + cos(2 pi (b+beta_2)/m2))^n.

    Binomial side: (m1 m2 / 2^n) sum_u C(n,u) sum_{k1,k2} e^{2 pi i (beta_1 k1 + beta_2 k2)}
    C(u, (u + k1 m1)/2) C(n-u, (n-u + k2 m2)/2), where u counts horizontal
    steps of the nearest-neighbour walk and both lower indices must be integers.
    """
    if m1 < 1 or m2 < 1 or n < 0:
        raise ValueError("need m1, m2 >= 1 and n >= 0")
    b1, b2 = beta
    exact = _is_exact(b1, b2)
    acc: dict = {}
    for u in range(n + 1):
        cu = binomial(n, u)
        v = n - u
        for k1 in range(-(u // m1), u // m1 + 1):
            if (u + k1 * m1) % 2:
                continue
            c1 = cu * binomial(u, (u + k1 * m1) // 2)
            for k2 in range(-(v // m2), v // m2 + 1):
                if (v + k2 * m2) % 2:
                    continue
                c = c1 * binomial(v, (v + k2 * m2) // 2)
                if exact:
                    key = (k1 * Fraction(b1) + k2 * Fraction(b2)) % 1
                else:
                    key = (k1, k2)
                acc[key] = acc.get(key, 0) + c
    scale = Fraction(m1 * m2, 2**n)
    if exact:
        total = CycloNumber.rational(0)
        for phase, c in acc.items():
            total = total + exp_2pi_i(phase) * c
        return total * scale
    total = sum(c * cmath.exp(2j * math.pi * (k1 * float(b1) + k2 * float(b2))) for (k1, k2), c in acc.items())
    return total * float(scale)


def mixed_cos_sin_2d(m1: int, m2: int, a: int, b: int, k: int,
                     alpha1: Angle = 0, alpha2: Angle = 0) -> Value:
    """sum_{j<2m1, l<m2} (-1)^j cos^k(pi j a/m1 + alpha1) sin^k(2 pi l b/m2 + alpha2).

    Binomial side: (2 m1 m2 / 4^k) e^{ik(alpha1+alpha2)} sum C(k,d1) C(k,d2) i^{2 d2 - k}
    e^{-2i(alpha1 d1 + alpha2 d2)} over d1, d2 in 0..k with a(2d1-k)/m1 an odd
    integer and b(2d2-k)/m2 an integer.
    """
    if min(m1, m2, a, b) < 1 or k < 0:
        raise ValueError("m1, m2, a, b must be positive and k nonnegative")
    exact = _is_exact(alpha1, alpha2)
    good1 = [d for d in range(k + 1) if (a * (2 * d - k)) % m1 == 0 and (a * (2 * d - k) // m1) % 2]
    good2 = [d for d in range(k + 1) if (b * (2 * d - k)) % m2 == 0]
    total = _zero(exact)
    for d1 in good1:
        for d2 in good2:
            c = binomial(k, d1) * binomial(k, d2)
            if exact:
                # i^(2d2-k) e^{-2i(alpha1 d1 + alpha2 d2)} as exp(i pi q)
                q = Fraction(2 * d2 - k, 2) - 2 * (Fraction(alpha1) * d1 + Fraction(alpha2) * d2)
            else:
                q = (2 * d2 - k) / 2 - 2 * (float(alpha1) * d1 + float(alpha2) * d2)
            total = total + _exp_pi(q, exact) * c
    if exact:
        return total * exp_pi_i(k * (Fraction(alpha1) + Fraction(alpha2))) * Fraction(2 * m1 * m2, 4**k)
    return total * cmath.exp(1j * math.pi * k * (float(alpha1) + float(alpha2))) * (2 * m1 * m2 / 4**k)


# ---------------------------------------------------------------------------
# the trigonometric side


@dataclass(frozen=True)
class TrigSum:
    """A finite sum over a box of indices.

    `summand(idx)` returns a CycloNumber; the helpers `cos_power`,
    `sin_power` and `root` below build exact factors with memoisation.
    """

    ranges: tuple[range, ...]
    summand: Callable[[tuple[int, ...]], CycloNumber]
    label: str = ""


@lru_cache(maxsize=4096)
def _trig_power(kind: str, angle: Fraction, n: int) -> CycloNumber:
    base = cos_pi(angle) if kind == COS else sin_pi(angle)
    return base**n


def cos_power(angle_over_pi: Angle, n: int) -> CycloNumber:
    """cos^n(pi * angle_over_pi), exactly."""
    if not _is_exact(angle_over_pi):
        raise ValueError("exact trigonometric values need a rational multiple of pi")
    return _trig_power(COS, Fraction(angle_over_pi) % 2, n)


def sin_power(angle_over_pi: Angle, n: int) -> CycloNumber:
    """sin^n(pi * angle_over_pi), exactly."""
    if not _is_exact(angle_over_pi):
        raise ValueError("exact trigonometric values need a rational multiple of pi")
    return _trig_power(SIN, Fraction(angle_over_pi) % 2, n)


def root(q: Angle) -> CycloNumber:
    """exp(2 pi i q)."""
    if not _is_exact(q):
        raise ValueError("exact roots of unity need a rational argument")
    return exp_2pi_i(Fraction(q))


def brute_force_trig_sum(desc: TrigSum) -> CycloNumber:
    """Evaluate a TrigSum term by term in exact cyclotomic arithmetic."""
    total = CycloNumber.rational(0)
    for idx in product(*desc.ranges):
        total = total + desc.summand(idx)
    return total


# LHS descriptions matching each evaluator


def cos_power_lhs(m: int, n: int, beta: Angle = 0, sine: bool = False) -> TrigSum:
    power = sin_power if sine else cos_power
    return TrigSum((range(m),), lambda i: power(2 * (i[0] + Fraction(beta)) / m, n),
                   f"sum cos^{n}(2pi(j+beta)/{m})")


def additive_twisted_lhs(m: int, b: int, r: int, alpha: Angle, n: int, sine: bool = False) -> TrigSum:
    power = sin_power if sine else cos_power
    return TrigSum(
        (range(m),),
        lambda i: root(Fraction(r * i[0], m)) * power(Fraction(2 * i[0] * b, m) + Fraction(alpha), n),
        "additive twisted sum",
    )


def alternating_S_lhs(n: int, m: int) -> TrigSum:
    return TrigSum(
        (range(1, m + 1),),
        lambda i: cos_power(Fraction(i[0], 2 * m + 2), 2 * n) * (-1) ** i[0],
        f"S({n},{m})",
    )


def multiplicative_lhs(chi: DirichletCharacter, b: int, alpha: Angle, n: int, variant: str = COS) -> TrigSum:
    _check_variant(variant)
    power = sin_power if variant == SIN else cos_power
    m = chi.modulus
    conj = chi.conjugate()
    return TrigSum(
        (range(m),),
        lambda i: conj(i[0]) * power(Fraction(2 * i[0] * b, m) + Fraction(alpha), n),
        "multiplicative twisted sum",
    )


def product_cos_lhs(m: Sequence[int], n: int, beta: Sequence[Angle] = ()) -> TrigSum:
    m = tuple(m)
    beta = tuple(Fraction(b) for b in beta) or (Fraction(0),) * len(m)

    def summand(idx):
        out = CycloNumber.rational(1)
        for lj, mj, bj in zip(idx, m, beta):
            out = out * cos_power(2 * (lj + bj) / mj, n)
        return out

    return TrigSum(tuple(range(mj) for mj in m), summand, "product of cosine powers")


def linear_combo_lhs(m1: int, m2: int, n: int, beta: Sequence[Angle] = (0, 0)) -> TrigSum:
    b1, b2 = (Fraction(b) for b in beta)
    return TrigSum(
        (range(m1), range(m2)),
        lambda i: (cos_power(2 * (i[0] + b1) / m1, 1) + cos_power(2 * (i[1] + b2) / m2, 1)) ** n,
        "power of a sum of two cosines",
    )


def mixed_2d_lhs(m1: int, m2: int, a: int, b: int, k: int, alpha1: Angle = 0, alpha2: Angle = 0) -> TrigSum:
    a1, a2 = Fraction(alpha1), Fraction(alpha2)
    return TrigSum(
        (range(2 * m1), range(m2)),
        lambda i: cos_power(Fraction(i[0] * a, m1) + a1, k) * sin_power(Fraction(2 * i[1] * b, m2) + a2, k)
        * (-1) ** i[0],
        "alternating cos^k sin^k double sum",
    )


__all__ = [
    "COS",
    "SIN",
    "TrigSum",
    "additive_twisted_cos_sum",
    "additive_twisted_lhs",
    "alternating_S_lhs",
    "alternating_cos_S",
    "brute_force_trig_sum",
    "cos_power",
    "cos_power_lhs",
    "cos_power_sum",
    "linear_combo_lhs",
    "linear_combo_power_sum",
    "mixed_2d_lhs",
    "mixed_cos_sin_2d",
    "multiplicative_lhs",
    "multiplicative_twisted_sum",
    "product_cos_lhs",
    "product_cos_power_sum",
    "root",
    "sin_power",
]
