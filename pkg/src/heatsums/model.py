"""Problem instances: tori, weighted symmetric step sets, twists, Dirichlet characters."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd, lcm
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .arith import (
    CycloNumber,
    divisors,
    euler_phi,
    factorize,
    format_rational,
    parse_rational,
    root_of_unity,
)

LatticeVector = tuple[int, ...]

EXACT = "exact"
FLOAT = "float"


@dataclass(frozen=True)
class Step:
    offset: LatticeVector
    weight: Fraction


@dataclass(frozen=True)
class StepDistribution:
    """Finite symmetric step set S with its probability weights."""

    steps: tuple[Step, ...]

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Sequence[int], object]]) -> "StepDistribution":
        return cls(tuple(Step(tuple(int(c) for c in off), parse_rational(w)) for off, w in pairs))

    @classmethod
    def uniform(cls, offsets: Iterable[Sequence[int]]) -> "StepDistribution":
        offsets = [tuple(int(c) for c in off) for off in offsets]
        w = Fraction(1, len(offsets))
        return cls(tuple(Step(off, w) for off in offsets))

    def __iter__(self):
        return iter(self.steps)

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def offsets(self) -> list[LatticeVector]:
        return [s.offset for s in self.steps]

    @property
    def weights(self) -> list[Fraction]:
        return [s.weight for s in self.steps]

    def maxima(self) -> tuple[int, ...]:
        """Per-coordinate maxima S_j = max{s_j : s in S} (nonnegative by symmetry)."""
        d = len(self.steps[0].offset)
        return tuple(max(max(s.offset[j] for s in self.steps), 0) for j in range(d))

    def integer_weights(self) -> tuple[list[int], int]:
        """Weights as integers over their least common denominator."""
        den = 1
        for w in self.weights:
            den = lcm(den, w.denominator)
        return [int(w * den) for w in self.weights], den

    def is_uniform(self) -> bool:
        return len(set(self.weights)) == 1


@dataclass(frozen=True)
class TorusSpec:
    """The Cayley graph C(Z^d / mZ^d, S, pi_S) twisted by exp(2 pi i beta . x).

    Offsets are kept as lifts in Z^d; beta holds Fractions in exact mode and
    floats in float mode.
    """

    d: int
    m: tuple[int, ...]
    steps: StepDistribution
    beta: tuple = ()
    mode: str = EXACT

    def __post_init__(self):
        if not self.beta:
            zero = Fraction(0) if self.mode == EXACT else 0.0
            object.__setattr__(self, "beta", (zero,) * self.d)

    @property
    def M(self) -> int:
        return math.prod(self.m)

    @property
    def exact(self) -> bool:
        return self.mode == EXACT

    def residues(self) -> Iterable[LatticeVector]:
        """G_m in row-major order, each coordinate in 0..m_j - 1."""
        return product(*(range(mj) for mj in self.m))

    def beta_is_zero(self) -> bool:
        return all(b == 0 for b in self.beta)

    def with_beta(self, beta: Sequence) -> "TorusSpec":
        return TorusSpec(self.d, self.m, self.steps, tuple(beta), self.mode)

    def to_dict(self) -> dict:
        if self.exact:
            beta = [b if isinstance(b, float) else format_rational(b) for b in self.beta]
        else:
            beta = [float(b) for b in self.beta]
        return {
            "d": self.d,
            "m": list(self.m),
            "steps": [{"offset": list(s.offset), "weight": format_rational(s.weight)} for s in self.steps],
            "beta": beta,
            "mode": self.mode,
        }

    @classmethod
    def from_dict(cls, obj: Mapping) -> "TorusSpec":
        """Build a spec from its JSON form without validating it."""
        mode = obj.get("mode", EXACT)
        m = tuple(int(v) for v in obj["m"])
        d = int(obj.get("d", len(m)))
        steps = StepDistribution.from_pairs((s["offset"], s["weight"]) for s in obj["steps"])
        raw_beta = obj.get("beta") or []
        if mode == FLOAT:
            beta = tuple(float(Fraction(b)) if isinstance(b, str) else float(b) for b in raw_beta)
        else:
            beta = tuple(_exact_beta(b) for b in raw_beta)
        return cls(d, m, steps, beta, mode)


def _exact_beta(b):
    if isinstance(b, float):
        # left as float so validation reports it
        return b
    return parse_rational(b)


def make_spec(m: Sequence[int], steps, beta: Sequence = (), mode: str = EXACT) -> TorusSpec:
    """Convenience constructor.

    `steps` is either a mapping offset -> weight, a list of (offset, weight)
    pairs, or a StepDistribution.  Integer offsets are accepted for d = 1.
    """
    m = tuple(int(v) for v in m)
    if isinstance(steps, Mapping):
        steps = list(steps.items())
    if not isinstance(steps, StepDistribution):
        steps = StepDistribution.from_pairs(
            ((off,) if isinstance(off, int) else off, w) for off, w in steps
        )
    if mode == EXACT:
        beta = tuple(b if isinstance(b, float) else parse_rational(b) for b in beta)
    else:
        beta = tuple(float(b) for b in beta)
    return TorusSpec(len(m), m, steps, beta, mode)


def simple_walk(m: Sequence[int], beta: Sequence = (), mode: str = EXACT) -> TorusSpec:
    """Nearest-neighbour walk with uniform weights on Z^d / mZ^d."""
    d = len(m)
    offsets = []
    for j in range(d):
        for sign in (1, -1):
            e = [0] * d
            e[j] = sign
            offsets.append(tuple(e))
    return make_spec(m, StepDistribution.uniform(offsets), beta, mode)


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    code: str
    message: str


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def codes(self) -> set[str]:
        return {v.code for v in self.violations}

    def add(self, code: str, message: str) -> None:
        self.violations.append(Violation(code, message))

    def to_json(self) -> dict:
        return {"valid": self.ok, "violations": [{"code": v.code, "message": v.message} for v in self.violations]}


class SpecError(ValueError):
    def __init__(self, report: ValidationReport):
        self.report = report
        msgs = "; ".join(v.message for v in report.violations)
        super().__init__(f"invalid spec: {msgs}")


def validate_spec(spec: TorusSpec) -> ValidationReport:
    """Check every structural constraint; never raises."""
    report = ValidationReport()
    if spec.d < 1:
        report.add("dimension", f"d must be positive, got {spec.d}")
    if len(spec.m) != spec.d:
        report.add("dimension", f"m has {len(spec.m)} entries, expected d = {spec.d}")
    for j, mj in enumerate(spec.m):
        if mj < 1:
            report.add("modulus", f"m[{j}] = {mj} is not positive")
    if spec.mode not in (EXACT, FLOAT):
        report.add("mode", f"unknown mode {spec.mode!r}")
    if len(spec.beta) != spec.d:
        report.add("beta", f"beta has {len(spec.beta)} entries, expected d = {spec.d}")
    if spec.mode == EXACT:
        for j, b in enumerate(spec.beta):
            if not isinstance(b, (int, Fraction)):
                report.add("beta", f"beta[{j}] = {b!r} is not rational; use float mode")
    else:
        for j, b in enumerate(spec.beta):
            if not math.isfinite(float(b)):
                report.add("beta", f"beta[{j}] is not finite")

    steps = spec.steps.steps
    if not steps:
        report.add("empty", "step set is empty")
        return report
    table: dict[LatticeVector, Fraction] = {}
    for s in steps:
        if len(s.offset) != spec.d:
            report.add("offset-dimension", f"offset {s.offset} does not have length {spec.d}")
        if s.weight <= 0:
            report.add("weight", f"weight of {s.offset} is not positive")
        if s.offset in table:
            report.add("duplicate", f"offset {s.offset} appears more than once")
        table[s.offset] = s.weight
    total = sum(s.weight for s in steps)
    if total != 1:
        report.add("weight-sum", f"weights sum to {format_rational(total)}, not 1")
    for off, w in table.items():
        neg = tuple(-c for c in off)
        if neg not in table:
            report.add("symmetry", f"offset {off} has no negative {neg}")
        elif table[neg] != w and off < neg:
            report.add("symmetry", f"weights of {off} and {neg} differ")
    return report


def load_spec(source) -> TorusSpec:
    """Read a spec from a path, JSON text or dict, rejecting invalid ones."""
    if isinstance(source, Mapping):
        obj = source
    elif isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        obj = json.loads(Path(source).read_text())
    else:
        obj = json.loads(source)
    try:
        spec = TorusSpec.from_dict(obj)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        report = ValidationReport()
        report.add("format", f"malformed spec: {exc}")
        raise SpecError(report) from exc
    report = validate_spec(spec)
    if not report.ok:
        raise SpecError(report)
    return spec


# ---------------------------------------------------------------------------
# Dirichlet characters


@dataclass(frozen=True)
class DirichletCharacter:
    """chi(a) = zeta_order^{exponents[a]}, or 0 where exponents[a] is None."""

    modulus: int
    order: int
    exponents: tuple

    def exponent(self, a: int):
        return self.exponents[a % self.modulus]

    def __call__(self, a: int) -> CycloNumber:
        e = self.exponent(a)
        if e is None:
            return CycloNumber.rational(0)
        return root_of_unity(self.order, e)

    def is_principal(self) -> bool:
        return self.order == 1

    def is_real(self) -> bool:
        return self.order <= 2

    def is_even(self) -> bool:
        return self(-1) == 1

    def conjugate(self) -> "DirichletCharacter":
        exps = tuple(None if e is None else (-e) % self.order for e in self.exponents)
        return DirichletCharacter(self.modulus, self.order, exps)

    def to_json(self) -> dict:
        return {"modulus": self.modulus, "order": self.order, "exponents": list(self.exponents)}


def _cyclic_factors(m: int) -> list[tuple[int, int]]:
    """Generators (as residues mod m) and orders of a cyclic decomposition of (Z/m)^x."""
    factors = []
    for p, e in factorize(m):
        q = p**e
        rest = m // q
        if p == 2:
            if e == 1:
                local = []
            elif e == 2:
                local = [(q - 1, 2)]
            else:
                local = [(q - 1, 2), (5, q // 4)]
        else:
            order = q - q // p
            g = next(g for g in range(2, q) if _is_generator(g, q, order))
            local = [(g, order)]
        for g, order in local:
            # lift to a residue that is g mod q and 1 mod the other prime powers
            lifted = g if rest == 1 else _crt(g, q, 1, rest)
            factors.append((lifted, order))
    return factors


def _is_generator(g: int, q: int, order: int) -> bool:
    if gcd(g, q) != 1:
        return False
    return all(pow(g, order // p, q) != 1 for p, _ in factorize(order))


def _crt(a: int, m1: int, b: int, m2: int) -> int:
    return (a + m1 * ((b - a) * pow(m1, -1, m2) % m2)) % (m1 * m2)


def enumerate_dirichlet_characters(m: int) -> list[DirichletCharacter]:
    """All phi(m) Dirichlet characters modulo m; the principal one comes first."""
    if m < 1:
        raise ValueError("modulus must be positive")
    factors = _cyclic_factors(m)
    orders = [o for _, o in factors]
    exponent = 1
    for o in orders:
        exponent = lcm(exponent, o)
    # discrete logs of every unit with respect to the chosen generators
    logs: dict[int, tuple[int, ...]] = {}
    for ts in product(*(range(o) for o in orders)):
        a = 1 % m
        for (g, _), t in zip(factors, ts):
            a = a * pow(g, t, m) % m
        logs[a] = ts
    if m == 1:
        logs = {0: ()}
    chars = []
    for choice in product(*(range(o) for o in orders)):
        table = []
        for r in range(m):
            ts = logs.get(r)
            if ts is None:
                table.append(None)
            else:
                table.append(sum(c * t * (exponent // o) for c, t, o in zip(choice, ts, orders)) % exponent)
        g = exponent
        for e in table:
            if e is not None:
                g = gcd(g, e)
        order = exponent // g
        chars.append(DirichletCharacter(m, order, tuple(None if e is None else e // g for e in table)))
    assert len(chars) == euler_phi(m)
    return chars


def is_primitive(chi: DirichletCharacter) -> bool:
    """True iff chi is not induced from a character of a proper divisor of its modulus."""
    m = chi.modulus
    units = [a for a in range(m) if chi.exponents[a] is not None]
    for d in divisors(m)[:-1]:
        if all(chi.exponents[a] == 0 for a in units if a % d == 1 % d):
            return False
    return True


def gauss_sum(chi: DirichletCharacter) -> CycloNumber:
    """tau(chi) = sum_r chi(r) exp(2 pi i r / m), exactly, at conductor lcm(m, order)."""
    m, order = chi.modulus, chi.order
    n = lcm(m, order)
    coeffs = [0] * n
    for r, e in enumerate(chi.exponents):
        if e is not None:
            coeffs[(e * (n // order) + r * (n // m)) % n] += 1
    return CycloNumber(n, coeffs)
