"""Exact arithmetic: rationals, cyclotomic fields and combinatorial coefficients.

Elements of Q(zeta_N) are stored in the power basis modulo the N-th cyclotomic
polynomial, as an integer numerator vector over a common positive denominator.
That representation is canonical, so equality and "is this rational" are plain
coefficient checks.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd, lcm
from typing import Iterable, Sequence, Union

Rational = Fraction
FloatComplex = complex

Number = Union[int, Fraction]


# ---------------------------------------------------------------------------
# rationals


def parse_rational(text) -> Fraction:
    """Parse "p/q", "p", an int or a Fraction into a Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, str):
        return Fraction(text.strip())
    raise TypeError(f"cannot read a rational from {text!r}")


def format_rational(q: Number) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# elementary number theory


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorisation of n >= 1 as ((p, e), ...) with p increasing."""
    if n < 1:
        raise ValueError("factorize expects n >= 1")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def euler_phi(n: int) -> int:
    result = n
    for p, _ in factorize(n):
        result -= result // p
    return result


def radical(n: int) -> int:
    r = 1
    for p, _ in factorize(n):
        r *= p
    return r


# ---------------------------------------------------------------------------
# combinatorics


def binomial(n: int, k: int) -> int:
    """C(n, k), and 0 when k lies outside [0, n]."""
    if k < 0 or k > n or n < 0:
        return 0
    return comb(n, k)


def multinomial(n: int, parts: Sequence[int]) -> int:
    """n! / (a_1! ... a_l!) for parts summing to n."""
    if any(a < 0 for a in parts):
        raise ValueError("multinomial parts must be nonnegative")
    if sum(parts) != n:
        raise ValueError(f"parts {list(parts)} do not sum to {n}")
    result, left = 1, n
    for a in parts:
        result *= comb(left, a)
        left -= a
    return result


# ---------------------------------------------------------------------------
# integer polynomials (coefficient lists, lowest degree first)


def _poly_divexact(num: list[int], den: Sequence[int]) -> list[int]:
    """Quotient of num by the monic polynomial den; the remainder must vanish."""
    num = list(num)
    dd = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    q = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c:
            q[k - dd] = c
            base = k - dd
            for t in range(dd + 1):
                num[base + t] -= c * den[t]
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first.

    Obtained by dividing x^n - 1 by Phi_d for every proper divisor d of n.
    """
    if n < 1:
        raise ValueError("cyclotomic_polynomial expects n >= 1")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n)[:-1]:
        poly = _poly_divexact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _schoolbook(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _pack(a: Sequence[int], kb: int) -> int:
    # digits are taken mod 2^k; every negative digit borrowed one unit from the next slot
    k = 8 * kb
    mask = (1 << k) - 1
    val = int.from_bytes(b"".join((c & mask).to_bytes(kb, "little") for c in a), "little")
    borrow = bytearray(kb * (len(a) + 1))
    has_neg = False
    for i, c in enumerate(a):
        if c < 0:
            borrow[kb * (i + 1)] = 1
            has_neg = True
    if has_neg:
        val -= int.from_bytes(bytes(borrow), "little")
    return val


def _kronecker(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Product of integer polynomials through one big-integer multiplication."""
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    kb = (bound.bit_length() + 2 + 7) // 8
    k = 8 * kb
    n_out = len(a) + len(b) - 1
    prod = _pack(a, kb) * _pack(b, kb)
    half = 1 << (k - 1)
    prod += int.from_bytes(half.to_bytes(kb, "little") * n_out, "little")
    raw = prod.to_bytes(kb * n_out, "little")
    return [int.from_bytes(raw[i * kb:(i + 1) * kb], "little") - half for i in range(n_out)]


def poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    if min(len(a), len(b)) < 24:
        return _schoolbook(a, b)
    if not any(a) or not any(b):
        return [0] * (len(a) + len(b) - 1)
    return _kronecker(a, b)


@lru_cache(maxsize=None)
def _reducer(n: int) -> tuple[int, tuple[int, ...]]:
    r = radical(n)
    return n // r, cyclotomic_polynomial(r)


def reduce_mod_cyclotomic(n: int, coeffs: Sequence[int]) -> list[int]:
    """Reduce an integer polynomial modulo Phi_n; result has length phi(n).

    Uses Phi_n(x) = Phi_r(x^s) with r = rad(n), s = n / r, so the work splits
    into s independent reductions modulo the small polynomial Phi_r.
    """
    if len(coeffs) > n:
        folded = [0] * n
        for i, c in enumerate(coeffs):
            if c:
                folded[i % n] += c
    else:
        folded = list(coeffs) + [0] * (n - len(coeffs))
    s, phi_r = _reducer(n)
    deg = len(phi_r) - 1
    out = [0] * (s * deg)
    for i in range(s):
        col = folded[i::s]
        for k in range(len(col) - 1, deg - 1, -1):
            c = col[k]
            if c:
                base = k - deg
                for t in range(deg):
                    col[base + t] -= c * phi_r[t]
        for j in range(deg):
            out[i + s * j] = col[j]
    return out


# ---------------------------------------------------------------------------
# cyclotomic numbers


def _coerce_ints(values: Iterable) -> tuple[list[int], int]:
    fr = [Fraction(v) for v in values]
    den = 1
    for f in fr:
        den = lcm(den, f.denominator)
    return [f.numerator * (den // f.denominator) for f in fr], den


class CycloNumber:
    """An element of Q(zeta_N), zeta_N = exp(2 pi i / N).

    >>> i = root_of_unity(4, 1)
    >>> i * i == -1
    True
    """

    __slots__ = ("conductor", "_num", "_den")

    def __init__(self, conductor: int, coeffs: Iterable = ()):
        if conductor < 1:
            raise ValueError("conductor must be positive")
        nums, den = _coerce_ints(coeffs)
        self._set(conductor, reduce_mod_cyclotomic(conductor, nums), den)

    def _set(self, conductor: int, nums: list[int], den: int) -> None:
        g = gcd(den, *nums)
        if g > 1:
            nums = [c // g for c in nums]
            den //= g
        self.conductor = conductor
        self._num = tuple(nums)
        self._den = den

    @classmethod
    def _raw(cls, conductor: int, nums: list[int], den: int) -> "CycloNumber":
        # nums must already be reduced (length phi(conductor))
        obj = cls.__new__(cls)
        if den < 0:
            nums, den = [-c for c in nums], -den
        obj._set(conductor, nums, den)
        return obj

    @classmethod
    def from_group_ring(cls, conductor: int, coeffs: Sequence[Number]) -> "CycloNumber":
        """Image of sum coeffs[k] * x^k (any length, indices read mod N)."""
        return cls(conductor, coeffs)

    @classmethod
    def rational(cls, value: Number) -> "CycloNumber":
        q = Fraction(value)
        return cls._raw(1, [q.numerator], q.denominator)

    # -- accessors ----------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self._num[0], self._den)

    def __complex__(self) -> complex:
        n = self.conductor
        total = 0j
        for k, c in enumerate(self._num):
            if c:
                total += c * cmath.exp(2j * cmath.pi * k / n)
        return total / self._den

    # -- conductor changes --------------------------------------------------

    def promote(self, target: int) -> "CycloNumber":
        """The same value written at conductor `target` (a multiple of ours)."""
        n = self.conductor
        if target == n:
            return self
        if target % n:
            raise ValueError(f"cannot promote conductor {n} to {target}")
        step = target // n
        spread = [0] * ((len(self._num) - 1) * step + 1)
        for k, c in enumerate(self._num):
            spread[k * step] = c
        return CycloNumber._raw(target, reduce_mod_cyclotomic(target, spread), self._den)

    def _align(self, other: "CycloNumber") -> tuple["CycloNumber", "CycloNumber"]:
        if self.conductor == other.conductor:
            return self, other
        n = lcm(self.conductor, other.conductor)
        return self.promote(n), other.promote(n)

    @staticmethod
    def _wrap(value) -> "CycloNumber":
        if isinstance(value, CycloNumber):
            return value
        if isinstance(value, (int, Fraction)):
            return CycloNumber.rational(value)
        return NotImplemented

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        a, b = self._align(other)
        nums = [x * b._den + y * a._den for x, y in zip(a._num, b._num)]
        return CycloNumber._raw(a.conductor, nums, a._den * b._den)

    __radd__ = __add__

    def __neg__(self) -> "CycloNumber":
        return CycloNumber._raw(self.conductor, [-c for c in self._num], self._den)

    def __sub__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        if other.is_rational():
            c = other._num[0]
            return CycloNumber._raw(self.conductor, [x * c for x in self._num], self._den * other._den)
        if self.is_rational():
            return other * self
        a, b = self._align(other)
        prod = poly_mul(a._num, b._num)
        return CycloNumber._raw(a.conductor, reduce_mod_cyclotomic(a.conductor, prod), a._den * b._den)

    __rmul__ = __mul__

    def inverse(self) -> "CycloNumber":
        """Multiplicative inverse via the extended Euclidean algorithm with Phi_N."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return CycloNumber.rational(1 / self.to_rational())
        n = self.conductor
        s = _poly_inverse_mod([Fraction(c) for c in self._num],
                              [Fraction(c) for c in cyclotomic_polynomial(n)])
        s = [c * self._den for c in s]
        return CycloNumber(n, s)

    def __truediv__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int) -> "CycloNumber":
        if not isinstance(k, int):
            return NotImplemented
        base = self
        if k < 0:
            base, k = self.inverse(), -k
        result = CycloNumber.rational(1)
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def conjugate(self) -> "CycloNumber":
        """Complex conjugation, zeta -> zeta^{-1}."""
        n = self.conductor
        coeffs = [0] * n
        for k, c in enumerate(self._num):
            coeffs[(-k) % n] = c
        return CycloNumber._raw(n, reduce_mod_cyclotomic(n, coeffs), self._den)

    def mul_root(self, a: int) -> "CycloNumber":
        """self * zeta_N^a at this conductor."""
        n = self.conductor
        a %= n
        if a == 0:
            return self
        shifted = [0] * a + list(self._num)
        return CycloNumber._raw(n, reduce_mod_cyclotomic(n, shifted), self._den)

    # -- comparison and display ---------------------------------------------

    def __eq__(self, other) -> bool:
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._align(other)
        return a._den == b._den and a._num == b._num

    __hash__ = None  # equality spans conductors, so no cheap canonical hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        coeffs = ", ".join(format_rational(c) for c in self.coeffs)
        return f"CycloNumber({self.conductor}, [{coeffs}])"

    def to_json(self) -> dict:
        return {"conductor": self.conductor, "coeffs": [format_rational(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "CycloNumber":
        return cls(int(obj["conductor"]), [parse_rational(c) for c in obj["coeffs"]])


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    q = [Fraction(0)] * max(len(a) - db, 1)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] / lead
        if c:
            q[k - db] = c
            for t in range(db + 1):
                a[k - db + t] -= c * b[t]
    return q, _poly_trim(a[:db] if db else [])


def _poly_sub_mul(a: list[Fraction], q: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = list(a) + [Fraction(0)] * max(0, len(q) + len(b) - 1 - len(a))
    for i, qi in enumerate(q):
        if qi:
            for j, bj in enumerate(b):
                out[i + j] -= qi * bj
    return _poly_trim(out)


def _poly_inverse_mod(a: list[Fraction], modulus: list[Fraction]) -> list[Fraction]:
    r0, r1 = list(modulus), _poly_trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub_mul(s0, q, s1)
    if not r1:
        raise ZeroDivisionError("element is not invertible")
    c = r1[0]
    return [x / c for x in s1]


# ---------------------------------------------------------------------------
# roots of unity and trigonometric values


def root_of_unity(n: int, a: int = 1) -> CycloNumber:
    """exp(2 pi i a / n) as an element of Q(zeta_n)."""
    if n < 1:
        raise ValueError("root_of_unity expects n >= 1")
    coeffs = [0] * n
    coeffs[a % n] = 1
    return CycloNumber._raw(n, reduce_mod_cyclotomic(n, coeffs), 1)


def exp_2pi_i(q: Number) -> CycloNumber:
    """exp(2 pi i q) for rational q."""
    q = Fraction(q)
    return root_of_unity(q.denominator, q.numerator)


def exp_pi_i(q: Number) -> CycloNumber:
    """exp(pi i q) for rational q."""
    return exp_2pi_i(Fraction(q) / 2)


def cos_sin_of_rational_angle(p: int, q: int) -> tuple[CycloNumber, CycloNumber]:
    """(cos(2 pi p / q), sin(2 pi p / q)) at conductor lcm(q, 4)."""
    if q < 1:
        raise ValueError("q must be positive")
    n = lcm(q, 4)
    z = root_of_unity(n, p * (n // q))
    zinv = root_of_unity(n, -p * (n // q))
    minus_i = root_of_unity(n, -(n // 4))
    half = Fraction(1, 2)
    return (z + zinv) * half, (z - zinv) * minus_i * half


def cos_pi(q: Number) -> CycloNumber:
    """cos(pi q) for rational q."""
    q = Fraction(q)
    return cos_sin_of_rational_angle(q.numerator, 2 * q.denominator)[0]


def sin_pi(q: Number) -> CycloNumber:
    """sin(pi q) for rational q."""
    q = Fraction(q)
    return cos_sin_of_rational_angle(q.numerator, 2 * q.denominator)[1]


def as_complex(value) -> complex:
    return complex(value)
