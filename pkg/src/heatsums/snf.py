"""Smith normal form over Z and the congruence systems built on it."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd, lcm
from typing import Sequence

IntMatrix = list[list[int]]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def matvec(a: IntMatrix, v: Sequence[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def determinant(a: IntMatrix) -> int:
    """Bareiss fraction-free determinant of a square integer matrix."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class SnfResult:
    """U A V = D with U, V unimodular and D diagonal, q_1 | q_2 | ..."""

    U: IntMatrix
    V: IntMatrix
    D: IntMatrix

    @property
    def invariant_factors(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    @property
    def rank(self) -> int:
        return sum(1 for q in self.invariant_factors if q)

    def to_json(self) -> dict:
        return {"U": self.U, "V": self.V, "D": self.D, "invariant_factors": self.invariant_factors}


def smith_normal_form(a: IntMatrix) -> SnfResult:
    """Smith normal form with explicit unimodular transforms.

    Pivots on the entry of smallest nonzero absolute value; row operations are
    mirrored into U and column operations into V.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    d = [list(map(int, row)) for row in a]
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):  # row_dst += f * row_src
        d[dst] = [x + f * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, f):  # col_dst += f * col_src
        for row in d:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    for t in range(min(rows, cols)):
        while True:
            pivot = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if d[i][j] and (pivot is None or abs(d[i][j]) < abs(d[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            p = d[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if d[i][t]:
                    add_row(i, t, -(d[i][t] // p))
                    dirty |= d[i][t] != 0
            for j in range(t + 1, cols):
                if d[t][j]:
                    add_col(j, t, -(d[t][j] // p))
                    dirty |= d[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if d[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return SnfResult(u, v, d)


# ---------------------------------------------------------------------------
# congruences A z = x (mod m)


def _solve_linear_congruence(q: int, c: int, modulus: int) -> list[int]:
    """All y in [0, modulus) with q*y = c (mod modulus)."""
    g = gcd(q, modulus)
    if c % g:
        return []
    step = modulus // g
    if step == 1:
        return list(range(modulus))
    y0 = (c // g) * pow((q // g) % step, -1, step) % step
    return [y0 + k * step for k in range(g)]


def _scaled(a: IntMatrix, m: Sequence[int]) -> tuple[IntMatrix, int]:
    # row j multiplied by P / m_j turns "mod m_j" into a uniform "mod P"
    period = 1
    for mj in m:
        period = lcm(period, mj)
    return [[(period // mj) * x for x in row] for row, mj in zip(a, m)], period


def congruence_period(m: Sequence[int]) -> int:
    period = 1
    for mj in m:
        period = lcm(period, mj)
    return period


def _solutions(a: IntMatrix, m: Sequence[int], x: Sequence[int]) -> list[tuple[int, ...]]:
    if len(a) != len(m) or len(x) != len(m):
        raise ValueError("matrix rows, moduli and target must have the same length")
    l = len(a[0])
    scaled, period = _scaled(a, m)
    res = smith_normal_form(scaled)
    target = matvec(res.U, [(period // mj) * xj for xj, mj in zip(x, m)])
    per_coord = []
    for i in range(l):
        q = res.D[i][i] if i < len(res.D) else 0
        c = target[i] if i < len(target) else 0
        per_coord.append(_solve_linear_congruence(q, c, period))
    for i in range(l, len(target)):
        if target[i] % period:
            return []
    out = set()
    for y in product(*per_coord):
        z = tuple(c % period for c in matvec(res.V, y))
        out.add(z)
    return sorted(out)


def satisfies(a: IntMatrix, m: Sequence[int], z: Sequence[int], x: Sequence[int] | None = None) -> bool:
    """Direct membership test: A z = x (mod m) coordinatewise."""
    img = matvec(a, z)
    x = x if x is not None else [0] * len(m)
    return all((v - xj) % mj == 0 for v, xj, mj in zip(img, x, m))


def solve_torus_congruences(a: IntMatrix, m: Sequence[int]) -> list[tuple[int, ...]]:
    """Residue classes z in (Z/P)^l, P = lcm(m), with A z = 0 (mod m).

    After scaling row j by P / m_j the system reads A' z = 0 (mod P); with
    U A' V = diag(q_i) it decouples into q_i y_i = 0 (mod P), y = V^-1 z.
    Every returned class is checked against the original system.
    """
    sols = _solutions(a, m, [0] * len(m))
    for z in sols:
        if not satisfies(a, m, z):
            raise ArithmeticError(f"congruence solver produced a non-solution {z}")
    return sols


def solve_shifted_congruences(a: IntMatrix, m: Sequence[int], x: Sequence[int]) -> list[tuple[int, ...]]:
    """Residue classes z in (Z/P)^l with A z = x (mod m); empty when unsolvable."""
    sols = _solutions(a, m, list(x))
    for z in sols:
        if not satisfies(a, m, z, x):
            raise ArithmeticError(f"congruence solver produced a non-solution {z}")
    return sols
