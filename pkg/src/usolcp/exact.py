"""Exact rational scalars and dense linear algebra.

All sign decisions downstream hinge on exact comparisons, so matrices and
vectors carry `fractions.Fraction` entries and never touch floats.  Solves
and determinants clear denominators row-wise and then run fraction-free
(Bareiss) elimination over the integers, which bounds intermediate entry
growth to minor-sized determinants.

Text form of a rational: "a/b" or plain integer "a", sign on the
numerator only.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

Rational = Fraction
Vector = tuple
Matrix = tuple

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


class SingularMatrixError(ValueError):
    """Raised when elimination finds no pivot; carries the offending column."""

    def __init__(self, pivot_column: int):
        super().__init__(f"matrix is singular: rank deficiency at column {pivot_column}")
        self.pivot_column = pivot_column


def parse_rational(s: str) -> Fraction:
    s = s.strip()
    if not _RATIONAL_RE.match(s):
        raise ValueError(f"bad rational literal {s!r}: expected 'a' or 'a/b' with sign on the numerator")
    return Fraction(s)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def as_vector(xs: Iterable) -> Vector:
    return tuple(Fraction(x) for x in xs)


def as_matrix(rows: Iterable[Iterable]) -> Matrix:
    m = tuple(tuple(Fraction(x) for x in row) for row in rows)
    if not m or not m[0]:
        raise ValueError("matrix must be nonempty")
    width = len(m[0])
    if any(len(row) != width for row in m):
        raise ValueError("matrix rows must have equal length")
    return m


def identity(n: int) -> Matrix:
    one, zero = Fraction(1), Fraction(0)
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def mat_vec(a: Matrix, x: Sequence) -> Vector:
    if len(a[0]) != len(x):
        raise ValueError("dimension mismatch")
    return tuple(sum(ai * xi for ai, xi in zip(row, x)) for row in a)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if len(a[0]) != len(b):
        raise ValueError("dimension mismatch")
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def _clear_row(row: Sequence[Fraction]) -> tuple:
    """Scale a row of rationals to integers; returns (int row, scale factor)."""
    denom = 1
    for x in row:
        denom = lcm(denom, x.denominator)
    return [int(x * denom) for x in row], denom


def _find_pivot(rows, k: int, col: int) -> int | None:
    for r in range(k, len(rows)):
        if rows[r][col] != 0:
            return r
    return None


def rat_det(a: Matrix) -> Fraction:
    """Exact determinant by fraction-free elimination."""
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant requires a square matrix")
    rows = []
    scale = 1
    for row in a:
        int_row, s = _clear_row([Fraction(x) for x in row])
        rows.append(int_row)
        scale *= s
    sign = 1
    prev = 1
    for k in range(n - 1):
        p = _find_pivot(rows, k, k)
        if p is None:
            return Fraction(0)
        if p != k:
            rows[k], rows[p] = rows[p], rows[k]
            sign = -sign
        pivot = rows[k][k]
        for i in range(k + 1, n):
            ri, rk = rows[i], rows[k]
            mult = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pivot - mult * rk[j]) // prev
            ri[k] = 0
        prev = pivot
    return Fraction(sign * rows[n - 1][n - 1], scale)


def rat_solve(a: Matrix, b: Sequence) -> Vector:
    """Solve a*x = b exactly; raises SingularMatrixError for singular a."""
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("solve requires a square matrix")
    if len(b) != n:
        raise ValueError("right-hand side length mismatch")
    rows = []
    for i in range(n):
        int_row, _ = _clear_row([Fraction(x) for x in a[i]] + [Fraction(b[i])])
        rows.append(int_row)
    prev = 1
    for k in range(n):
        p = _find_pivot(rows, k, k)
        if p is None:
            raise SingularMatrixError(k + 1)
        if p != k:
            rows[k], rows[p] = rows[p], rows[k]
        pivot = rows[k][k]
        for i in range(k + 1, n):
            ri, rk = rows[i], rows[k]
            mult = ri[k]
            for j in range(k + 1, n + 1):
                ri[j] = (ri[j] * pivot - mult * rk[j]) // prev
            ri[k] = 0
        prev = pivot
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(rows[i][n])
        for j in range(i + 1, n):
            acc -= rows[i][j] * x[j]
        x[i] = acc / rows[i][i]
    return tuple(x)
