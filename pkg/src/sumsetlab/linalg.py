"""Fraction-free integer linear algebra for the exact geometry kernel.

Everything here operates on small dense matrices (dimension <= 7) with
Python-int entries, so results are exact regardless of magnitude.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence


def dot(a: Sequence, b: Sequence):
    s = 0
    for x, y in zip(a, b):
        s += x * y
    return s


def det_int(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (Bareiss elimination)."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if n == 3:
        a, b, c = rows[0]
        d, e, f = rows[1]
        g, h, i = rows[2]
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            row_i = m[i]
            row_k = m[k]
            factor = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - factor * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def rank_int(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix via fraction-free elimination."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    cols = len(m[0])
    rank = 0
    col = 0
    while rank < len(m) and col < cols:
        pivot_row = None
        for r in range(rank, len(m)):
            if m[r][col] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            col += 1
            continue
        m[rank], m[pivot_row] = m[pivot_row], m[rank]
        pv = m[rank][col]
        for r in range(rank + 1, len(m)):
            f = m[r][col]
            if f:
                m[r] = [pv * x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
        col += 1
    return rank


def solve_cramer(rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> Optional[tuple[list[int], int]]:
    """Solve an integer square system A x = rhs exactly.

    Returns (numerators, denominator) with denominator = det(A) > 0, the
    solution being numerators[i] / denominator; None when A is singular.
    """
    n = len(rows)
    den = det_int(rows)
    if den == 0:
        return None
    nums = []
    for j in range(n):
        m = [list(r) for r in rows]
        for i in range(n):
            m[i][j] = rhs[i]
        nums.append(det_int(m))
    if den < 0:
        den = -den
        nums = [-v for v in nums]
    return nums, den


def hyperplane_normal(points: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Integer normal to the affine hull of n points in Z^n (cofactor formula).

    The points must be affinely independent; for n = 1 (a single point) the
    normal is (1,).
    """
    n = len(points[0])
    if len(points) != n:
        raise ValueError("need exactly n points in R^n")
    base = points[0]
    edges = [[p[j] - base[j] for j in range(n)] for p in points[1:]]
    normal = []
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in edges]
        normal.append((-1) ** j * det_int(minor))
    return tuple(normal)


def affine_rank(points: Sequence[Sequence[int]]) -> int:
    """Dimension of the affine hull of a point set."""
    if not points:
        return -1
    base = points[0]
    rows = [[p[j] - base[j] for j in range(len(base))] for p in points[1:]]
    return rank_int(rows)


def solve_rational(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Optional[list[Fraction]]:
    """Exact Gaussian elimination over Fractions (small systems only)."""
    n = len(rows)
    m = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            return None
        m[col], m[pivot] = m[pivot], m[col]
        pv = m[col][col]
        m[col] = [v / pv for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]
