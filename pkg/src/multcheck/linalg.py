"""Exact linear algebra over Q on plain lists of ints / Fractions.

Rank and determinant use fraction-free (Bareiss) elimination on integer
matrices; kernels go through Fraction row reduction.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

Matrix = Sequence[Sequence[int]]


def _integerize(rows):
    out = []
    for row in rows:
        if all(isinstance(v, int) for v in row):
            out.append(list(row))
            continue
        fr = [Fraction(v) for v in row]
        den = lcm(*(f.denominator for f in fr)) if fr else 1
        out.append([int(f * den) for f in fr])
    return out


def rank(rows: Matrix) -> int:
    """Rank over Q of a matrix given as a list of rows."""
    a = _integerize(rows)
    if not a or not a[0]:
        return 0
    m, n = len(a), len(a[0])
    r = 0
    prev = 1
    for col in range(n):
        pivot = next((i for i in range(r, m) if a[i][col] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        p = a[r][col]
        for i in range(r + 1, m):
            ai = a[i]
            f = ai[col]
            ar = a[r]
            for j in range(col + 1, n):
                ai[j] = (p * ai[j] - f * ar[j]) // prev
            ai[col] = 0
        prev = p
        r += 1
        if r == m:
            break
    return r


def det(rows: Matrix) -> int | Fraction:
    """Exact determinant (Bareiss); integer input gives an integer result."""
    n = len(rows)
    if n == 0:
        return 1
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    scale = 1
    a = []
    for row in rows:
        if all(isinstance(v, int) for v in row):
            a.append(list(row))
        else:
            fr = [Fraction(v) for v in row]
            den = lcm(*(f.denominator for f in fr))
            scale *= den
            a.append([int(f * den) for f in fr])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        p = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (p * a[i][j] - a[i][k] * a[k][j]) // prev
        prev = p
    value = sign * a[n - 1][n - 1]
    return value if scale == 1 else Fraction(value, scale)


def nullspace(rows: Matrix, ncols: int) -> list[list[Fraction]]:
    """Basis of {v : A v = 0} for an m x ncols matrix A."""
    a = [[Fraction(v) for v in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(a)) if a[i][col] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = 1 / a[r][col]
        a[r] = [v * inv for v in a[r]]
        for i in range(len(a)):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for i, pcol in enumerate(pivots):
            v[pcol] = -a[i][fcol]
        basis.append(v)
    return basis
