"""Exact rational and integer linear algebra on small matrices (lists of rows)."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Vector = tuple


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def add(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def primitive(v: Sequence) -> tuple[int, ...]:
    """Smallest positive multiple of a rational vector that is an integer vector."""
    v = [Fraction(a) for a in v]
    den = 1
    for a in v:
        den = den * a.denominator // math.gcd(den, a.denominator)
    ints = [int(a * den) for a in v]
    g = 0
    for a in ints:
        g = math.gcd(g, a)
    if g == 0:
        return tuple(ints)
    return tuple(a // g for a in ints)


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    m = [[Fraction(a) for a in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        m[r] = [a / piv for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[tuple[int, ...]]:
    """Primitive integer basis of {x : rows @ x = 0}."""
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(primitive(x))
    return basis


def in_span(v: Sequence, rows: Sequence[Sequence]) -> bool:
    if not any(v):
        return True
    if not rows:
        return False
    return rank(list(rows) + [list(v)]) == rank(rows)


def solve(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """Some solution x of rows @ x = rhs, or None."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    ncols = len(rows[0])
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[-1]
    return x


def column_reduce(A: Sequence[Sequence[int]], n: int) -> tuple[list[list[int]], int]:
    """Unimodular V (n x n) and r = rank(A) with A @ V having zero columns r..n-1.

    Integer column operations only (extended Euclid), so V is unimodular and
    its last n - r columns are a basis of the integer kernel of A.
    """
    M = [list(map(int, row)) for row in A]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def col_op(a: int, b: int, x: int, y: int, z: int, w: int) -> None:
        # (col_a, col_b) <- (x*col_a + y*col_b, z*col_a + w*col_b)
        for mat in (M, V):
            for row in mat:
                ca, cb = row[a], row[b]
                row[a], row[b] = x * ca + y * cb, z * ca + w * cb

    col = 0
    for row_i in range(len(M)):
        if col >= n:
            break
        for j in range(col + 1, n):
            a, b = M[row_i][col], M[row_i][j]
            if b == 0:
                continue
            if a == 0:
                col_op(col, j, 0, 1, 1, 0)
                continue
            g, s, t = _xgcd(a, b)
            # [s, -b/g; t, a/g] has determinant 1
            col_op(col, j, s, t, -b // g, a // g)
        if M[row_i][col] != 0:
            col += 1
    return V, col


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def transpose(M: Sequence[Sequence]) -> list[list]:
    return [list(c) for c in zip(*M)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    Bt = transpose(B)
    return [[dot(r, c) for c in Bt] for r in A]


def det(M: Sequence[Sequence]) -> Fraction:
    m = [[Fraction(a) for a in r] for r in M]
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            if f:
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return d


def inverse(M: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(M)
    aug = [list(map(Fraction, r)) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(M)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def integer_inverse(U: Sequence[Sequence[int]]) -> list[list[int]]:
    inv = inverse(U)
    out = []
    for row in inv:
        if any(a.denominator != 1 for a in row):
            raise ValueError("matrix is not unimodular")
        out.append([int(a) for a in row])
    return out


def lattice_basis_with_complement(directions: Sequence[Sequence[int]], n: int) -> tuple[list[list[int]], int]:
    """Unimodular U whose first k columns span (span_Q(directions) ∩ Z^n).

    Returns (U, k). Uses the integer kernel of the orthogonal complement, so
    the sublattice is saturated.
    """
    directions = [list(d) for d in directions if any(d)]
    k = rank(directions) if directions else 0
    perp = nullspace(directions, n) if directions else [
        tuple(int(i == j) for j in range(n)) for i in range(n)]
    V, r = column_reduce(perp, n)
    if n - r != k:
        raise ArithmeticError("rank mismatch while completing a lattice basis")
    order = list(range(r, n)) + list(range(r))
    U = [[V[i][j] for j in order] for i in range(n)]
    return U, k
