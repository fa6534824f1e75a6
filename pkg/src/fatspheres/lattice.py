"""Small exact integer/rational linear algebra used by the weighted and
polytope modules. Matrices are lists of rows; sizes stay tiny (n <= 6)."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Sequence


def vector_gcd(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = vector_gcd(v)
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    return tuple(int(x) // g for x in v)


def int_det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free (Bareiss) elimination."""
    m = [list(map(int, r)) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    if any(len(r) != n for r in m):
        raise ValueError("matrix is not square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def smith_invariants(rows: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors d1 | d2 | ... of an integer matrix.

    Computed from determinantal divisors (gcd of all k-minors); fine for the
    tiny matrices seen here.
    """
    a = [list(map(int, r)) for r in rows]
    if not a or not a[0]:
        return []
    nr, nc = len(a), len(a[0])
    out = []
    prev = 1
    for k in range(1, min(nr, nc) + 1):
        g = 0
        for rs in combinations(range(nr), k):
            for cs in combinations(range(nc), k):
                g = gcd(g, int_det([[a[i][j] for j in cs] for i in rs]))
                if g == prev:
                    break
            if g == prev:
                break
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def spans_direct_summand(vectors: Sequence[Sequence[int]]) -> bool:
    """True iff the vectors are linearly independent and span a direct summand of Z^n."""
    if not vectors:
        return True
    inv = smith_invariants(vectors)
    return len(inv) == len(vectors) and all(d == 1 for d in inv)


def solve_rational(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Unique solution of a square system over Q, or None when singular."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return None
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [m[r][n] for r in range(n)]


def rank_rational(rows: Sequence[Sequence]) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    rank = 0
    ncols = len(m[0])
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c] / m[rank][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def unimodular_completion(v: Sequence[int]) -> tuple[list[list[int]], list[list[int]]]:
    """Return (U, U_inv), integer and mutually inverse, with first row of U equal to v.

    v must be primitive.
    """
    n = len(v)
    if vector_gcd(v) != 1:
        raise ValueError("vector is not primitive")
    row = list(map(int, v))
    # column operations M with row @ M = e_1; track M and M^{-1}
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    minv = [[int(i == j) for j in range(n)] for i in range(n)]

    def add_col(src, dst, k):
        # column dst += k * column src  (M <- M E), inverse row op on M^{-1}
        for r in range(n):
            m[r][dst] += k * m[r][src]
        for c in range(n):
            minv[src][c] -= k * minv[dst][c]
        row[dst] += k * row[src]

    def swap_col(i, j):
        for r in range(n):
            m[r][i], m[r][j] = m[r][j], m[r][i]
        minv[i], minv[j] = minv[j], minv[i]
        row[i], row[j] = row[j], row[i]

    while sum(1 for x in row if x) > 1 or row[0] == 0:
        nz = [i for i in range(n) if row[i]]
        piv = min(nz, key=lambda i: abs(row[i]))
        for i in nz:
            if i != piv:
                add_col(piv, i, -(row[i] // row[piv]))
        if sum(1 for x in row if x) == 1:
            only = next(i for i in range(n) if row[i])
            if only != 0:
                swap_col(0, only)
    if row[0] == -1:
        for r in range(n):
            m[r][0] = -m[r][0]
        minv[0] = [-x for x in minv[0]]
        row[0] = 1
    # row_v @ M = e1  =>  v = e1 @ M^{-1}: first row of M^{-1} is v
    return minv, m
