"""Exact linear algebra over the rationals.

Matrices are lists of rows of ``Fraction``.  Everything here is plain
Gaussian elimination; the sizes that occur in constraint qualification
checks are tiny.  ``sparse_rank`` handles the larger, very sparse systems
that appear in codimension computations.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Hashable, Iterable, Sequence

Matrix = list[list[Fraction]]


def to_matrix(rows: Iterable[Iterable]) -> Matrix:
    return [[Fraction(v) for v in row] for row in rows]


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    A = to_matrix(rows)
    if ncols is None:
        ncols = len(A[0]) if A else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [v * inv for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> Matrix:
    """Basis of ``{x : A x = 0}`` as a list of vectors."""
    if not rows:
        basis = []
        for j in range(ncols):
            e = [Fraction(0)] * ncols
            e[j] = Fraction(1)
            basis.append(e)
        return basis
    R, pivots = rref(rows, ncols)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(A: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """One solution of ``A x = b`` or ``None`` if inconsistent."""
    ncols = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(R, pivots):
        x[p] = row[ncols]
    return x


def inverse(A: Sequence[Sequence]) -> Matrix:
    n = len(A)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    R, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(R) < n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in R]


def det(A: Sequence[Sequence]) -> Fraction:
    M = to_matrix(A)
    n = len(M)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        d *= M[c][c]
        for i in range(c + 1, n):
            if M[i][c]:
                f = M[i][c] / M[c][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return d


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    cols = list(zip(*B))
    return [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols] for row in A]


def matvec(A: Sequence[Sequence], x: Sequence) -> list[Fraction]:
    return [sum((a * b for a, b in zip(row, x)), Fraction(0)) for row in A]


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))


def primitive(v: Sequence) -> tuple[Fraction, ...]:
    """Scale a rational vector to coprime integers (sign kept)."""
    v = [Fraction(x) for x in v]
    if not any(v):
        return tuple(v)
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return tuple(Fraction(x // g) for x in ints)


def sparse_rank(vectors: Iterable[dict[Hashable, Fraction]], order: dict[Hashable, int]) -> int:
    """Exact rank of a family of sparse vectors.

    ``order`` ranks the coordinates; each vector is reduced against the
    pivots found so far, always eliminating its smallest-ranked coordinate,
    until it vanishes or opens a new pivot.
    """
    pivots: dict[Hashable, dict[Hashable, Fraction]] = {}
    for vec in vectors:
        v = {k: Fraction(c) for k, c in vec.items() if c}
        while v:
            lead = min(v, key=order.__getitem__)
            piv = pivots.get(lead)
            if piv is None:
                inv = 1 / v[lead]
                pivots[lead] = {k: c * inv for k, c in v.items()}
                break
            f = v[lead]
            for k, c in piv.items():
                nv = v.get(k, 0) - f * c
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
    return len(pivots)
