"""Exact simplex method with Bland's rule.

Only the shape needed by the MFCQ test is supported:

    maximize c.x  subject to  A x <= b,  x >= 0,  with b >= 0,

so the slack basis is feasible from the start and no phase one is needed.
Bland's rule (smallest eligible index enters and leaves) rules out cycling.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" or "unbounded"
    value: Fraction | None
    x: tuple[Fraction, ...] | None


def maximize(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    m, n = len(A), len(c)
    c = [Fraction(v) for v in c]
    b = [Fraction(v) for v in b]
    if any(v < 0 for v in b):
        raise ValueError("right-hand side must be non-negative")
    # tableau rows: coefficients for n structural + m slack columns, then rhs
    T = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(m)] + [b[i]] for i, row in enumerate(A)]
    obj = [-v for v in c] + [Fraction(0)] * m + [Fraction(0)]
    basis = [n + i for i in range(m)]
    width = n + m
    while True:
        entering = next((j for j in range(width) if obj[j] < 0), None)
        if entering is None:
            break
        best = None
        for i in range(m):
            a = T[i][entering]
            if a > 0:
                ratio = T[i][-1] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return LPResult("unbounded", None, None)
        r = best[1]
        piv = T[r][entering]
        T[r] = [v / piv for v in T[r]]
        for i in range(m):
            if i != r and T[i][entering]:
                f = T[i][entering]
                T[i] = [a - f * p for a, p in zip(T[i], T[r])]
        f = obj[entering]
        obj = [a - f * p for a, p in zip(obj, T[r])]
        basis[r] = entering
    x = [Fraction(0)] * width
    for i, j in enumerate(basis):
        x[j] = T[i][-1]
    return LPResult("optimal", obj[-1], tuple(x[:n]))
