"""LICQ and MFCQ for arbitrary polynomial germs, decided exactly.

Both conditions only see the differentials at the origin of the active
inequalities and of the equalities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .germ import ConstraintGerm, active_set
from .lp import maximize


class InfeasibleGermError(ValueError):
    """The origin violates an inequality, so no constraint qualification applies."""


@dataclass(frozen=True)
class MFCQResult:
    holds: bool
    witness: tuple[Fraction, ...] | None = None

    def __bool__(self) -> bool:
        return self.holds


def _require_feasible(germ: ConstraintGerm) -> None:
    if not germ.feasible:
        bad = [j + 1 for j, p in enumerate(germ.g) if p.constant_term() > 0]
        raise InfeasibleGermError(f"the origin violates g{bad[0]} (g(0) > 0)")


def _jacobians(germ: ConstraintGerm):
    active = tuple(tuple(germ.g[j].linear_part()) for j in active_set(germ))
    eq = tuple(tuple(p.linear_part()) for p in germ.h)
    return active, eq


def licq(germ: ConstraintGerm) -> bool:
    _require_feasible(germ)
    active, eq = _jacobians(germ)
    rows = list(active) + list(eq)
    return linalg.rank(rows) == len(rows)


def mfcq(germ: ConstraintGerm) -> MFCQResult:
    _require_feasible(germ)
    active, eq = _jacobians(germ)
    return _mfcq_linear(germ.n, active, eq)


@lru_cache(maxsize=4096)
def _mfcq_linear(n: int, active, eq) -> MFCQResult:
    if eq and linalg.rank(eq) < len(eq):
        return MFCQResult(False)
    N = linalg.nullspace(list(eq), n)  # basis vectors of ker dh(0)
    if not active:
        return MFCQResult(True, tuple(Fraction(0) for _ in range(n)))
    m = len(N)
    if m == 0:
        return MFCQResult(False)
    # d = sum_k y_k N_k with y = y+ - y-; variables (y+, y-, t), all >= 0
    cols = list(zip(*N)) if N else []  # cols[i][k] = N_k[i]
    rows, rhs = [], []
    for grad in active:
        a = [linalg.dot(grad, N[k]) for k in range(m)]
        rows.append(a + [-v for v in a] + [Fraction(1)])
        rhs.append(Fraction(0))
    for i in range(n):
        a = list(cols[i])
        if not any(a):
            continue
        rows.append(a + [-v for v in a] + [Fraction(0)])
        rhs.append(Fraction(1))
        rows.append([-v for v in a] + a + [Fraction(0)])
        rhs.append(Fraction(1))
    rows.append([Fraction(0)] * (2 * m) + [Fraction(1)])
    rhs.append(Fraction(1))
    objective = [Fraction(0)] * (2 * m) + [Fraction(1)]
    result = maximize(objective, rows, rhs)
    t = result.value
    if result.status != "optimal" or t <= 0:
        return MFCQResult(False)
    y = [result.x[k] - result.x[m + k] for k in range(m)]
    d = tuple(sum((y[k] * N[k][i] for k in range(m)), Fraction(0)) for i in range(n))
    return MFCQResult(True, d)


def is_mf_vector(germ: ConstraintGerm, d) -> bool:
    """Exact check that ``d`` is an MF-vector of ``germ``."""
    active, eq = _jacobians(germ)
    if any(linalg.dot(row, d) != 0 for row in eq):
        return False
    return all(linalg.dot(row, d) < 0 for row in active)
