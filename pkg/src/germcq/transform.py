"""Group action and reduction of constraint germs.

The group acts by a linear source change ``phi`` together with a target
matrix whose blocks are ``C`` (inequalities), ``B`` (equalities mixed into
inequalities) and ``A`` (equalities).  The transformed germ is

    g'(x) = C g(phi^-1 x) + B(x) h(phi^-1 x),
    h'(x) = A(x) h(phi^-1 x).

``C`` must be a positive diagonal matrix times a permutation so that the
sign of every inequality is kept; ``A(0)`` must be invertible.  Only linear
``phi`` and constant ``C`` are supported.

A reduction drops inactive inequalities and restricts to the zero set of a
group of equalities with independent differentials.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .germ import ConstraintGerm
from .poly import Polynomial


@dataclass(frozen=True)
class KGElement:
    phi: tuple[tuple[Fraction, ...], ...]
    C: tuple[tuple[Fraction, ...], ...]
    B: tuple[tuple[Polynomial, ...], ...] = ()
    A: tuple[tuple[Polynomial, ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "phi", tuple(tuple(Fraction(v) for v in row) for row in self.phi))
        object.__setattr__(self, "C", tuple(tuple(Fraction(v) for v in row) for row in self.C))
        object.__setattr__(self, "B", tuple(tuple(row) for row in self.B))
        object.__setattr__(self, "A", tuple(tuple(row) for row in self.A))

    @classmethod
    def identity(cls, n: int, q: int, r: int) -> KGElement:
        eye = lambda m: [[int(i == j) for j in range(m)] for i in range(m)]
        zero = Polynomial.zero(n)
        one = Polynomial.constant(n, 1)
        return cls(
            eye(n),
            eye(q),
            [[zero] * r for _ in range(q)],
            [[one if i == j else zero for j in range(r)] for i in range(r)],
        )


def _check_inequality_block(C, q: int) -> None:
    if len(C) != q or any(len(row) != q for row in C):
        raise ValueError(f"C must be {q}x{q}")
    seen = set()
    for row in C:
        nonzero = [(j, v) for j, v in enumerate(row) if v != 0]
        if len(nonzero) != 1 or nonzero[0][1] <= 0:
            raise ValueError("C must be a positive diagonal matrix times a permutation")
        seen.add(nonzero[0][0])
    if len(seen) != q:
        raise ValueError("C must be a positive diagonal matrix times a permutation")


def apply(element: KGElement, germ: ConstraintGerm) -> ConstraintGerm:
    """Transform ``germ`` by ``element``; raises ``ValueError`` on bad shapes."""
    n, q, r = germ.n, germ.q, germ.r
    phi = element.phi
    if len(phi) != n or any(len(row) != n for row in phi):
        raise ValueError(f"phi must be {n}x{n}")
    try:
        inv = linalg.inverse(phi)
    except ValueError:
        raise ValueError("phi is not invertible") from None
    _check_inequality_block(element.C, q)
    B = element.B or tuple(() for _ in range(q))
    if r == 0:
        B = tuple(() for _ in range(q))
    if len(B) != q or any(len(row) != r for row in B):
        raise ValueError(f"B must be {q}x{r}")
    A = element.A
    if len(A) != r or any(len(row) != r for row in A):
        raise ValueError(f"A must be {r}x{r}")
    for row in B + A:
        for p in row:
            if p.nvars != n:
                raise ValueError("entries of A and B must be polynomials in n variables")
    if r and linalg.det([[p.constant_term() for p in row] for row in A]) == 0:
        raise ValueError("A(0) is not invertible")

    images = [Polynomial.linear(row) for row in inv] if n else []
    pull = (lambda p: p.substitute(images)) if n else (lambda p: p)
    g0 = [pull(p) for p in germ.g]
    h0 = [pull(p) for p in germ.h]
    g1 = []
    for i in range(q):
        acc = Polynomial.zero(n)
        for j in range(q):
            if element.C[i][j]:
                acc = acc + element.C[i][j] * g0[j]
        for j in range(r):
            acc = acc + B[i][j] * h0[j]
        g1.append(acc)
    h1 = []
    for i in range(r):
        acc = Polynomial.zero(n)
        for j in range(r):
            acc = acc + A[i][j] * h0[j]
        h1.append(acc)
    return ConstraintGerm(n, tuple(g1), tuple(h1))


@dataclass(frozen=True)
class ReductionPlan:
    drop_inequalities: tuple[int, ...] = ()  # 0-based indices into g
    eliminate_equalities: tuple[int, ...] = ()  # 0-based indices into h
    jet_order: int = 6


@dataclass(frozen=True)
class Reduction:
    germ: ConstraintGerm
    kept_variables: tuple[int, ...]  # original 0-based indices of the new coordinates
    exact: bool  # False when the substitution series was truncated
    embedding: tuple[Polynomial, ...] = field(default=())  # image of each original coordinate


def reduce(germ: ConstraintGerm, plan: ReductionPlan) -> Reduction:
    drop = sorted(set(plan.drop_inequalities))
    elim = sorted(set(plan.eliminate_equalities))
    for j in drop:
        if not 0 <= j < germ.q:
            raise ValueError(f"inequality index {j} out of range")
        if germ.g[j].constant_term() >= 0:
            raise ValueError(f"inequality g{j + 1} is active at the origin and cannot be dropped")
    for i in elim:
        if not 0 <= i < germ.r:
            raise ValueError(f"equality index {i} out of range")
    n = germ.n
    J = [germ.h[i].linear_part() for i in elim]
    if J and linalg.rank(J) < len(J):
        raise ValueError("the chosen equalities do not have independent differentials")
    kept_g = [p for j, p in enumerate(germ.g) if j not in drop]
    kept_h = [p for i, p in enumerate(germ.h) if i not in elim]
    if not elim:
        ident = tuple(Polynomial.variables(n))
        return Reduction(ConstraintGerm(n, tuple(kept_g), tuple(kept_h)), tuple(range(n)), True, ident)

    _, pivots = linalg.rref(J, n)
    rest = [j for j in range(n) if j not in pivots]
    m = len(rest)
    position = {j: t for t, j in enumerate(rest)}
    y = Polynomial.variables(m)
    Cinv = linalg.inverse([[row[p] for p in pivots] for row in J])
    hs = [germ.h[i] for i in elim]
    nonlinear = [p - Polynomial.linear(p.linear_part()) for p in hs]
    # J x = C x_P + J_R x_R; solve x_P = -C^-1 (J_R x_R + N(x)) by iteration
    lin_rest = [sum((row[j] * y[position[j]] for j in rest), Polynomial.zero(m)) for row in J]

    def images_for(xp: list[Polynomial]) -> list[Polynomial]:
        imgs = [None] * n
        for j in rest:
            imgs[j] = y[position[j]]
        for t, p in enumerate(pivots):
            imgs[p] = xp[t]
        return imgs

    def step(xp: list[Polynomial]) -> list[Polynomial]:
        imgs = images_for(xp)
        rhs = [lin_rest[i] + nonlinear[i].substitute(imgs, plan.jet_order) for i in range(len(elim))]
        return [
            -sum((Cinv[t][i] * rhs[i] for i in range(len(elim))), Polynomial.zero(m)).truncate(plan.jet_order)
            for t in range(len(pivots))
        ]

    xp = step([Polynomial.zero(m)] * len(pivots))
    for _ in range(plan.jet_order):
        nxt = step(xp)
        if nxt == xp:
            break
        xp = nxt
    imgs = images_for(xp)
    # a low-order residual settles inexactness without the full composition
    exact = all(p.substitute(imgs, 2 * plan.jet_order).is_zero() for p in hs)
    exact = exact and all(p.substitute(imgs).is_zero() for p in hs)
    order = None if exact else plan.jet_order
    new_g = tuple(p.substitute(imgs, order) for p in kept_g)
    new_h = tuple(p.substitute(imgs, order) for p in kept_h)
    return Reduction(ConstraintGerm(m, new_g, new_h), tuple(rest), exact, tuple(imgs))


def full_reduction_plan(germ: ConstraintGerm, jet_order: int = 6) -> ReductionPlan:
    """Drop every inactive inequality and a maximal independent set of equalities."""
    drop = tuple(j for j, p in enumerate(germ.g) if p.constant_term() < 0)
    chosen: list[int] = []
    rows: list[list[Fraction]] = []
    for i, p in enumerate(germ.h):
        cand = rows + [p.linear_part()]
        if linalg.rank(cand) == len(cand):
            rows = cand
            chosen.append(i)
    return ReductionPlan(drop, tuple(chosen), jet_order)


def full_reduction(germ: ConstraintGerm, jet_order: int = 6) -> Reduction:
    return reduce(germ, full_reduction_plan(germ, jet_order))


def pullback(germ: ConstraintGerm, matrix: Sequence[Sequence]) -> ConstraintGerm:
    """Compose every component with the linear map ``x -> M x``."""
    images = [Polynomial.linear(row) for row in matrix]
    return ConstraintGerm(
        len(matrix[0]), tuple(p.substitute(images) for p in germ.g), tuple(p.substitute(images) for p in germ.h)
    )
