"""Linearized cones and exact tangent-cone descriptors for the normal forms.

Every tangent cone of a catalog germ has the shape

    {d : d_i = 0 (i in Z), d_i <= 0 (i in N), w.d <= 0 (w in W), Q(d) ~ 0} minus E

where ``~`` is ``=`` or ``<=`` and the excluded set ``E`` is
``{d : d_j = 0 for j outside S, p(d) > 0 for every p in P}``.  Indices are
0-based throughout this module.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .cq_direct import _jacobians, _require_feasible
from .germ import ConstraintGerm, NormalFormDescriptor, realize, validate
from .polyhedral import PolyhedralCone, polar  # noqa: F401  (re-exported)
from .poly import Polynomial, evaluate, hessian

EQ0 = "EQ0"
LE0 = "LE0"


@dataclass(frozen=True)
class Exclusion:
    support: frozenset[int]
    signs: tuple[Polynomial, ...]

    def covers(self, d: Sequence[Fraction]) -> bool:
        if any(d[j] != 0 for j in range(len(d)) if j not in self.support):
            return False
        return all(evaluate(p, d) > 0 for p in self.signs)


@dataclass(frozen=True)
class ConeDescriptor:
    n: int
    zero_indices: frozenset[int] = frozenset()
    nonpos_indices: frozenset[int] = frozenset()
    linear_le: tuple[tuple[Fraction, ...], ...] = ()
    quad: Polynomial | None = None
    relation: str = EQ0
    excluded: Exclusion | None = None
    branch: str = ""

    def __post_init__(self):
        object.__setattr__(self, "zero_indices", frozenset(self.zero_indices))
        object.__setattr__(self, "nonpos_indices", frozenset(self.nonpos_indices) - frozenset(self.zero_indices))
        object.__setattr__(self, "linear_le", tuple(tuple(Fraction(x) for x in w) for w in self.linear_le))
        if self.relation not in (EQ0, LE0):
            raise ValueError(f"relation must be {EQ0} or {LE0}")

    @classmethod
    def origin(cls, n: int, branch: str = "") -> ConeDescriptor:
        return cls(n, frozenset(range(n)), branch=branch)

    @property
    def free_indices(self) -> list[int]:
        return [i for i in range(self.n) if i not in self.zero_indices]

    def is_origin(self) -> bool:
        return len(self.zero_indices) == self.n

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "zero": sorted(i + 1 for i in self.zero_indices),
            "nonpos": sorted(i + 1 for i in self.nonpos_indices),
        }
        if self.linear_le:
            out["le"] = [[str(x) for x in w] for w in self.linear_le]
        if self.quad is not None:
            out["quad"] = str(self.quad)
            out["relation"] = self.relation
        if self.excluded is not None:
            out["excluded"] = {
                "support": sorted(i + 1 for i in self.excluded.support),
                "positive": [str(p) for p in self.excluded.signs],
            }
        out["branch"] = self.branch
        return out


def member(c: ConeDescriptor, d: Sequence) -> bool:
    """Exact membership, including the excluded-set rule."""
    if len(d) != c.n:
        raise ValueError(f"vector has length {len(d)}, cone lives in R^{c.n}")
    d = [Fraction(x) for x in d]
    if any(d[i] != 0 for i in c.zero_indices):
        return False
    if any(d[i] > 0 for i in c.nonpos_indices):
        return False
    if any(linalg.dot(w, d) > 0 for w in c.linear_le):
        return False
    if c.quad is not None:
        v = evaluate(c.quad, d)
        if (c.relation == EQ0 and v != 0) or (c.relation == LE0 and v > 0):
            return False
    if c.excluded is not None and c.excluded.covers(d):
        return False
    return True


def linearized_cone(germ: ConstraintGerm) -> PolyhedralCone:
    _require_feasible(germ)
    active, eq = _jacobians(germ)
    return PolyhedralCone.from_h(germ.n, le=[w for w in active if any(w)], eq=[w for w in eq if any(w)])


# ---------------------------------------------------------------------------
# tangent cones of the normal forms


def _cbar(n: int, q: int, Q: Polynomial, branch: str, excluded=None) -> ConeDescriptor:
    """{d_1..d_q <= 0, Q(d) = 0}."""
    return _normalize(ConeDescriptor(n, frozenset(), frozenset(range(q)), (), Q, EQ0, excluded, branch))


def _dbar(n: int, l: int, q: int, Q: Polynomial, branch: str, excluded=None) -> ConeDescriptor:
    """{d_1..d_l = 0, d_{l+1}..d_{q-1} <= 0, Q(d') <= 0}."""
    return _normalize(
        ConeDescriptor(n, frozenset(range(l)), frozenset(range(l, q - 1)), (), Q, LE0, excluded, branch)
    )


def _axis(n: int, j: int, *signs: Polynomial) -> Exclusion:
    """Exclusion on the coordinate axis of the 1-based index ``j``."""
    return Exclusion(frozenset({j - 1}), tuple(signs))


def _restricted_form(c: ConeDescriptor) -> tuple[list[int], list[list[Fraction]]]:
    F = c.free_indices
    H = hessian(c.quad)
    return F, [[H[i][j] for j in F] for i in F]


def _definiteness(M: list[list[Fraction]]) -> str:
    """'zero', 'psd', 'nsd', 'pd', 'nd' or 'indefinite' for a symmetric matrix."""
    n = len(M)
    if all(v == 0 for row in M for v in row):
        return "zero"
    # exact symmetric elimination: the form is PSD iff every pivot is >= 0
    # and a zero pivot has a zero row left over
    def semidef(sign: int) -> bool:
        A = [[sign * v for v in row] for row in M]
        for k in range(n):
            if A[k][k] < 0:
                return False
            if A[k][k] == 0:
                if any(A[k][j] != 0 for j in range(k, n)):
                    return False
                continue
            for i in range(k + 1, n):
                f = A[i][k] / A[k][k]
                if f:
                    A[i] = [a - f * b for a, b in zip(A[i], A[k])]
        return True

    rk = linalg.rank(M)
    if semidef(1):
        return "pd" if rk == n else "psd"
    if semidef(-1):
        return "nd" if rk == n else "nsd"
    return "indefinite"


def _normalize(c: ConeDescriptor) -> ConeDescriptor:
    """Collapse a quadric that is definite on the free coordinates to {0}."""
    if c.quad is None or c.is_origin():
        return c
    F, M = _restricted_form(c)
    kind = _definiteness(M)
    if kind in ("pd", "nd") and (c.relation == EQ0 or kind == "pd"):
        return ConeDescriptor.origin(c.n, c.branch)
    return c


def tangent_cone_descriptor(d: NormalFormDescriptor) -> ConeDescriptor:
    problems = validate(d)
    if problems:
        raise ValueError(f"invalid descriptor {d.label}: " + "; ".join(problems))
    n, q = d.n, d.q
    germ = realize(d)
    x = {j + 1: Polynomial.var(n, j) for j in range(n)}
    tag = f"{d.table}{d.type_id}"

    if d.table == "REGULAR":
        return ConeDescriptor(n, frozenset(range(q, q + d.r)), frozenset(range(q)), branch="REGULAR:L+")

    if d.table == "T2":
        if d.l1 > 0:
            # MFCQ holds, so the tangent cone is the linearized cone
            w = [Fraction(0)] * n
            for j in range(d.l1):
                w[j] = Fraction(1)
            for j in range(d.l1, d.l):
                w[j] = Fraction(-1)
            return ConeDescriptor(n, frozenset(), frozenset(range(q - 1)), (tuple(w),), branch=f"{tag}:mfcq=L+")
        Q = germ.g[-1].homogeneous_part(2)
        return _t2_cone(d, Q, x, tag)

    Q = germ.h[0].homogeneous_part(2)
    if d.table == "T1":
        return _t1_cone(d, Q, x, tag)
    return _t3_cone(d, Q, x, tag)


def _all(signs, value) -> bool:
    return all(s == value for s in signs)


def _t1_cone(d, Q, x, tag) -> ConeDescriptor:
    n = d.n
    if d.type_id == "(1,k)":
        if d.k == 2:
            return _cbar(n, 0, Q, f"{tag}:k=2")
        tail = d.tail(2)
        if d.k % 2 == 0 and _all(tail, 1):
            return ConeDescriptor.origin(n, f"{tag}:k-even-all-plus")
        if d.k % 2 == 1 and len(set(tail)) == 1:
            delta = tail[0]
            return _cbar(n, 0, Q, f"{tag}:k-odd-uniform", _axis(n, 1, delta * x[1]))
        return _cbar(n, 0, Q, f"{tag}:generic")
    # (2)
    if _all(d.tail(4), 1):
        ex = Exclusion(frozenset({0, 1}), (x[1] ** 3 + d.e(2) * x[1] * x[2] ** 2,))
        return _cbar(n, 0, Q, f"{tag}:tail-all-plus", ex)
    return _cbar(n, 0, Q, f"{tag}:generic")


def _t2_cone(d, Q, x, tag) -> ConeDescriptor:
    n, q, l, k = d.n, d.q, d.l, d.k
    t = d.type_id
    D = lambda branch, ex=None: _dbar(n, l, q, Q, f"{tag}:{branch}", ex)
    if t == "(1,k)":
        if k == 2:
            return D("k=2")
        if _all(d.tail(q + 1), 1):
            return D("tail-all-plus", _axis(n, q, d.e(q) * x[q] ** k))
        return D("generic")
    if t == "(2)":
        if _all(d.tail(q + 2), 1):
            ex = Exclusion(frozenset({q - 1, q}), (x[q] ** 3 + d.e(q + 1) * x[q] * x[q + 1] ** 2,))
            return D("tail-all-plus", ex)
        return D("generic")
    if t == "(3,k)":
        if k == 2:
            return D("k=2")
        if _all(d.tail(q), 1):
            return D("tail-all-plus", _axis(n, q - 1, d.e(q - 1) * x[q - 1] ** k))
        return D("generic")
    if t == "(4,k)":
        if _all(d.tail(q + 1), 1):
            return D("tail-all-plus", _axis(n, q, -x[q], d.e(q) * x[q] ** k))
        return D("generic")
    if t == "(5)":
        if d.e(q - 1) == 1 and _all(d.tail(q + 1), 1):
            return D("all-plus", _axis(n, q, x[q]))
        return D("generic")
    if t == "(6)":
        return D("always")
    if t == "(7)":
        if d.e(q - 1) == -1 and d.e(q - 2) == 1 and _all(d.tail(q), 1):
            # every direction of the (q-2, q-1) plane with d_{q-1} < 0 goes
            ex = Exclusion(frozenset({q - 3, q - 2}), (-x[q - 1],))
            return D("negative-plane", ex)
        return D("generic")
    if t == "(8)":
        if d.e(q - 2) == -1 and d.e(f"{q - 1}'") == 1 and _all(d.tail(q), 1):
            return D("negative-axis", _axis(n, q - 2, -x[q - 2]))
        return D("generic")
    if t == "(9)":
        if d.e("0,1") == -1 and d.e("0,2") == -1 and _all(d.tail(q + 1), 1):
            return D("positive-axis", _axis(n, q, x[q]))
        return D("generic")
    if t == "(10)":
        return D("always")
    raise ValueError(f"no tangent cone rule for T2 {t}")


def _t3_cone(d, Q, x, tag) -> ConeDescriptor:
    n, k = d.n, d.k
    t = d.type_id
    C = lambda q, branch, ex=None: _cbar(n, q, Q, f"{tag}:{branch}", ex)
    if t == "(1,k)":
        if _all(d.tail(2), (-1) ** k):
            return ConeDescriptor.origin(n, f"{tag}:all-eps-(-1)^k")
        return C(1, "generic")
    if t == "(2)":
        if _all(d.tail(3), 1):
            return C(1, "tail-all-plus", _axis(n, 2, x[2]))
        return C(1, "generic")
    if t == "(3,k)":
        tail = d.tail(3)
        if k % 2 == 0 and _all(tail, 1):
            return C(1, "k-even-tail-plus", _axis(n, 2, -d.e(1) * x[2]))
        if k % 2 == 1 and d.e(1) == -1 and len(set(tail)) == 1:
            return C(1, "k-odd-uniform", _axis(n, 2, tail[0] * x[2]))
        return C(1, "generic")
    if t == "(4)":
        return C(2, "always")
    if t == "(5)":
        if d.e(2) == -1 and _all(d.tail(3), -1):
            return C(2, "all-minus", _axis(n, 1, -x[1]))
        return C(2, "generic")
    if t == "(6)":
        if d.e(2) == -1 and _all(d.tail(3), 1):
            return ConeDescriptor.origin(n, f"{tag}:origin")
        return C(2, "generic")
    if t == "(7)":
        tail = d.tail(4)
        if d.e(1) == -1 and d.e(2) == -1 and len(set(tail)) == 1:
            return C(2, "uniform-tail", _axis(n, 3, tail[0] * x[3]))
        return C(2, "generic")
    if t == "(8)":
        return C(3, "always")
    raise ValueError(f"no tangent cone rule for T3 {t}")


# ---------------------------------------------------------------------------
# polyhedral views and rational sampling


def _quad_kernel_rows(c: ConeDescriptor) -> list[tuple[Fraction, ...]]:
    H = hessian(c.quad)
    return [tuple(H[i][j] if j not in c.zero_indices else Fraction(0) for j in range(c.n)) for i in c.free_indices]


def _unit(n: int, i: int, s: int = 1) -> tuple[Fraction, ...]:
    return tuple(Fraction(s if j == i else 0) for j in range(n))


def pre_exclusion_polyhedron(c: ConeDescriptor) -> PolyhedralCone | None:
    """The descriptor without its excluded set, when that is polyhedral."""
    n = c.n
    le = [_unit(n, i) for i in sorted(c.nonpos_indices)] + list(c.linear_le)
    eq = [_unit(n, i) for i in sorted(c.zero_indices)]
    if c.quad is not None and not c.is_origin():
        _, M = _restricted_form(c)
        kind = _definiteness(M)
        if kind == "zero":
            pass
        elif kind in ("psd", "pd") or (kind in ("nsd", "nd") and c.relation == EQ0):
            eq += _quad_kernel_rows(c)
        elif kind in ("nsd", "nd") and c.relation == LE0:
            pass
        else:
            return None
    return PolyhedralCone.from_h(n, le=le, eq=eq)


def as_polyhedral(c: ConeDescriptor) -> PolyhedralCone | None:
    """Exact polyhedral form of the descriptor, or ``None`` if it is not
    recognisably polyhedral."""
    P = pre_exclusion_polyhedron(c)
    if P is None:
        return None
    if c.excluded is None:
        return P
    n = c.n
    S = c.excluded.support
    outside = [_unit(n, j) for j in range(n) if j not in S]
    P = P.with_v()
    PS = PolyhedralCone.from_h(n, le=list(P.le), eq=list(P.eq) + outside).with_v()
    gens = list(PS.rays) + list(PS.lineality) + [tuple(-x for x in v) for v in PS.lineality]
    if not gens:
        return P
    removed = [g for g in gens if c.excluded.covers(g)]
    if not removed:
        if PS.dimension() > 1:
            return None  # the sign set may still cut the face; stay conservative
        return P
    if PS.dimension() != 1 or P.dimension() != 1:
        return None
    kept = [g for g in gens if g not in removed]
    return PolyhedralCone.from_v(n, rays=kept).complete()


def _rational_zero(M: list[list[Fraction]], rng: random.Random) -> list[Fraction] | None:
    """A nonzero rational isotropic vector of the form, when easy to find."""
    m = len(M)
    for i in range(m):
        if M[i][i] == 0:
            return [Fraction(int(j == i)) for j in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            a, b, c = M[i][i], M[i][j], M[j][j]
            # a s^2 + 2 b s + c = 0 with the vector s e_i + e_j
            disc = b * b - a * c
            if disc < 0:
                continue
            root = _rational_sqrt(disc)
            if root is None:
                continue
            s = (-b + root) / a
            v = [Fraction(0)] * m
            v[i], v[j] = s, Fraction(1)
            return v
    for _ in range(200):
        v = [Fraction(rng.randint(-3, 3)) for _ in range(m)]
        if any(v) and _form(M, v, v) == 0:
            return v
    return None


def _rational_sqrt(x: Fraction) -> Fraction | None:
    from math import isqrt

    p, q = x.numerator, x.denominator
    rp, rq = isqrt(p), isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


def _form(M, u, v) -> Fraction:
    return sum((M[i][j] * u[i] * v[j] for i in range(len(u)) for j in range(len(v))), Fraction(0))


def rational_members(c: ConeDescriptor, count: int, seed: int = 0) -> list[tuple[Fraction, ...]]:
    """Up to ``count`` exact rational members of the descriptor (0 included)."""
    rng = random.Random(seed)
    n = c.n
    out: list[tuple[Fraction, ...]] = [tuple(Fraction(0) for _ in range(n))]
    P = pre_exclusion_polyhedron(c)
    F = c.free_indices
    if c.is_origin():
        return out
    if P is not None:
        P = P.with_v()
        rays, lin = list(P.rays), list(P.lineality)
        tries = 0
        while len(out) < count and tries < 20 * count and (rays or lin):
            tries += 1
            v = [Fraction(0)] * n
            for r in rays:
                a = rng.choice([0, 0, 1, 2, Fraction(1, 2), 3])
                v = [x + a * y for x, y in zip(v, r)]
            for b in lin:
                a = rng.randint(-3, 3)
                v = [x + a * y for x, y in zip(v, b)]
            if any(v) and member(c, v) and tuple(v) not in out:
                out.append(tuple(v))
        return out
    # non-polyhedral quadric on the free coordinates
    _, M = _restricted_form(c)
    half = [[v / 2 for v in row] for row in M]  # Q(d) = d^T half d on F
    p = _rational_zero(half, rng)
    tries = 0
    while len(out) < count and tries < 50 * count:
        tries += 1
        w = [Fraction(rng.randint(-4, 4)) for _ in F]
        for i, idx in enumerate(F):
            if idx in c.nonpos_indices and rng.random() < 0.7:
                w[i] = -abs(w[i])
        cand = None
        if c.relation == LE0 and _form(half, w, w) <= 0:
            cand = w
        elif p is not None:
            qw = _form(half, w, w)
            if qw != 0:
                s = -2 * _form(half, p, w) / qw
                cand = [a + s * b for a, b in zip(p, w)]
            elif _form(half, p, w) == 0:
                cand = w
        if cand is None or not any(cand):
            continue
        for sign in (1, -1):
            v = [Fraction(0)] * n
            for i, idx in enumerate(F):
                v[idx] = sign * cand[i]
            if member(c, v) and tuple(v) not in out:
                out.append(tuple(v))
                break
    return out
