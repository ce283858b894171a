"""Polyhedral cones in exact arithmetic.

A cone carries an H-representation ``{d : w.d <= 0 for w in le, w.d = 0 for
w in eq}``, a V-representation ``cone(rays) + span(lineality)``, or both.
Missing representations are computed by the double description method,
which is exact and meant for small dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .poly import format_rational

MAX_DIM = 12

Vector = tuple[Fraction, ...]


def _vec(v: Iterable) -> Vector:
    return tuple(Fraction(x) for x in v)


def _dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class PolyhedralCone:
    n: int
    le: tuple[Vector, ...] | None = None
    eq: tuple[Vector, ...] | None = None
    rays: tuple[Vector, ...] | None = None
    lineality: tuple[Vector, ...] | None = None

    def __post_init__(self):
        for name in ("le", "eq", "rays", "lineality"):
            rows = getattr(self, name)
            if rows is not None:
                rows = tuple(_vec(r) for r in rows)
                if any(len(r) != self.n for r in rows):
                    raise ValueError(f"{name} rows must have length {self.n}")
                object.__setattr__(self, name, rows)
        if (self.le is None) != (self.eq is None):
            object.__setattr__(self, "le", self.le or ())
            object.__setattr__(self, "eq", self.eq or ())
        if (self.rays is None) != (self.lineality is None):
            object.__setattr__(self, "rays", self.rays or ())
            object.__setattr__(self, "lineality", self.lineality or ())
        if self.le is None and self.rays is None:
            raise ValueError("a cone needs an H- or a V-representation")

    @classmethod
    def from_h(cls, n: int, le: Iterable = (), eq: Iterable = ()) -> PolyhedralCone:
        return cls(n, le=tuple(le), eq=tuple(eq))

    @classmethod
    def from_v(cls, n: int, rays: Iterable = (), lineality: Iterable = ()) -> PolyhedralCone:
        return cls(n, rays=tuple(rays), lineality=tuple(lineality))

    @classmethod
    def whole(cls, n: int) -> PolyhedralCone:
        eye = [[int(i == j) for j in range(n)] for i in range(n)]
        return cls(n, le=(), eq=(), rays=(), lineality=tuple(eye))

    @classmethod
    def origin(cls, n: int) -> PolyhedralCone:
        eye = [[int(i == j) for j in range(n)] for i in range(n)]
        return cls(n, le=(), eq=tuple(eye), rays=(), lineality=())

    @property
    def has_h(self) -> bool:
        return self.le is not None

    @property
    def has_v(self) -> bool:
        return self.rays is not None

    def with_v(self) -> PolyhedralCone:
        if self.has_v:
            return self
        rays, lin = double_description(self.n, self.le, self.eq)
        return PolyhedralCone(self.n, self.le, self.eq, rays, lin)

    def with_h(self) -> PolyhedralCone:
        if self.has_h:
            return self
        # the H-rows of cone(V) are the generators of its polar
        rays, lin = double_description(self.n, self.rays, self.lineality)
        return PolyhedralCone(self.n, rays, lin, self.rays, self.lineality)

    def complete(self) -> PolyhedralCone:
        return self.with_v().with_h()

    def canonical(self) -> PolyhedralCone:
        """Both representations, each computed minimally from the other."""
        c = self.with_v()
        rays, lin = c.rays, c.lineality
        le, eq = double_description(self.n, rays, lin)
        rays, lin = double_description(self.n, le, eq)
        return PolyhedralCone(self.n, le, eq, rays, lin)

    def contains(self, d: Sequence) -> bool:
        c = self.with_h()
        d = _vec(d)
        return all(_dot(w, d) <= 0 for w in c.le) and all(_dot(w, d) == 0 for w in c.eq)

    def generators(self) -> list[Vector]:
        """Rays together with both signs of every lineality vector."""
        c = self.with_v()
        return list(c.rays) + list(c.lineality) + [tuple(-x for x in v) for v in c.lineality]

    def dimension(self) -> int:
        c = self.with_v()
        return linalg.rank(list(c.rays) + list(c.lineality))

    def is_origin(self) -> bool:
        return self.dimension() == 0

    def to_json(self) -> dict:
        fmt = lambda rows: None if rows is None else [[format_rational(x) for x in r] for r in rows]
        return {"n": self.n, "le": fmt(self.le), "eq": fmt(self.eq), "rays": fmt(self.rays), "lineality": fmt(self.lineality)}

    @classmethod
    def from_json(cls, data: dict) -> PolyhedralCone:
        n = int(data["n"]) if "n" in data else None
        parse = lambda rows: None if rows is None else [tuple(Fraction(str(x)) for x in r) for r in rows]
        le, eq, rays, lin = (parse(data.get(k)) for k in ("le", "eq", "rays", "lineality"))
        if n is None:
            for rows in (le, eq, rays, lin):
                if rows:
                    n = len(rows[0])
                    break
        if n is None:
            raise ValueError("cannot infer the dimension of an empty cone description; give 'n'")
        return cls(n, le, eq, rays, lin)


def _check_dim(n: int) -> None:
    if n > MAX_DIM:
        raise DimensionError(f"double description is limited to dimension {MAX_DIM}, got {n}")


def _canonical_basis(vectors: Sequence[Vector], n: int) -> list[Vector]:
    if not vectors:
        return []
    R, _ = linalg.rref(vectors, n)
    return [linalg.primitive(r) for r in R]


def _project_out(v: Vector, basis: Sequence[Vector]) -> Vector:
    """Orthogonal projection of ``v`` onto the complement of ``span(basis)``."""
    if not basis:
        return v
    # solve the normal equations G c = B v
    G = [[_dot(a, b) for b in basis] for a in basis]
    rhs = [_dot(a, v) for a in basis]
    c = linalg.solve(G, rhs)
    return tuple(x - sum((ci * b[i] for ci, b in zip(c, basis)), Fraction(0)) for i, x in enumerate(v))


def double_description(n: int, le: Sequence[Vector], eq: Sequence[Vector]) -> tuple[tuple[Vector, ...], tuple[Vector, ...]]:
    """Generators ``(rays, lineality)`` of ``{le.d <= 0, eq.d = 0}``.

    Rays are primitive integer vectors orthogonal to the lineality space and
    sorted; the lineality basis is in reduced echelon form.
    """
    _check_dim(n)
    N = linalg.nullspace(list(eq), n) if eq else [list(e) for e in linalg.nullspace([], n)]
    m = len(N)
    if m == 0:
        return (), ()
    # inequalities in the parameters y with d = sum y_k N_k
    A = [tuple(_dot(w, Nk) for Nk in N) for w in le]
    A = [a for a in A if any(a)]
    lin: list[Vector] = [tuple(Fraction(int(i == j)) for j in range(m)) for i in range(m)]
    rays: list[tuple[Vector, frozenset]] = []
    done: list[Vector] = []
    for idx, a in enumerate(A):
        pi = next((i for i, l in enumerate(lin) if _dot(a, l) != 0), None)
        if pi is not None:
            pivot = lin[pi]
            s = _dot(a, pivot)
            if s > 0:
                pivot = tuple(-x for x in pivot)
                s = -s
            new_lin = []
            for i, l in enumerate(lin):
                if i == pi:
                    continue
                c = _dot(a, l) / s
                new_lin.append(tuple(x - c * p for x, p in zip(l, pivot)) if c else l)
            new_rays = []
            for r, z in rays:
                c = _dot(a, r) / s
                new_rays.append((tuple(x - c * p for x, p in zip(r, pivot)) if c else r, z | {idx}))
            zero_new = frozenset(i for i, b in enumerate(done) if _dot(b, pivot) == 0)
            new_rays.append((pivot, zero_new))
            lin, rays = new_lin, new_rays
            done.append(a)
            continue
        pos, neg, zer = [], [], []
        for r, z in rays:
            v = _dot(a, r)
            (pos if v > 0 else neg if v < 0 else zer).append((r, z, v))
        kept = [(r, z | {idx}) for r, z, _ in zer] + [(r, z) for r, z, _ in neg]
        for rp, zp, vp in pos:
            for rn, zn, vn in neg:
                common = zp & zn
                adjacent = True
                for r, z in rays:
                    if r is rp or r is rn:
                        continue
                    if common <= z:
                        adjacent = False
                        break
                if adjacent:
                    w = tuple(vp * x - vn * y for x, y in zip(rn, rp))
                    kept.append((linalg.primitive(w), common | {idx}))
        rays = kept
        done.append(a)
    lin_d = [tuple(sum((l[k] * N[k][i] for k in range(m)), Fraction(0)) for i in range(n)) for l in lin]
    lin_d = _canonical_basis(lin_d, n)
    out = set()
    for r, _ in rays:
        d = tuple(sum((r[k] * N[k][i] for k in range(m)), Fraction(0)) for i in range(n))
        d = _project_out(d, lin_d)
        if any(d):
            out.add(linalg.primitive(d))
    return tuple(sorted(out)), tuple(lin_d)


def polar(cone: PolyhedralCone) -> PolyhedralCone:
    """``{w : w.d <= 0 for all d in cone}`` with both representations."""
    c = cone.complete()
    return PolyhedralCone(c.n, le=c.rays, eq=c.lineality, rays=c.le, lineality=c.eq)


def subset(a: PolyhedralCone, b: PolyhedralCone) -> bool:
    _check_dim(a.n)
    if a.n != b.n:
        raise ValueError("cones live in different dimensions")
    return all(b.contains(g) for g in a.generators())


def cone_equal_polyhedral(a: PolyhedralCone, b: PolyhedralCone) -> bool:
    return subset(a, b) and subset(b, a)


def conic_hull(n: int, vectors: Iterable[Sequence]) -> PolyhedralCone:
    return PolyhedralCone.from_v(n, rays=[_vec(v) for v in vectors])
