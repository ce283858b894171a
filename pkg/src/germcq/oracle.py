"""Floating-point evidence for tangent-cone claims.

Two independent probes are offered.  ``estimate_tangent_directions`` samples
feasible points in shrinking balls and reports the directions they point in;
``witness_direction`` tries to build an explicit feasible sequence

    x_m = d/m + theta * v / m**(5/4)

that approaches a proposed direction ``d``.  Neither probe proves anything:
a missing witness is absence of evidence, never a verdict.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.optimize import brentq, minimize

from .cones import EQ0, LE0, ConeDescriptor, member, rational_members, tangent_cone_descriptor
from .germ import ConstraintGerm, NormalFormDescriptor, realize
from .poly import CompiledPolynomials, hessian

RADII = (1e-1, 1e-2, 1e-3, 1e-4)
REFINE_RADII = (1e-5, 1e-6, 1e-7, 1e-8, 1e-9, 1e-10, 1e-11, 1e-12)
TOL_REL = 1e-10
TOL_DIR = 1e-2
CLUSTER_ANGLE = math.radians(5.0)
M_SCHEDULE = (1e1, 1e2, 1e3, 1e4, 1e5, 1e6)
EXPONENT = 1.25
THETAS = (1e-3, 1e-2, 1e-1, 0.3, 1.0, 3.0)
FINAL_ANGLE = 0.1


class _Evaluator:
    """Float views of a germ: values, relative feasibility and projection."""

    def __init__(self, germ: ConstraintGerm):
        self.germ = germ
        self.n, self.q, self.r = germ.n, germ.q, germ.r
        self.g = CompiledPolynomials(germ.g, germ.n)
        self.h = CompiledPolynomials(germ.h, germ.n)
        polys = [p for p in germ.g if p.constant_term() == 0] + list(germ.h)
        self.linear = [np.array([float(c) for c in p.linear_part()]) for p in polys]
        self.hessians = [np.array([[float(v) for v in row] for row in hessian(p)]) for p in polys]

    def values(self, X):
        return self.g.values(X), self.h.values(X)

    def feasible(self, X) -> np.ndarray:
        X = np.atleast_2d(X)
        gv, hv = self.values(X)
        gm, hm = self.g.term_magnitudes(X), self.h.term_magnitudes(X)
        ok_g = (gv <= TOL_REL * gm).all(axis=1)
        ok_h = (np.abs(hv) <= TOL_REL * hm).all(axis=1)
        return ok_g & ok_h

    def project(self, X, iterations: int = 60) -> np.ndarray:
        """Damped minimum-norm Newton steps onto {violated g = 0, h = 0}."""
        X = np.array(X, dtype=float)
        for _ in range(iterations):
            gv, hv = self.values(X)
            gm, hm = self.g.term_magnitudes(X), self.h.term_magnitudes(X)
            viol = gv > TOL_REL * gm
            bad_h = np.abs(hv) > TOL_REL * hm
            todo = viol.any(axis=1) | bad_h.any(axis=1)
            if not todo.any():
                break
            idx = np.nonzero(todo)[0]
            Xs = X[idx]
            F = np.concatenate([np.where(viol[idx], gv[idx], 0.0), hv[idx]], axis=1)
            J = np.concatenate([self.g.jacobians(Xs) * viol[idx][:, :, None], self.h.jacobians(Xs)], axis=1)
            step = -np.einsum("kij,kj->ki", np.linalg.pinv(J), F)
            norm = np.linalg.norm(Xs, axis=1)
            length = np.linalg.norm(step, axis=1)
            scale = np.minimum(1.0, np.where(length > 0, norm / np.maximum(length, 1e-300), 1.0))
            X[idx] = Xs + step * scale[:, None]
        # coordinates that are numerically zero are snapped to exact zeros
        norms = np.linalg.norm(X, axis=1, keepdims=True)
        snapped = np.where(np.abs(X) < 1e-8 * norms, 0.0, X)
        use = self.feasible(snapped) & ~self.feasible(X)
        X[use] = snapped[use]
        return X


def _unit_rows(X: np.ndarray) -> np.ndarray:
    return X / np.linalg.norm(X, axis=1, keepdims=True)


def _angle(u: np.ndarray, v: np.ndarray) -> float:
    # half-angle form; acos loses half the digits near 0
    a, b = u / np.linalg.norm(u), v / np.linalg.norm(v)
    return 2.0 * math.atan2(float(np.linalg.norm(a - b)), float(np.linalg.norm(a + b)))


@dataclass
class DirectionEstimate:
    directions: list[tuple[float, ...]]
    radii_used: tuple[float, ...]
    seed: int
    feasible_counts: tuple[int, ...] = ()
    cluster_sizes: tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {
            "directions": [list(d) for d in self.directions],
            "radii": list(self.radii_used),
            "seed": self.seed,
            "feasible_counts": list(self.feasible_counts),
            "cluster_sizes": list(self.cluster_sizes),
        }


def _ball(rng: np.random.Generator, count: int, n: int, radius: float) -> np.ndarray:
    Z = rng.standard_normal((count, n))
    Z = _unit_rows(Z)
    return Z * (radius * rng.random(count) ** (1.0 / n))[:, None]


def _cluster(U: np.ndarray) -> list[tuple[int, int]]:
    """Greedy angular grouping; returns (seed index, size) pairs."""
    out = []
    remaining = np.arange(len(U))
    threshold = math.cos(CLUSTER_ANGLE)
    while remaining.size:
        i = remaining[0]
        close = U[remaining] @ U[i] >= threshold
        out.append((int(i), int(close.sum())))
        remaining = remaining[~close]
    return out


def _refine(ev: _Evaluator, U: np.ndarray) -> np.ndarray:
    """Continue each direction to smaller radii along the feasible set."""
    U = U.copy()
    for rho in REFINE_RADII:
        X = ev.project(rho * U)
        norms = np.linalg.norm(X, axis=1)
        ok = ev.feasible(X) & (norms > 0.1 * rho) & (norms < 10 * rho)
        V = np.zeros_like(U)
        V[ok] = X[ok] / norms[ok, None]
        ok &= (V * U).sum(axis=1) >= math.cos(CLUSTER_ANGLE)
        U[ok] = V[ok]
    return U


def estimate_tangent_directions(
    germ: ConstraintGerm,
    schedule: Sequence[float] = RADII,
    samples_per_radius: int = 20000,
    seed: int = 0,
    refine: bool = True,
) -> DirectionEstimate:
    if not germ.feasible:
        raise ValueError("the origin is not feasible")
    ev = _Evaluator(germ)
    children = np.random.SeedSequence(seed).spawn(len(schedule))
    counts = []
    smallest = None
    for rho, child in zip(schedule, children):
        rng = np.random.default_rng(child)
        X = ev.project(_ball(rng, samples_per_radius, germ.n, rho))
        norms = np.linalg.norm(X, axis=1)
        ok = ev.feasible(X) & (norms > 0) & (norms <= 2 * rho)
        counts.append(int(ok.sum()))
        if rho == min(schedule):
            smallest = X[ok]
    if smallest is None or len(smallest) == 0:
        return DirectionEstimate([], tuple(schedule), seed, tuple(counts), ())
    U = _unit_rows(smallest)
    groups = _cluster(U)
    reps = U[[i for i, _ in groups]]
    if refine:
        reps = _refine(ev, reps)
    return DirectionEstimate(
        [tuple(float(x) for x in u) for u in reps], tuple(schedule), seed, tuple(counts), tuple(s for _, s in groups)
    )


# ---------------------------------------------------------------------------
# distance from a direction to a cone descriptor


class _DescriptorGeometry:
    def __init__(self, c: ConeDescriptor):
        self.c = c
        self.n = c.n
        self.free = c.free_indices
        self.nonpos = [self.free.index(i) for i in sorted(c.nonpos_indices)]
        self.W = np.array([[float(w[i]) for i in self.free] for w in c.linear_le], dtype=float)
        self.W = self.W.reshape(len(c.linear_le), len(self.free))
        if c.quad is not None:
            H = hessian(c.quad)
            self.H = np.array([[float(H[i][j]) for j in self.free] for i in self.free])
        else:
            self.H = None
        if c.excluded is not None:
            self.support = sorted(c.excluded.support)
            self.signs = CompiledPolynomials(c.excluded.signs, c.n)
        else:
            self.support, self.signs = [], None

    def embed(self, y: np.ndarray) -> np.ndarray:
        d = np.zeros(self.n)
        d[self.free] = y
        return d

    def violation(self, u: np.ndarray) -> float:
        """Crude constraint violation of a unit vector, ignoring exclusions."""
        out = max((abs(u[i]) for i in self.c.zero_indices), default=0.0)
        y = u[self.free]
        if self.nonpos:
            out = max(out, float(np.max(y[self.nonpos])))
        if self.W.size:
            out = max(out, float(np.max(self.W @ y)))
        if self.H is not None:
            Qv = 0.5 * y @ self.H @ y
            if self.c.relation == LE0:
                Qv = max(Qv, 0.0)
            # smallest step that can change Q by |Qv|
            grad = np.linalg.norm(self.H @ y)
            lam = max(np.max(np.abs(np.linalg.eigvalsh(self.H))), 1e-300)
            step = 2 * abs(Qv) / (grad + math.sqrt(grad * grad + 2 * lam * abs(Qv))) if Qv else 0.0
            out = max(out, step)
        return out

    def in_excluded(self, d: np.ndarray) -> bool:
        if self.signs is None:
            return False
        off = [i for i in range(self.n) if i not in self.support]
        if off and np.max(np.abs(d[off])) > 1e-6:
            return False
        return bool((self.signs.values(d)[0] > 1e-9).all())

    def _solve(self, u: np.ndarray, start: np.ndarray, extra=None) -> np.ndarray | None:
        m = len(self.free)
        uf = u[self.free]
        cons = [{"type": "eq", "fun": lambda y: y @ y - 1.0, "jac": lambda y: 2 * y}]
        if self.W.size:
            cons.append({"type": "ineq", "fun": lambda y: -(self.W @ y), "jac": lambda y: -self.W})
        if self.H is not None:
            kind = "eq" if self.c.relation == EQ0 else "ineq"
            sign = 1.0 if kind == "eq" else -1.0
            cons.append({"type": kind, "fun": lambda y: sign * 0.5 * (y @ self.H @ y), "jac": lambda y: sign * (self.H @ y)})
        if extra is not None:
            cons.append(extra)
        bounds = [(None, 0.0) if i in self.nonpos else (None, None) for i in range(m)]
        res = minimize(
            lambda y: float((y - uf) @ (y - uf)),
            start,
            jac=lambda y: 2 * (y - uf),
            method="SLSQP",
            bounds=bounds,
            constraints=cons,
            options={"maxiter": 200, "ftol": 1e-12},
        )
        y = res.x
        if np.linalg.norm(y) == 0:
            return None
        d = self.embed(y / np.linalg.norm(y))
        return d if self.violation(d) < 1e-6 else None

    def distance(self, u: Sequence[float], rng: np.random.Generator) -> float:
        """Angle in radians from the unit vector ``u`` to the descriptor."""
        u = np.asarray(u, dtype=float)
        u = u / np.linalg.norm(u)
        if not self.free:
            return math.pi
        if self.violation(u) < 1e-9 and not self.in_excluded(u):
            return 0.0
        m = len(self.free)
        base = u[self.free].copy()
        base[self.nonpos] = np.minimum(base[self.nonpos], 0.0)
        starts = [base] if np.linalg.norm(base) > 1e-9 else []
        starts += [rng.standard_normal(m) for _ in range(6)]
        starts = [s / np.linalg.norm(s) for s in starts]
        variants = [None]
        if self.signs is not None:
            for k in range(self.signs.count):
                variants.append(self._sign_constraint(k))
        best = math.pi
        for extra in variants:
            for s in starts:
                d = self._solve(u, s, extra)
                # SLSQP may return a point that ignores the sign constraint
                if d is None or self.in_excluded(d):
                    continue
                best = min(best, _angle(u, d))
        return best

    def _sign_constraint(self, k: int) -> dict:
        def fun(y):
            return -self.signs.values(self.embed(y))[0, k]

        def jac(y):
            return -self.signs.jacobians(self.embed(y))[0, k][self.free]

        return {"type": "ineq", "fun": fun, "jac": jac}


def descriptor_distance(c: ConeDescriptor, u: Sequence[float], seed: int = 0) -> float:
    return _DescriptorGeometry(c).distance(u, np.random.default_rng(seed))


# ---------------------------------------------------------------------------
# explicit sequences


@dataclass
class Witness:
    found: bool
    v: tuple[float, ...] | None = None
    thetas: tuple[float, ...] = ()
    ms: tuple[float, ...] = ()
    angles: tuple[float, ...] = ()

    def __bool__(self) -> bool:
        return self.found

    def to_json(self) -> dict:
        if not self.found:
            return {"found": False}
        return {"found": True, "v": list(self.v), "theta": list(self.thetas), "m": list(self.ms), "angles": list(self.angles)}


def _candidates(ev: _Evaluator, d: np.ndarray) -> list[np.ndarray]:
    n = len(d)
    eye = np.eye(n)
    out = [np.zeros(n)]
    for lin, H in zip(ev.linear, ev.hessians):
        grad = lin + H @ d
        grad = grad - (grad @ d) * d
        if np.linalg.norm(grad) > 1e-12:
            grad = grad / np.linalg.norm(grad)
            out += [-grad, grad]
    for j in range(n):
        out += [eye[j], -eye[j]]
    for i in range(n):
        for j in range(i + 1, n):
            for a, b in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
                out.append((a * eye[i] + b * eye[j]) / math.sqrt(2))
    return out


def _converges(d: np.ndarray, X: np.ndarray) -> tuple[bool, tuple[float, ...]]:
    angles = tuple(_angle(d, x) if np.linalg.norm(x) > 0 else math.pi for x in X)
    tail = angles[-3:]
    ok = all(b <= a + 1e-12 for a, b in zip(tail, tail[1:])) and tail[-1] < FINAL_ANGLE
    return ok, angles


def _points(d, v, theta, ms):
    return np.array([d / m + theta * v / m**EXPONENT for m in ms])


def _witness_inequalities(ev: _Evaluator, d: np.ndarray, v: np.ndarray, ms) -> Witness | None:
    for theta in (0.0,) + THETAS:
        X = _points(d, v, theta, ms)
        ok = ev.feasible(X)
        if ok[-3:].all():
            conv, angles = _converges(d, X[-3:])
            if conv:
                return Witness(True, tuple(v), (theta,) * 3, tuple(ms[-3:]), angles)
        if not v.any():
            break
    return None


def _witness_equation(ev: _Evaluator, d: np.ndarray, v: np.ndarray, ms) -> Witness | None:
    grid = sorted({0.0} | set(THETAS) | {-t for t in THETAS})
    thetas, X = [], []
    for m in ms[-3:]:
        f = lambda t: ev.h.values(d / m + t * v / m**EXPONENT)[0, 0]
        vals = [f(t) for t in grid]
        roots = [t for t in grid if ev.feasible(d / m + t * v / m**EXPONENT)[0]]
        for (a, fa), (b, fb) in zip(zip(grid, vals), zip(grid[1:], vals[1:])):
            if fa * fb < 0:
                roots.append(brentq(f, a, b, xtol=1e-300, rtol=1e-15, maxiter=200))
        roots.sort(key=abs)
        chosen = None
        for t in roots:
            x = d / m + t * v / m**EXPONENT
            if ev.feasible(x)[0]:
                chosen = (t, x)
                break
        if chosen is None:
            return None
        thetas.append(chosen[0])
        X.append(chosen[1])
    conv, angles = _converges(d, np.array(X))
    if conv:
        return Witness(True, tuple(v), tuple(thetas), tuple(ms[-3:]), angles)
    return None


def _witness_projected(ev: _Evaluator, d: np.ndarray, ms) -> Witness | None:
    X = ev.project(np.array([d / m for m in ms[-3:]]))
    if ev.feasible(X).all():
        conv, angles = _converges(d, X)
        if conv:
            return Witness(True, None, (), tuple(ms[-3:]), angles)
    return None


def witness_direction(germ: ConstraintGerm, d: Sequence[float], budget: int | None = None, evaluator=None) -> Witness:
    """Search for a feasible sequence converging to the direction ``d``."""
    d = np.asarray(d, dtype=float)
    if not d.any():
        return Witness(True, tuple(0.0 for _ in d), (0.0,), (1.0,), (0.0,))
    d = d / np.linalg.norm(d)
    ev = evaluator or _Evaluator(germ)
    cands = _candidates(ev, d)
    if budget is not None:
        cands = cands[: max(1, budget)]
    ms = M_SCHEDULE
    for v in cands:
        if ev.r == 0:
            w = _witness_inequalities(ev, d, v, ms)
        elif ev.r == 1:
            w = _witness_equation(ev, d, v, ms)
        else:
            w = None
        if w is not None:
            return w
    # last resort: the Newton projection of d/m, for feasible sets of lower
    # dimension than the algebra suggests (e.g. two opposite inequalities)
    w = _witness_projected(ev, d, ms)
    return w if w is not None else Witness(False)


# ---------------------------------------------------------------------------
# agreement between a descriptor and the probes


def _excluded_directions(c: ConeDescriptor, count: int, seed: int) -> list[tuple[Fraction, ...]]:
    """Rational directions removed by the excluded set of ``c``."""
    if c.excluded is None:
        return []
    rng = np.random.default_rng(seed)
    S = sorted(c.excluded.support)
    relaxed = ConeDescriptor(c.n, c.zero_indices, c.nonpos_indices, c.linear_le, c.quad, c.relation, None, c.branch)
    out = []
    tries = 0
    while len(out) < count and tries < 50 * count:
        tries += 1
        d = [Fraction(0)] * c.n
        for i in S:
            d[i] = Fraction(int(rng.integers(-4, 5)))
        t = tuple(d)
        if any(t) and member(relaxed, t) and c.excluded.covers(t) and t not in out:
            out.append(t)
        if len(S) == 1 and tries > 20:
            break
    return out


def _as_unit(d) -> np.ndarray:
    v = np.array([float(x) for x in d])
    return v / np.linalg.norm(v)


@dataclass
class AgreementReport:
    label: str
    branch: str
    directions: int
    necessity_agree: int
    max_distance: float
    sufficiency_tested: int
    sufficiency_found: int
    excluded_tested: int
    excluded_found: int
    seed: int
    details: dict = field(default_factory=dict)

    @property
    def necessity_ok(self) -> bool:
        return self.necessity_agree == self.directions

    @property
    def sufficiency_rate(self) -> float:
        return 1.0 if self.sufficiency_tested == 0 else self.sufficiency_found / self.sufficiency_tested

    @property
    def agree(self) -> bool:
        return self.necessity_ok and self.sufficiency_rate >= 0.95 and self.excluded_found == 0

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "branch": self.branch,
            "agree": self.agree,
            "necessity": {"directions": self.directions, "agree": self.necessity_agree, "max_angle": self.max_distance},
            "sufficiency": {
                "tested": self.sufficiency_tested,
                "found": self.sufficiency_found,
                "rate": self.sufficiency_rate,
            },
            "excluded": {"tested": self.excluded_tested, "found": self.excluded_found},
            "seed": self.seed,
            **self.details,
        }


def cone_agreement(
    target: NormalFormDescriptor | ConstraintGerm,
    budget: int = 4000,
    seed: int = 0,
    cone: ConeDescriptor | None = None,
    directions: int = 24,
    label: str | None = None,
) -> AgreementReport:
    """Compare a tangent-cone descriptor with both sampling probes.

    ``budget`` is the number of samples per radius.  For a germ input the
    descriptor must be passed as ``cone``.
    """
    if isinstance(target, NormalFormDescriptor):
        germ = realize(target)
        cone = cone or tangent_cone_descriptor(target)
        label = label or target.label
    else:
        germ = target
        if cone is None:
            raise ValueError("a germ needs an explicit cone descriptor")
        label = label or str(germ)
    estimate = estimate_tangent_directions(germ, samples_per_radius=budget, seed=seed)
    geom = _DescriptorGeometry(cone)
    rng = np.random.default_rng(seed)
    distances = [geom.distance(u, rng) for u in estimate.directions]
    agree = sum(dist <= TOL_DIR for dist in distances)

    ev = _Evaluator(germ)
    members = [m for m in rational_members(cone, directions + 1, seed) if any(m)]
    found = sum(bool(witness_direction(germ, _as_unit(m), evaluator=ev)) for m in members)
    excluded = _excluded_directions(cone, 4, seed)
    excluded_found = sum(bool(witness_direction(germ, _as_unit(m), evaluator=ev)) for m in excluded)
    return AgreementReport(
        label,
        cone.branch,
        len(distances),
        agree,
        max(distances, default=0.0),
        len(members),
        found,
        len(excluded),
        excluded_found,
        seed,
        {"feasible_counts": list(estimate.feasible_counts)},
    )


# ---------------------------------------------------------------------------
# the branch suite


def branch_suite() -> list[NormalFormDescriptor]:
    """Minimal-dimension instances reaching every tangent-cone rule."""
    D = NormalFormDescriptor
    s = []
    # equality only
    s += [
        D("T1", "(1,2)", n=2, eps={"2": -1}),
        D("T1", "(1,2)", n=2, eps={"2": 1}),
        D("T1", "(1,4)", n=2, eps={"2": 1}),
        D("T1", "(1,3)", n=2, eps={"2": 1}),
        D("T1", "(1,3)", n=3, eps={"2": 1, "3": -1}),
        D("T1", "(1,4)", n=3, eps={"2": -1, "3": -1}),
        D("T1", "(2)", n=4, eps={"2": 1, "4": 1}),
        D("T1", "(2)", n=4, eps={"2": -1, "4": -1}),
    ]
    # inequalities only
    s += [
        D("T2", "(1,2)", n=3, q=2, l1=1, eps={"2": 1, "3": 1}),
        D("T2", "(1,2)", n=2, q=1, eps={"1": -1, "2": 1}),
        D("T2", "(1,3)", n=2, q=1, eps={"1": 1, "2": 1}),
        D("T2", "(1,3)", n=2, q=1, eps={"1": 1, "2": -1}),
        D("T2", "(2)", n=3, q=1, eps={"2": 1, "3": 1}),
        D("T2", "(2)", n=3, q=1, eps={"2": -1, "3": -1}),
        D("T2", "(3,2)", n=2, q=2, eps={"1": -1, "2": -1}),
        D("T2", "(3,3)", n=2, q=2, eps={"1": 1, "2": 1}),
        D("T2", "(3,3)", n=2, q=2, eps={"1": 1, "2": -1}),
        D("T2", "(4,3)", n=3, q=2, eps={"2": 1, "3": 1}),
        D("T2", "(4,4)", n=3, q=2, eps={"2": 1, "3": 1}),
        D("T2", "(4,3)", n=3, q=2, eps={"2": 1, "3": -1}),
        D("T2", "(5)", n=3, q=2, eps={"1": 1, "3": 1}),
        D("T2", "(5)", n=3, q=2, eps={"1": -1, "3": -1}),
        D("T2", "(6)", n=3, q=3, delta={"1": -1, "2": -1}, alpha={"1,2": 1}, eps={"3": -1}),
        D("T2", "(6)", n=3, q=3, delta={"1": 1, "2": -1}, alpha={"1,2": 1}, eps={"3": 1}),
        D("T2", "(7)", n=3, q=3, eps={"1": 1, "2'": -1, "2": -1, "3": 1}),
        D("T2", "(7)", n=3, q=3, eps={"1": -1, "2'": 1, "2": 1, "3": -1}),
        D("T2", "(8)", n=3, q=3, eps={"1": -1, "2": -1, "2'": 1, "3": 1}),
        D("T2", "(8)", n=3, q=3, eps={"1": 1, "2": -1, "2'": -1, "3": -1}),
        D("T2", "(9)", n=4, q=3, eps={"0,1": -1, "0,2": -1, "1,2": 1, "4": 1}),
        D("T2", "(9)", n=4, q=3, eps={"0,1": 1, "0,2": -1, "1,2": -1, "4": -1}),
        D("T2", "(10)", n=4, q=4, delta={"1": -1, "2": -1, "3": -1},
          alpha={"1,2": 0, "1,3": 0, "2,3": 0}, eps={"0": 1, "4": -1}),
    ]
    # one linear part with l1 > 0 per type, where the cone is the linearized one
    s += [
        D("T2", "(2)", n=4, q=2, l1=1, eps={"3": -1, "4": -1}),
        D("T2", "(3,2)", n=3, q=3, l1=1, eps={"2": -1, "3": -1}),
        D("T2", "(4,3)", n=4, q=3, l1=1, eps={"3": -1, "4": -1}),
        D("T2", "(5)", n=4, q=3, l1=1, eps={"2": -1, "4": -1}),
        D("T2", "(6)", n=4, q=4, l1=1, delta={"1": -1, "2": -1}, alpha={"1,2": 1}, eps={"4": -1}),
        D("T2", "(7)", n=4, q=4, l1=1, eps={"2": -1, "3": -1, "3'": -1, "4": -1}),
        D("T2", "(8)", n=4, q=4, l1=1, eps={"2": -1, "3": -1, "3'": -1, "4": 1}),
        D("T2", "(9)", n=5, q=4, l1=1, eps={"0,1": -1, "0,2": 1, "1,2": -1, "5": -1}),
    ]
    # mixed
    s += [
        D("T3", "(1,2)", n=2, eps={"2": 1}),
        D("T3", "(1,2)", n=2, eps={"2": -1}),
        D("T3", "(1,3)", n=3, eps={"2": 1, "3": -1}),
        D("T3", "(2)", n=3, eps={"3": 1}),
        D("T3", "(2)", n=3, eps={"3": -1}),
        D("T3", "(3,4)", n=3, eps={"1": 1, "3": 1}),
        D("T3", "(3,3)", n=3, eps={"1": -1, "3": -1}),
        D("T3", "(3,3)", n=3, eps={"1": 1, "3": -1}),
        D("T3", "(4)", n=3, delta={"1": 1, "2": -1}, alpha={"1,2": 0}, eps={"3": 1}),
        D("T3", "(5)", n=3, eps={"1": 1, "2": -1, "3": -1}),
        D("T3", "(5)", n=3, eps={"1": 1, "2": 1, "3": 1}),
        D("T3", "(6)", n=3, eps={"1": 1, "2": -1, "3": 1}),
        D("T3", "(6)", n=3, eps={"1": 1, "2": 1, "3": -1}),
        D("T3", "(7)", n=4, eps={"1": -1, "2": -1, "3": 1, "4": 1}),
        D("T3", "(7)", n=4, eps={"1": 1, "2": -1, "3": 1, "4": -1}),
        D("T3", "(8)", n=4, delta={"1": 1, "2": 1, "3": -1}, alpha={"1,2": 0, "1,3": 0, "2,3": 0},
          eps={"1": 1, "4": 1}),
    ]
    return s


def _agreement_task(args) -> AgreementReport:
    d, budget, seed, directions = args
    return cone_agreement(d, budget=budget, seed=seed, directions=directions)


def run_suite(
    descriptors: Sequence[NormalFormDescriptor], budget: int = 4000, seed: int = 0, directions: int = 24, jobs: int = 1
) -> list[AgreementReport]:
    """Agreement reports, each task seeded from ``(seed, index)``."""
    tasks = [
        (d, budget, int(np.random.SeedSequence([seed, i]).generate_state(1)[0]), directions)
        for i, d in enumerate(descriptors)
    ]
    if jobs <= 1:
        return [_agreement_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_agreement_task, tasks))
