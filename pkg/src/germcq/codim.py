"""Codimension of the group tangent space in truncated jet spaces.

The extended tangent space of a germ ``(g, h)`` is spanned over the ring
of germs by

    (a) the partial derivatives  d(g, h)/dx_j,
    (b) h_i * e_l  for every equality h_i and every component l,
    (c) g_j * e_j  for every inequality g_j.

Truncating at degree ``k`` turns this into a finite rational matrix; the
codimension at order ``k`` is the jet-space dimension minus its rank.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .germ import ConstraintGerm
from .linalg import sparse_rank
from .poly import Polynomial

FINITE = "FINITE"
GROWING = "GROWING"
UNDETERMINED = "UNDETERMINED"


def monomials(n: int, k: int) -> list[tuple[int, ...]]:
    """Exponents of total degree at most ``k``, lowest degree first."""
    if n == 0:
        return [()]

    def exact(deg, slots):
        if slots == 1:
            yield (deg,)
            return
        for a in range(deg, -1, -1):
            for rest in exact(deg - a, slots - 1):
                yield (a,) + rest

    return [e for deg in range(k + 1) for e in exact(deg, n)]


@dataclass(frozen=True)
class JetSpace:
    n: int
    q: int
    r: int
    k: int

    @property
    def dimension(self) -> int:
        return (self.q + self.r) * comb(self.n + self.k, self.k)


def _shifted(p: Polynomial, m: tuple[int, ...], k: int):
    """Terms of ``x^m * p`` of degree at most ``k``."""
    dm = sum(m)
    for e, c in p.items():
        if sum(e) + dm <= k:
            yield tuple(a + b for a, b in zip(e, m)), c


def tangent_generators(germ: ConstraintGerm, k: int) -> list[dict]:
    """Columns of the truncated tangent space as sparse ``{(component, exponent): coefficient}``."""
    if k < 1:
        raise ValueError("the truncation order must be at least 1")
    n, q = germ.n, germ.q
    comps = list(germ.g) + list(germ.h)
    mons = monomials(n, k)
    cols: list[dict] = []

    def add(col):
        if col:
            cols.append(col)

    # (a) partial derivatives
    partials = [[p.derivative(j) for p in comps] for j in range(n)]
    for j in range(n):
        for m in mons:
            col: dict = {}
            for i, dp in enumerate(partials[j]):
                for e, c in _shifted(dp, m, k):
                    col[(i, e)] = c
            add(col)
    # (b) equalities times every unit vector
    for hi in germ.h:
        for m in mons:
            terms = list(_shifted(hi, m, k))
            for l in range(len(comps)):
                add({(l, e): c for e, c in terms})
    # (c) each inequality in its own slot
    for j in range(q):
        for m in mons:
            add({(j, e): c for e, c in _shifted(germ.g[j], m, k)})
    return cols


def _order(germ: ConstraintGerm, k: int) -> dict:
    keys = [(i, e) for e in monomials(germ.n, k) for i in range(germ.q + germ.r)]
    return {key: t for t, key in enumerate(keys)}


def codim_at(germ: ConstraintGerm, k: int) -> int:
    space = JetSpace(germ.n, germ.q, germ.r, k)
    return space.dimension - sparse_rank(tangent_generators(germ, k), _order(germ, k))


@dataclass
class CodimReport:
    codims: dict[int, int]
    verdict: str
    value: int | None = None
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"codims": {str(k): v for k, v in sorted(self.codims.items())}, "verdict": self.verdict}
        if self.value is not None:
            out["value"] = self.value
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def classify(codims: dict[int, int]) -> tuple[str, int | None]:
    last = [codims[k] for k in sorted(codims)[-3:]]
    if len(last) == 3 and last[0] == last[1] == last[2]:
        return FINITE, last[0]
    if len(last) == 3 and last[0] < last[1] < last[2]:
        return GROWING, None
    return UNDETERMINED, None


def codim_sequence(germ: ConstraintGerm, kmax: int = 8) -> CodimReport:
    if kmax < 3:
        raise ValueError("kmax must be at least 3")
    codims = {k: codim_at(germ, k) for k in range(1, kmax + 1)}
    verdict, value = classify(codims)
    return CodimReport(codims, verdict, value)


def descriptor_report(d, kmax: int = 8) -> CodimReport:
    """Codimension report for a table class, compared with its listed value."""
    from .germ import class_spec, descriptor_codim, realize

    report = codim_sequence(realize(d), kmax)
    if d.table == "REGULAR":
        return report
    listed = descriptor_codim(d)
    moduli = len(class_spec(d).alpha_keys)
    if moduli:
        report.notes.append(
            f"listed stratum codimension {listed}; plain codimension is expected to exceed it by the "
            f"{moduli} moduli, i.e. {listed + moduli}"
        )
        if report.verdict == FINITE and report.value != listed + moduli:
            report.notes.append(f"computed {report.value} differs from {listed + moduli}")
    else:
        report.notes.append(f"listed codimension {listed}")
        if report.verdict == FINITE and report.value != listed:
            report.notes.append(f"computed {report.value} differs from the listed value")
    return report
