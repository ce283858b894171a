"""The four constraint qualifications for every generic normal form.

Each class is decided from its signs and moduli alone.  The returned
``branch`` names the rule that produced the verdict, e.g.
``"T2(4,k):gcq-eps_q"``, so a disagreement can be traced to one case.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .germ import CLASSES, NormalFormDescriptor, validate

ALPHA_GRID = (Fraction(-3), Fraction(-1), Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(3))


@dataclass(frozen=True)
class CQVerdict:
    licq: bool
    mfcq: bool
    acq: bool
    gcq: bool
    branch: str = ""

    def as_tuple(self) -> tuple[bool, bool, bool, bool]:
        return (self.licq, self.mfcq, self.acq, self.gcq)

    def hierarchy_ok(self) -> bool:
        return (not self.licq or self.mfcq) and (not self.mfcq or self.acq) and (not self.acq or self.gcq)

    def to_json(self) -> dict:
        return {"licq": self.licq, "mfcq": self.mfcq, "acq": self.acq, "gcq": self.gcq, "branch": self.branch}


def _all(signs: Iterable[int], value: int) -> bool:
    return all(s == value for s in signs)


def _mixed(signs: Iterable[int]) -> bool:
    return set(signs) == {1, -1}


def _some_negative(signs: Iterable[int]) -> bool:
    return any(s == -1 for s in signs)


def _dagger(d: NormalFormDescriptor) -> bool:
    if not _all((d.delta[k] for k in "123"), -1) or not _all(d.tail(d.q), -1):
        return False
    a = lambda i, j: d.a(min(i, j), max(i, j))
    for i in (1, 2, 3):
        j, k = (t for t in (1, 2, 3) if t != i)
        aij, aik, ajk = a(i, j), a(i, k), a(j, k)
        if aij <= 0 and aik <= 0 and ajk < 2:
            return True
        if 0 < aij < 2 and 0 < aik < 2:
            lhs = ajk + aij * aik / 2
            rhs_sq = (4 - aij**2) * (4 - aik**2) / 4
            # lhs < sqrt(rhs_sq), decided without square roots
            if lhs < 0 or lhs * lhs < rhs_sq:
                return True
    return False


def _t1(d: NormalFormDescriptor) -> tuple[bool, bool, str]:
    if d.type_id == "(1,k)":
        tail = d.tail(2)
        if d.k == 2:
            return False, _some_negative(tail), "T1(1,k):k=2"
        return False, _mixed(tail), "T1(1,k):k>=3"
    return False, _some_negative(d.tail(4)), "T1(2)"


def _t2(d: NormalFormDescriptor) -> tuple[bool, bool, str]:
    q, t = d.q, d.type_id
    e = d.e
    not_all_plus = lambda start: not _all(d.tail(start), 1)
    neg = lambda start: _all(d.tail(start), -1)
    if t == "(1,k)":
        acq = (e(q) == -1 and neg(q + 1)) or (d.k >= 3 and neg(q + 1))
        gcq = (d.k == 2 and (e(q) == -1 or not_all_plus(q + 1))) or not_all_plus(q + 1)
    elif t == "(2)":
        acq, gcq = neg(q + 2), not_all_plus(q + 2)
    elif t == "(3,k)":
        acq = (e(q - 1) == -1 and neg(q)) or (d.k >= 3 and neg(q))
        gcq = not_all_plus(q)
    elif t == "(4,k)":
        acq = False
        gcq = not_all_plus(q + 1) or e(q) == (-1) ** (d.k + 1)
    elif t == "(5)":
        acq = e(q - 1) == -1 and neg(q + 1)
        gcq = not_all_plus(q + 1)
    elif t == "(6)":
        acq = d.delta["1"] == -1 and d.delta["2"] == -1 and d.a(1, 2) < 2 and neg(q)
        gcq = not_all_plus(q)
    elif t == "(7)":
        acq = e(q - 2) == -1 and neg(q)
        gcq = not_all_plus(q)
    elif t == "(8)":
        acq = e(q - 1) == -1 and e(f"{q - 1}'") == -1 and neg(q)
        gcq = not_all_plus(q)
    elif t == "(9)":
        acq = False
        gcq = not_all_plus(q + 1) or e("0,1") == 1 or e("0,2") == 1
    elif t == "(10)":
        acq = _dagger(d)
        gcq = not_all_plus(q)
    else:
        raise ValueError(f"unknown type {t}")
    return acq, gcq, f"T2{t}:l1=0"


def _t3(d: NormalFormDescriptor) -> tuple[bool, bool, str]:
    t = d.type_id
    if t == "(1,k)":
        gcq = _mixed(d.tail(2))
    elif t == "(2)":
        gcq = _mixed(d.tail(3))
    elif t == "(3,k)":
        if d.k % 2 == 0:
            gcq = _some_negative(d.tail(3))
        else:
            gcq = d.e(1) == 1 or _mixed(d.tail(3))
    elif t in ("(4)", "(5)", "(6)"):
        gcq = _mixed(d.tail(3))
    elif t in ("(7)", "(8)"):
        gcq = _mixed(d.tail(4))
    else:
        raise ValueError(f"unknown type {t}")
    return False, gcq, f"T3{t}"


def decide(d: NormalFormDescriptor) -> CQVerdict:
    problems = validate(d)
    if problems:
        raise ValueError(f"invalid descriptor {d.label}: " + "; ".join(problems))
    if d.table == "REGULAR":
        return CQVerdict(True, True, True, True, "regular")
    if d.table == "T2" and d.l1 > 0:
        return CQVerdict(False, True, True, True, f"T2{d.type_id}:l1>0")
    rule = {"T1": _t1, "T2": _t2, "T3": _t3}[d.table]
    acq, gcq, branch = rule(d)
    verdict = CQVerdict(False, False, acq, gcq, f"{branch}:acq={int(acq)},gcq={int(gcq)}")
    assert verdict.hierarchy_ok(), d.label
    return verdict


# ---------------------------------------------------------------------------
# enumeration


def _signs(keys: list[str]) -> Iterator[dict[str, int]]:
    for combo in itertools.product((1, -1), repeat=len(keys)):
        yield dict(zip(keys, combo))


def _class_descriptors(table: str, type_id: str, n_max: int, q_max: int) -> Iterator[NormalFormDescriptor]:
    spec = CLASSES[table][type_id]
    qs = [spec.fixed_q] if spec.fixed_q is not None else range(spec.min_q, q_max + 1)
    for q in qs:
        if q > q_max:
            continue
        for n in range(spec.min_n(q), n_max + 1):
            keys = spec.eps_keys(q, n)
            ks = spec.k_range or (None,)
            l1s = range(0, (spec.l_of(q) + 1) // 2 + 1) if table == "T2" else (0,)
            for k, l1 in itertools.product(ks, l1s):
                for eps in _signs(keys):
                    for delta in _signs(list(spec.delta_keys)):
                        for alpha in itertools.product(ALPHA_GRID, repeat=len(spec.alpha_keys)):
                            d = NormalFormDescriptor(
                                table, type_id, n=n, q=q, k=k, l1=l1, eps=eps, delta=delta,
                                alpha=dict(zip(spec.alpha_keys, alpha)),
                            )
                            if not validate(d):
                                yield d


def catalog_descriptors(n_max: int, q_max: int, tables: Iterable[str] | None = None) -> list[NormalFormDescriptor]:
    """Every valid descriptor within the bounds, sorted by canonical key."""
    if n_max > 8:
        raise ValueError("enumeration is limited to n_max <= 8")
    chosen = list(tables) if tables is not None else ["T1", "T2", "T3"]
    out = []
    for table in chosen:
        if table not in CLASSES:
            raise ValueError(f"unknown table {table!r}")
        for type_id in CLASSES[table]:
            out.extend(_class_descriptors(table, type_id, n_max, q_max))
    out.sort()
    return out


def _decide_chunk(chunk: list[NormalFormDescriptor]) -> list[CQVerdict]:
    return [decide(d) for d in chunk]


def enumerate_catalog(
    n_max: int, q_max: int, tables: Iterable[str] | None = None, jobs: int = 1
) -> Iterator[tuple[NormalFormDescriptor, CQVerdict]]:
    descriptors = catalog_descriptors(n_max, q_max, tables)
    if jobs <= 1:
        for d in descriptors:
            yield d, decide(d)
        return
    size = max(1, len(descriptors) // (4 * jobs))
    chunks = [descriptors[i : i + size] for i in range(0, len(descriptors), size)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for chunk, verdicts in zip(chunks, pool.map(_decide_chunk, chunks)):
            yield from zip(chunk, verdicts)
