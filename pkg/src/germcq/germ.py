"""Constraint germs and normal-form descriptors.

A constraint germ at the origin of R^n is a pair ``(g, h)`` of polynomial
maps; the feasible set is ``{g <= 0, h = 0}``.  Equalities must vanish at
the origin.  Inequalities with ``g_j(0) < 0`` are inactive; one with
``g_j(0) > 0`` makes the origin infeasible.

A ``NormalFormDescriptor`` names one entry of the three classification
tables (``T1``: equalities only, ``T2``: inequalities only, ``T3``: mixed)
or the fully regular class, together with its discrete signs, moduli and
ambient dimension.  ``realize`` builds the germ it stands for.

Sign keys follow the subscripts of the normal forms, using absolute
variable indices: ``"5"`` is the sign in front of ``x5^2``, a primed sign is
``"5'"``, and two-index subscripts are written ``"0,1"`` or ``"1,2"``.
Moduli ``alpha`` use the same pair keys.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .poly import Polynomial, as_fraction, format_polynomial, format_rational, parse_polynomial

TABLES = ("T1", "T2", "T3", "REGULAR")


@dataclass(frozen=True)
class ConstraintGerm:
    n: int
    g: tuple[Polynomial, ...] = ()
    h: tuple[Polynomial, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "g", tuple(self.g))
        object.__setattr__(self, "h", tuple(self.h))
        for p in self.g + self.h:
            if p.nvars != self.n:
                raise ValueError(f"component {p} lives in {p.nvars} variables, germ has n={self.n}")
        for i, p in enumerate(self.h):
            if p.constant_term() != 0:
                raise ValueError(f"equality h{i + 1} does not vanish at the origin")

    @property
    def q(self) -> int:
        return len(self.g)

    @property
    def r(self) -> int:
        return len(self.h)

    @property
    def feasible(self) -> bool:
        """Whether the origin satisfies every constraint."""
        return all(p.constant_term() <= 0 for p in self.g)

    def active_set(self) -> list[int]:
        return active_set(self)

    def to_json(self) -> dict:
        return {"n": self.n, "g": [format_polynomial(p) for p in self.g], "h": [format_polynomial(p) for p in self.h]}

    @classmethod
    def from_json(cls, data: Mapping) -> ConstraintGerm:
        if "n" not in data:
            raise ValueError("germ JSON needs the field 'n'")
        n = int(data["n"])
        g = [_parse_field(text, n, "g", i) for i, text in enumerate(data.get("g", []))]
        h = [_parse_field(text, n, "h", i) for i, text in enumerate(data.get("h", []))]
        return cls(n, tuple(g), tuple(h))

    @classmethod
    def parse(cls, n: int, g: Sequence[str] = (), h: Sequence[str] = ()) -> ConstraintGerm:
        return cls(n, tuple(parse_polynomial(t, n) for t in g), tuple(parse_polynomial(t, n) for t in h))

    def __str__(self) -> str:
        g = ", ".join(map(str, self.g))
        h = ", ".join(map(str, self.h))
        return f"germ(n={self.n}; g=({g}); h=({h}))"


def _parse_field(text: str, n: int, name: str, i: int) -> Polynomial:
    try:
        return parse_polynomial(text, n)
    except ValueError as exc:
        raise ValueError(f"{name}[{i}]: {exc}") from None


def active_set(germ: ConstraintGerm) -> list[int]:
    """0-based indices of the inequalities with ``g_j(0) = 0``."""
    return [j for j, p in enumerate(germ.g) if p.constant_term() == 0]


def _pair(i: int, j: int) -> str:
    return f"{i},{j}"


@dataclass(frozen=True)
class NormalFormDescriptor:
    table: str
    type_id: str
    n: int
    q: int | None = None
    k: int | None = None
    l: int | None = None
    l1: int = 0
    eps: Mapping[str, int] = field(default_factory=dict)
    delta: Mapping[str, int] = field(default_factory=dict)
    alpha: Mapping[str, Fraction] = field(default_factory=dict)
    r: int = 0  # only used by the regular class

    def __post_init__(self):
        object.__setattr__(self, "eps", {str(a): int(b) for a, b in dict(self.eps).items()})
        object.__setattr__(self, "delta", {str(a): int(b) for a, b in dict(self.delta).items()})
        object.__setattr__(self, "alpha", {str(a): as_fraction(b) for a, b in dict(self.alpha).items()})
        embedded = _embedded_k(self.type_id)
        if embedded is not None:
            if self.k is not None and self.k != embedded:
                raise ValueError(f"type {self.type_id!r} disagrees with k={self.k}")
            object.__setattr__(self, "k", embedded)
        object.__setattr__(self, "type_id", normalize_type(self.type_id))
        if self.q is None:
            spec = CLASSES.get(self.table, {}).get(self.type_id)
            object.__setattr__(self, "q", spec.fixed_q if spec is not None and spec.fixed_q is not None else 0)
        if self.l is None and self.table == "T2" and self.type_id in CLASSES.get("T2", {}):
            object.__setattr__(self, "l", CLASSES["T2"][self.type_id].l_of(self.q))

    def _key(self):
        return (
            TABLES.index(self.table) if self.table in TABLES else len(TABLES),
            self.type_id,
            self.k or 0,
            self.q,
            self.r,
            self.n,
            self.l1,
            tuple(sorted(self.eps.items())),
            tuple(sorted(self.delta.items())),
            tuple(sorted(self.alpha.items())),
        )

    def __hash__(self):
        return hash(self._key())

    def __eq__(self, other):
        if not isinstance(other, NormalFormDescriptor):
            return NotImplemented
        return self._key() == other._key() and self.l == other.l

    def __lt__(self, other):
        return self._key() < other._key()

    def e(self, key) -> int:
        return self.eps[str(key)]

    def a(self, i: int, j: int) -> Fraction:
        return self.alpha[_pair(i, j)]

    def tail(self, start: int) -> list[int]:
        """Signs ``eps_start .. eps_n`` (absolute indices)."""
        return [self.eps[str(j)] for j in range(start, self.n + 1)]

    @property
    def label(self) -> str:
        if self.table == "REGULAR":
            return f"REGULAR(n={self.n},q={self.q},r={self.r})"
        t = self.type_id
        if self.k is not None:
            t = t.replace(",k)", f",{self.k})")
        extra = f",l1={self.l1}" if self.table == "T2" else ""
        return f"{self.table} {t} (n={self.n},q={self.q}{extra})"

    def to_json(self) -> dict:
        out = {"table": self.table, "type": self.type_id, "n": self.n, "q": self.q}
        if self.table == "REGULAR":
            out["r"] = self.r
            return out
        if self.k is not None:
            out["k"] = self.k
        if self.table == "T2":
            out["l"] = self.l
            out["l1"] = self.l1
        out["eps"] = dict(sorted(self.eps.items(), key=lambda kv: _key_order(kv[0])))
        if self.delta:
            out["delta"] = dict(sorted(self.delta.items()))
        if self.alpha:
            out["alpha"] = {a: format_rational(v) for a, v in sorted(self.alpha.items())}
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> NormalFormDescriptor:
        table = str(data.get("table", "")).upper()
        if table not in TABLES:
            raise ValueError(f"unknown table {data.get('table')!r}; expected one of {TABLES}")
        if table == "REGULAR":
            return cls("REGULAR", "regular", n=int(data["n"]), q=int(data.get("q", 0)), r=int(data.get("r", 0)))
        type_id = str(data.get("type", ""))
        k = data.get("k")
        embedded = _embedded_k(type_id)
        if embedded is not None:
            if k is not None and int(k) != embedded:
                raise ValueError(f"type {type_id!r} disagrees with k={k}")
            k = embedded
        q = data.get("q")
        alpha = {_norm_pair(a): as_fraction(v) for a, v in dict(data.get("alpha", {})).items()}
        return cls(
            table,
            type_id,
            n=int(data["n"]),
            q=None if q is None else int(q),
            k=None if k is None else int(k),
            l=None if data.get("l") is None else int(data["l"]),
            l1=int(data.get("l1", 0)),
            eps={str(a): int(b) for a, b in dict(data.get("eps", {})).items()},
            delta={str(a): int(b) for a, b in dict(data.get("delta", {})).items()},
            alpha=alpha,
        )

    def __str__(self) -> str:
        return self.label


def REGULAR(n: int, q: int, r: int) -> NormalFormDescriptor:
    """Descriptor of ``g = (x1..xq), h = (x_{q+1}..x_{q+r})``."""
    return NormalFormDescriptor("REGULAR", "regular", n=n, q=q, r=r)


def _key_order(key: str):
    base = key.rstrip("'")
    if base.isdigit() and "," not in key:
        return (0, int(base), key)
    return (1, 0, key)


def _norm_pair(key) -> str:
    s = str(key).replace(" ", "")
    if "," in s:
        return s
    if len(s) == 2 and s.isdigit():
        return f"{s[0]},{s[1]}"
    return s


def _embedded_k(type_id: str) -> int | None:
    s = type_id.strip().strip("()")
    if "," in s:
        a, b = s.split(",", 1)
        if b.strip().isdigit():
            return int(b)
    return None


def normalize_type(type_id: str) -> str:
    """Canonical type label: ``"(1,k)"``, ``"(2)"``, ... ; ``"(1,3)"`` maps to ``"(1,k)"``."""
    s = str(type_id).strip()
    if s.lower() == "regular":
        return "regular"
    s = s.strip("()").replace(" ", "")
    if "," in s:
        return f"({s.split(',', 1)[0]},k)"
    return f"({s})"


# ---------------------------------------------------------------------------
# the normal-form tables


@dataclass(frozen=True)
class ClassSpec:
    table: str
    type_id: str
    build: Callable  # (descriptor, x) -> g̃ or h as Polynomial
    eps_keys: Callable  # (q, n) -> list of keys
    min_n: Callable  # q -> minimal n
    k_range: tuple[int, ...] | None = None
    min_q: int = 1
    fixed_q: int | None = None
    l_offset: int | None = None  # T2: l = q - l_offset
    delta_keys: tuple[str, ...] = ()
    alpha_keys: tuple[str, ...] = ()
    moduli_condition: Callable | None = None  # descriptor -> list of violations
    codim: Callable | None = None  # descriptor -> int

    def l_of(self, q: int) -> int:
        return q - self.l_offset


def _tail_sum(x, d: NormalFormDescriptor, start: int) -> Polynomial:
    out = Polynomial.zero(d.n)
    for j in range(start, d.n + 1):
        out = out + d.e(j) * x[j] ** 2
    return out


def _keys(*fixed, tail_from=None):
    def f(q, n):
        keys = [str(k(q)) if callable(k) else str(k) for k in fixed]
        if tail_from is not None:
            keys += [str(j) for j in range(tail_from(q), n + 1)]
        return keys

    return f


def _star(d: NormalFormDescriptor) -> list[str]:
    a = d.alpha.get("1,2", Fraction(0))
    if 4 * d.delta["1"] * d.delta["2"] - a * a == 0:
        return ["condition (*) fails: 4*delta1*delta2 - alpha^2 = 0"]
    return []


def _double_star(d: NormalFormDescriptor) -> list[str]:
    out = []
    dl = {i: d.delta[str(i)] for i in (1, 2, 3)}
    al = {(i, j): d.alpha[_pair(i, j)] for i, j in ((1, 2), (1, 3), (2, 3))}
    for (i, j), a in al.items():
        if 4 * dl[i] * dl[j] - a * a == 0:
            out.append(f"condition (**) fails: 4*delta{i}*delta{j} - alpha{i}{j}^2 = 0")
    if quadratic_determinant(dl, al) == 0:
        out.append("condition (**) fails: the quadratic part is degenerate")
    return out


def quadratic_determinant(dl: Mapping[int, int], al: Mapping[tuple[int, int], Fraction]) -> Fraction:
    """Half the determinant of the Hessian of ``sum delta_i x_i^2 + sum alpha_ij x_i x_j``."""
    a12, a13, a23 = al[(1, 2)], al[(1, 3)], al[(2, 3)]
    d1, d2, d3 = dl[1], dl[2], dl[3]
    return 4 * d1 * d2 * d3 + a12 * a13 * a23 - d1 * a23**2 - d2 * a13**2 - d3 * a12**2


def _t1_1k(d, x):
    return x[1] ** d.k + _tail_sum(x, d, 2)


def _t1_2(d, x):
    return x[1] ** 3 + d.e(2) * x[1] * x[2] ** 2 + x[3] ** 2 + _tail_sum(x, d, 4)


def _t2_1k(d, x):
    q = d.q
    return d.e(q) * x[q] ** d.k + _tail_sum(x, d, q + 1)


def _t2_2(d, x):
    q = d.q
    return x[q] ** 3 + d.e(q + 1) * x[q] * x[q + 1] ** 2 + _tail_sum(x, d, q + 2)


def _t2_3k(d, x):
    q = d.q
    return d.e(q - 1) * x[q - 1] ** d.k + _tail_sum(x, d, q)


def _t2_4k(d, x):
    q = d.q
    return d.e(q) * x[q] ** d.k + x[q - 1] * x[q] + _tail_sum(x, d, q + 1)


def _t2_5(d, x):
    q = d.q
    return d.e(q - 1) * x[q - 1] ** 2 + x[q] ** 3 + _tail_sum(x, d, q + 1)


def _t2_6(d, x):
    q = d.q
    return (
        d.delta["1"] * x[q - 1] ** 2
        + d.delta["2"] * x[q - 2] ** 2
        + d.a(1, 2) * x[q - 2] * x[q - 1]
        + _tail_sum(x, d, q)
    )


def _t2_7(d, x):
    q = d.q
    return (
        d.e(q - 2) * (x[q - 2] + d.e(f"{q - 1}'") * x[q - 1]) ** 2
        + d.e(q - 1) * x[q - 1] ** 3
        + _tail_sum(x, d, q)
    )


def _t2_8(d, x):
    q = d.q
    return (
        d.e(q - 2) * x[q - 2] ** 3
        + d.e(q - 1) * x[q - 1] ** 2
        + d.e(f"{q - 1}'") * x[q - 2] * x[q - 1]
        + _tail_sum(x, d, q)
    )


def _t2_9(d, x):
    q = d.q
    return (
        x[q] ** 3
        + d.e("0,1") * x[q - 1] * x[q]
        + d.e("0,2") * x[q - 2] * x[q]
        + d.e("1,2") * x[q - 2] * x[q - 1]
        + _tail_sum(x, d, q + 1)
    )


def _t2_10(d, x):
    q = d.q
    v = {i: x[q - 4 + i] for i in (1, 2, 3)}
    out = sum((d.delta[str(i)] * v[i] ** 2 for i in (1, 2, 3)), Polynomial.zero(d.n))
    for i, j in ((1, 2), (1, 3), (2, 3)):
        out = out + d.a(i, j) * v[i] * v[j]
    return out + d.e(0) * v[1] * v[2] * v[3] + _tail_sum(x, d, q)


def _t3_1k(d, x):
    return x[1] ** d.k + _tail_sum(x, d, 2)


def _t3_2(d, x):
    return x[2] ** 3 + x[1] ** 2 + _tail_sum(x, d, 3)


def _t3_3k(d, x):
    return x[2] ** d.k + d.e(1) * x[1] * x[2] + _tail_sum(x, d, 3)


def _t3_4(d, x):
    return d.delta["1"] * x[1] ** 2 + d.delta["2"] * x[2] ** 2 + d.a(1, 2) * x[1] * x[2] + _tail_sum(x, d, 3)


def _t3_5(d, x):
    return x[1] ** 3 + d.e(1) * x[2] ** 2 + d.e(2) * x[1] * x[2] + _tail_sum(x, d, 3)


def _t3_6(d, x):
    return (x[1] + d.e(1) * x[2]) ** 2 + d.e(2) * x[2] ** 3 + _tail_sum(x, d, 3)


def _t3_7(d, x):
    return (
        x[3] ** 3 + d.e(1) * x[2] * x[3] + d.e(2) * x[3] * x[1] + d.e(3) * x[1] * x[2] + _tail_sum(x, d, 4)
    )


def _t3_8(d, x):
    out = sum((d.delta[str(i)] * x[i] ** 2 for i in (1, 2, 3)), Polynomial.zero(d.n))
    for i, j in ((1, 2), (1, 3), (2, 3)):
        out = out + d.a(i, j) * x[i] * x[j]
    return out + d.e(1) * x[1] * x[2] * x[3] + _tail_sum(x, d, 4)


def _const(c):
    return lambda q: c


def _k_minus_1(d):
    return d.k - 1


def _k(d):
    return d.k


_PAIRS3 = ("1,2", "1,3", "2,3")

CLASSES: dict[str, dict[str, ClassSpec]] = {
    "T1": {
        "(1,k)": ClassSpec("T1", "(1,k)", _t1_1k, _keys(tail_from=_const(2)), _const(2), (2, 3, 4, 5), 0, 0,
                           codim=_k_minus_1),
        "(2)": ClassSpec("T1", "(2)", _t1_2, _keys(2, tail_from=_const(4)), _const(4), None, 0, 0,
                         codim=lambda d: 4),
    },
    "T2": {
        "(1,k)": ClassSpec("T2", "(1,k)", _t2_1k, _keys(lambda q: q, tail_from=lambda q: q + 1), lambda q: q + 1,
                           (2, 3, 4, 5), 1, None, 1, codim=_k_minus_1),
        "(2)": ClassSpec("T2", "(2)", _t2_2, _keys(lambda q: q + 1, tail_from=lambda q: q + 2), lambda q: q + 2,
                         None, 1, None, 1, codim=lambda d: 4),
        "(3,k)": ClassSpec("T2", "(3,k)", _t2_3k, _keys(lambda q: q - 1, tail_from=lambda q: q), lambda q: q,
                           (2, 3, 4), 2, None, 2, codim=_k),
        "(4,k)": ClassSpec("T2", "(4,k)", _t2_4k, _keys(lambda q: q, tail_from=lambda q: q + 1), lambda q: q + 1,
                           (3, 4), 2, None, 2, codim=_k),
        "(5)": ClassSpec("T2", "(5)", _t2_5, _keys(lambda q: q - 1, tail_from=lambda q: q + 1), lambda q: q + 1,
                         None, 2, None, 2, codim=lambda d: 4),
        "(6)": ClassSpec("T2", "(6)", _t2_6, _keys(tail_from=lambda q: q), lambda q: q, None, 3, None, 3,
                         ("1", "2"), ("1,2",), _star, codim=lambda d: 3),
        "(7)": ClassSpec("T2", "(7)", _t2_7, _keys(lambda q: q - 2, lambda q: f"{q - 1}'", lambda q: q - 1,
                                                   tail_from=lambda q: q), lambda q: q, None, 3, None, 3,
                         codim=lambda d: 4),
        "(8)": ClassSpec("T2", "(8)", _t2_8, _keys(lambda q: q - 2, lambda q: q - 1, lambda q: f"{q - 1}'",
                                                   tail_from=lambda q: q), lambda q: q, None, 3, None, 3,
                         codim=lambda d: 4),
        "(9)": ClassSpec("T2", "(9)", _t2_9, _keys("0,1", "0,2", "1,2", tail_from=lambda q: q + 1),
                         lambda q: q + 1, None, 3, None, 3, codim=lambda d: 4),
        "(10)": ClassSpec("T2", "(10)", _t2_10, _keys(0, tail_from=lambda q: q), lambda q: q, None, 4, None, 4,
                          ("1", "2", "3"), _PAIRS3, _double_star, codim=lambda d: 4),
    },
    "T3": {
        "(1,k)": ClassSpec("T3", "(1,k)", _t3_1k, _keys(tail_from=_const(2)), _const(2), (2, 3, 4), 1, 1, codim=_k),
        "(2)": ClassSpec("T3", "(2)", _t3_2, _keys(tail_from=_const(3)), _const(3), None, 1, 1, codim=lambda d: 4),
        "(3,k)": ClassSpec("T3", "(3,k)", _t3_3k, _keys(1, tail_from=_const(3)), _const(3), (3, 4), 1, 1, codim=_k),
        "(4)": ClassSpec("T3", "(4)", _t3_4, _keys(tail_from=_const(3)), _const(3), None, 2, 2,
                         delta_keys=("1", "2"), alpha_keys=("1,2",), moduli_condition=_star, codim=lambda d: 3),
        "(5)": ClassSpec("T3", "(5)", _t3_5, _keys(1, 2, tail_from=_const(3)), _const(3), None, 2, 2,
                         codim=lambda d: 4),
        "(6)": ClassSpec("T3", "(6)", _t3_6, _keys(1, 2, tail_from=_const(3)), _const(3), None, 2, 2,
                         codim=lambda d: 4),
        "(7)": ClassSpec("T3", "(7)", _t3_7, _keys(1, 2, 3, tail_from=_const(4)), _const(4), None, 2, 2,
                         codim=lambda d: 4),
        "(8)": ClassSpec("T3", "(8)", _t3_8, _keys(1, tail_from=_const(4)), _const(4), None, 3, 3,
                         delta_keys=("1", "2", "3"), alpha_keys=_PAIRS3, moduli_condition=_double_star,
                         codim=lambda d: 4),
    },
}


def class_spec(d: NormalFormDescriptor) -> ClassSpec:
    try:
        return CLASSES[d.table][d.type_id]
    except KeyError:
        raise ValueError(f"unknown class {d.table} {d.type_id}") from None


def validate(d: NormalFormDescriptor) -> list[str]:
    """Every violated condition, as readable strings; empty means valid."""
    if d.table not in TABLES:
        return [f"unknown table {d.table!r}"]
    if d.table == "REGULAR":
        out = []
        if d.q < 0 or d.r < 0:
            out.append("q and r must be non-negative")
        if d.n < d.q + d.r:
            out.append(f"n={d.n} is smaller than q+r={d.q + d.r}")
        return out
    spec = CLASSES[d.table].get(d.type_id)
    if spec is None:
        return [f"unknown type {d.type_id} in {d.table}"]
    out = []
    if spec.k_range is None:
        if d.k is not None:
            out.append(f"type {d.type_id} takes no k")
    elif d.k is None:
        out.append(f"type {d.type_id} needs k")
    elif d.k not in spec.k_range:
        out.append(f"k={d.k} out of range {spec.k_range[0]}..{spec.k_range[-1]}")
    if spec.fixed_q is not None:
        if d.q != spec.fixed_q:
            out.append(f"{d.table} {d.type_id} has q={spec.fixed_q}, got q={d.q}")
    elif d.q < spec.min_q:
        out.append(f"q={d.q} below the minimum {spec.min_q} for {d.type_id}")
    if d.table == "T2":
        expected_l = spec.l_of(d.q)
        if d.l != expected_l:
            out.append(f"l={d.l} but {d.type_id} with q={d.q} has l={expected_l}")
        l = expected_l
        if not 0 <= d.l1 <= (l + 1) // 2:
            out.append(f"l1={d.l1} outside 0..ceil(l/2)={(l + 1) // 2}")
    elif d.l1:
        out.append("l1 only applies to T2")
    if out:
        return out
    if d.n < spec.min_n(d.q):
        out.append(f"n={d.n} below the minimal dimension {spec.min_n(d.q)}")
        return out
    expected = spec.eps_keys(d.q, d.n)
    for key in expected:
        if key not in d.eps:
            out.append(f"missing sign eps[{key}]")
        elif d.eps[key] not in (1, -1):
            out.append(f"eps[{key}]={d.eps[key]} is not +-1")
    for key in d.eps:
        if key not in expected:
            out.append(f"unexpected sign eps[{key}]")
    for key in spec.delta_keys:
        if key not in d.delta:
            out.append(f"missing delta[{key}]")
        elif d.delta[key] not in (1, -1):
            out.append(f"delta[{key}]={d.delta[key]} is not +-1")
    for key in d.delta:
        if key not in spec.delta_keys:
            out.append(f"unexpected delta[{key}]")
    for key in spec.alpha_keys:
        if key not in d.alpha:
            out.append(f"missing alpha[{key}]")
    for key in d.alpha:
        if key not in spec.alpha_keys:
            out.append(f"unexpected alpha[{key}]")
    if not out and spec.moduli_condition is not None:
        out.extend(spec.moduli_condition(d))
    return out


def realize(d: NormalFormDescriptor) -> ConstraintGerm:
    """The normal-form germ a valid descriptor stands for."""
    problems = validate(d)
    if problems:
        raise ValueError(f"invalid descriptor {d.label}: " + "; ".join(problems))
    n = d.n
    xs = Polynomial.variables(n)
    x = {i + 1: xs[i] for i in range(n)}
    if d.table == "REGULAR":
        return ConstraintGerm(n, tuple(xs[: d.q]), tuple(xs[d.q : d.q + d.r]))
    spec = class_spec(d)
    body = spec.build(d, x)
    if d.table == "T1":
        return ConstraintGerm(n, (), (body,))
    if d.table == "T3":
        return ConstraintGerm(n, tuple(xs[: d.q]), (body,))
    q, l = d.q, d.l
    linear = Polynomial.zero(n)
    for j in range(1, d.l1 + 1):
        linear = linear + x[j]
    for j in range(d.l1 + 1, l + 1):
        linear = linear - x[j]
    return ConstraintGerm(n, tuple(xs[: q - 1]) + (linear + body,), ())


def minimal_n(table: str, type_id: str, q: int | None = None) -> int:
    spec = CLASSES[table][normalize_type(type_id)]
    if q is None:
        q = spec.fixed_q if spec.fixed_q is not None else spec.min_q
    return spec.min_n(q)


def descriptor_codim(d: NormalFormDescriptor) -> int | None:
    """Codimension listed for the class; ``None`` for the regular class."""
    if d.table == "REGULAR":
        return 0
    return class_spec(d).codim(d)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=False)
