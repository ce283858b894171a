"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial in ``n`` variables is a mapping from exponent tuples to nonzero
``Fraction`` coefficients.  Terms are kept in graded-lex order (total degree
first, then lexicographic on the exponent tuple), which makes equality,
hashing and the text form canonical.

Text form is a sum of terms ``c * x1^a1 * ... * xn^an`` where ``c`` is an
integer or ``p/q``.  The parser also accepts products, powers and
parenthesised sub-expressions, so ``(x1 - x2)^2`` is fine.
"""

from __future__ import annotations

import ast
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

Exponent = tuple[int, ...]
Number = int | Fraction


def _grlex(e: Exponent) -> tuple:
    return (sum(e), tuple(-a for a in e))


def as_fraction(value) -> Fraction:
    """Convert ints, Fractions and ``"p/q"`` strings to ``Fraction``.

    Floats are rejected: every decision path in the package is exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


class Polynomial:
    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Number] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        self.nvars = nvars
        clean: dict[Exponent, Fraction] = {}
        for exp, coef in (terms or {}).items():
            exp = tuple(int(a) for a in exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} does not have {nvars} entries")
            if any(a < 0 for a in exp):
                raise ValueError(f"negative exponent in {exp}")
            c = as_fraction(coef)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
        self._terms = {e: clean[e] for e in sorted(clean, key=_grlex) if clean[e]}
        self._hash = None

    @classmethod
    def _trusted(cls, nvars: int, terms: dict) -> Polynomial:
        # terms already hold valid exponent tuples and Fractions
        out = cls.__new__(cls)
        out.nvars = nvars
        out._terms = {e: terms[e] for e in sorted(terms, key=_grlex) if terms[e]}
        out._hash = None
        return out

    # construction helpers

    @classmethod
    def zero(cls, nvars: int) -> Polynomial:
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c: Number) -> Polynomial:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> Polynomial:
        """The coordinate ``x_{i+1}`` (``i`` is 0-based)."""
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def variables(cls, nvars: int) -> list[Polynomial]:
        return [cls.var(nvars, i) for i in range(nvars)]

    @classmethod
    def linear(cls, coeffs: Sequence[Number]) -> Polynomial:
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls(n, terms)

    # basic protocol

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Polynomial.constant(self.nvars, other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, tuple(self._terms.items())))
        return self._hash

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self.nvars)

    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def order(self) -> int:
        """Lowest total degree of a term; ``-1`` for the zero polynomial."""
        return min((sum(e) for e in self._terms), default=-1)

    def support(self) -> set[int]:
        """0-based indices of variables that occur."""
        return {i for e in self._terms for i, a in enumerate(e) if a}

    # arithmetic

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Polynomial.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out[e] + c if e in out else c
        return Polynomial._trusted(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial._trusted(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            c = Fraction(other)
            return Polynomial._trusted(self.nvars, {e: c * v for e, v in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.mul_truncated(other, None)

    __rmul__ = __mul__

    def mul_truncated(self, other: Polynomial, k: int | None) -> Polynomial:
        """Product with every term of degree above ``k`` discarded."""
        out: dict[Exponent, Fraction] = {}
        right = [(e, c, sum(e)) for e, c in other._terms.items()]
        for e1, c1 in self._terms.items():
            d1 = sum(e1)
            for e2, c2, d2 in right:
                if k is not None and d1 + d2 > k:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out[e] + c1 * c2 if e in out else c1 * c2
        return Polynomial._trusted(self.nvars, out)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int) -> Polynomial:
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # calculus and jets

    def derivative(self, i: int) -> Polynomial:
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return Polynomial(self.nvars, out)

    def gradient(self) -> list[Polynomial]:
        return [self.derivative(i) for i in range(self.nvars)]

    def linear_part(self) -> list[Fraction]:
        """Coefficients of ``x_1 .. x_n``, i.e. the gradient at the origin."""
        out = []
        for i in range(self.nvars):
            e = [0] * self.nvars
            e[i] = 1
            out.append(self.coefficient(e))
        return out

    def truncate(self, k: int) -> Polynomial:
        """Drop every term of total degree above ``k``."""
        return Polynomial(self.nvars, {e: c for e, c in self._terms.items() if sum(e) <= k})

    def homogeneous_part(self, r: int) -> Polynomial:
        return Polynomial(self.nvars, {e: c for e, c in self._terms.items() if sum(e) == r})

    # evaluation

    def __call__(self, point: Sequence) -> Fraction:
        return evaluate(self, point)

    def substitute(self, images: Sequence[Polynomial], truncate_at: int | None = None) -> Polynomial:
        """Compose with a polynomial map: replace ``x_i`` by ``images[i]``.

        All images must share one variable count, which becomes the variable
        count of the result.  With ``truncate_at`` every intermediate product
        is truncated, which is how power-series substitutions are kept finite.
        """
        if len(images) != self.nvars:
            raise ValueError(f"need {self.nvars} images, got {len(images)}")
        if not images:
            raise ValueError("cannot substitute into a polynomial in zero variables")
        m = images[0].nvars
        if any(p.nvars != m for p in images):
            raise ValueError("images must share one variable count")

        def trunc(p: Polynomial) -> Polynomial:
            return p if truncate_at is None else p.truncate(truncate_at)

        powers: list[dict[int, Polynomial]] = [{0: Polynomial.constant(m, 1), 1: trunc(p)} for p in images]

        def power(i: int, a: int) -> Polynomial:
            cache = powers[i]
            if a not in cache:
                cache[a] = power(i, a - 1).mul_truncated(cache[1], truncate_at)
            return cache[a]

        out: dict[Exponent, Fraction] = {}
        for e, c in self._terms.items():
            term = Polynomial.constant(m, c)
            for i, a in enumerate(e):
                if a:
                    term = term.mul_truncated(power(i, a), truncate_at)
            for f, v in term._terms.items():
                out[f] = out[f] + v if f in out else v
        return Polynomial._trusted(m, out)

    def rename(self, nvars: int, mapping: Mapping[int, int]) -> Polynomial:
        """Move variable ``i`` to position ``mapping[i]`` in a ring of ``nvars``.

        Variables that occur in the polynomial must all be mapped.
        """
        out = {}
        for e, c in self._terms.items():
            f = [0] * nvars
            for i, a in enumerate(e):
                if a:
                    f[mapping[i]] += a
            out[tuple(f)] = out.get(tuple(f), Fraction(0)) + c
        return Polynomial(nvars, out)

    # text form

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({self.nvars}, {format_polynomial(self)!r})"


def evaluate(p: Polynomial, point: Sequence) -> Fraction:
    """Exact value of ``p`` at a rational point."""
    if len(point) != p.nvars:
        raise ValueError(f"point has {len(point)} coordinates, polynomial has {p.nvars} variables")
    x = [as_fraction(v) for v in point]
    total = Fraction(0)
    for e, c in p.items():
        term = c
        for xi, a in zip(x, e):
            if a:
                term *= xi**a
        total += term
    return total


def gradient_at(p: Polynomial, point: Sequence) -> list[Fraction]:
    return [evaluate(p.derivative(i), point) for i in range(p.nvars)]


def truncate_jet(p: Polynomial, k: int) -> Polynomial:
    return p.truncate(k)


def homogeneous_part(p: Polynomial, r: int) -> Polynomial:
    return p.homogeneous_part(r)


def hessian(p: Polynomial) -> list[list[Fraction]]:
    """Hessian at the origin: twice the coefficient matrix of the quadratic part."""
    n = p.nvars
    H = [[Fraction(0)] * n for _ in range(n)]
    for e, c in p.homogeneous_part(2).items():
        idx = [i for i, a in enumerate(e) for _ in range(a)]
        i, j = idx
        if i == j:
            H[i][i] = 2 * c
        else:
            H[i][j] = H[j][i] = c
    return H


def format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_monomial(e: Exponent) -> str:
    parts = []
    for i, a in enumerate(e):
        if a == 1:
            parts.append(f"x{i + 1}")
        elif a:
            parts.append(f"x{i + 1}^{a}")
    return "*".join(parts)


def format_polynomial(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    chunks = []
    for e, c in p.items():
        mono = _format_monomial(e)
        mag = abs(c)
        sign = "-" if c < 0 else "+"
        if not mono:
            body = format_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_rational(mag)}*{mono}"
        chunks.append((sign, body))
    first_sign, first = chunks[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in chunks[1:]:
        out += f" {sign} {body}"
    return out


class PolynomialSyntaxError(ValueError):
    """Raised for malformed polynomial text; ``column`` is 1-based when known."""

    def __init__(self, message: str, column: int | None = None):
        super().__init__(message if column is None else f"{message} (column {column})")
        self.column = column


_VAR = re.compile(r"x(\d+)")


def parse_polynomial(text: str, nvars: int | None = None) -> Polynomial:
    """Parse the text form.

    Variables are ``x1 .. xn``.  If ``nvars`` is omitted it is the largest
    index that occurs.  ``^`` and ``**`` both mean power; ``/`` is only
    allowed between numbers.
    """
    if not isinstance(text, str) or not text.strip():
        raise PolynomialSyntaxError("empty polynomial text")
    indices = [int(m.group(1)) for m in _VAR.finditer(text)]
    if any(i < 1 for i in indices):
        raise PolynomialSyntaxError("variables are numbered from x1")
    top = max(indices, default=0)
    if nvars is None:
        nvars = top
    elif top > nvars:
        raise PolynomialSyntaxError(f"x{top} exceeds the declared {nvars} variables")
    try:
        tree = ast.parse(text.replace("^", "**").strip(), mode="eval")
    except SyntaxError as exc:
        raise PolynomialSyntaxError(f"cannot parse {text!r}: {exc.msg}", exc.offset) from None
    return _PolyBuilder(nvars).build(tree.body)


class _PolyBuilder:
    def __init__(self, nvars: int):
        self.nvars = nvars

    def build(self, node) -> Polynomial:
        value = self._eval(node)
        if isinstance(value, Fraction):
            return Polynomial.constant(self.nvars, value)
        return value

    def _fail(self, node, message):
        raise PolynomialSyntaxError(message, getattr(node, "col_offset", -1) + 1)

    def _eval(self, node):
        if isinstance(node, ast.Constant):
            if isinstance(node.value, int) and not isinstance(node.value, bool):
                return Fraction(node.value)
            self._fail(node, f"unsupported literal {node.value!r}; use integers or p/q")
        if isinstance(node, ast.Name):
            m = _VAR.fullmatch(node.id)
            if not m:
                self._fail(node, f"unknown symbol {node.id!r}")
            return Polynomial.var(self.nvars, int(m.group(1)) - 1)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.UAdd, ast.USub)):
            v = self._eval(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            left, right = self._eval(node.left), self._eval(node.right)
            op = node.op
            if isinstance(op, ast.Add):
                return left + right
            if isinstance(op, ast.Sub):
                return left - right
            if isinstance(op, ast.Mult):
                return left * right
            if isinstance(op, ast.Div):
                if not isinstance(right, Fraction):
                    self._fail(node, "division by a polynomial is not allowed")
                if right == 0:
                    self._fail(node, "division by zero")
                return left / right
            if isinstance(op, ast.Pow):
                if not isinstance(right, Fraction) or right.denominator != 1 or right < 0:
                    self._fail(node, "exponents must be non-negative integers")
                return left ** int(right)
        self._fail(node, f"unsupported syntax {ast.dump(node)[:40]}")


def parse_polynomials(texts: Iterable[str], nvars: int) -> tuple[Polynomial, ...]:
    return tuple(parse_polynomial(t, nvars) for t in texts)


class CompiledPolynomials:
    """Vectorised float evaluation of a list of polynomials.

    Only used by the numerical oracle.  ``values(X)`` takes points as rows of
    ``X`` and returns an array of shape ``(len(X), len(polys))``.
    """

    def __init__(self, polys: Sequence[Polynomial], nvars: int):
        self.nvars = nvars
        self.count = len(polys)
        self._exps = []
        self._coefs = []
        self._grads = []
        for p in polys:
            if p.nvars != nvars:
                raise ValueError("variable count mismatch")
            self._exps.append(np.array([e for e, _ in p.items()], dtype=np.int64).reshape(-1, nvars))
            self._coefs.append(np.array([float(c) for _, c in p.items()]))
            grad = []
            for i in range(nvars):
                d = p.derivative(i)
                grad.append(
                    (
                        np.array([e for e, _ in d.items()], dtype=np.int64).reshape(-1, nvars),
                        np.array([float(c) for _, c in d.items()]),
                    )
                )
            self._grads.append(grad)
        self._maxdeg = max((int(e.max()) for e in self._exps if e.size), default=0)

    def _powers(self, X: np.ndarray) -> np.ndarray:
        # P[d, m, i] = X[m, i] ** d
        P = np.empty((self._maxdeg + 1,) + X.shape)
        P[0] = 1.0
        for d in range(1, self._maxdeg + 1):
            P[d] = P[d - 1] * X
        return P

    @staticmethod
    def _monomials(P: np.ndarray, exps: np.ndarray) -> np.ndarray:
        # returns (points, terms)
        if exps.shape[0] == 0:
            return np.zeros((P.shape[1], 0))
        cols = np.arange(exps.shape[1])
        return np.prod(P[exps[:, None, :], np.arange(P.shape[1])[None, :, None], cols[None, None, :]], axis=2).T

    def values(self, X) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        P = self._powers(X)
        out = np.zeros((X.shape[0], self.count))
        for k, (exps, coefs) in enumerate(zip(self._exps, self._coefs)):
            if coefs.size:
                out[:, k] = self._monomials(P, exps) @ coefs
        return out

    def term_magnitudes(self, X) -> np.ndarray:
        """Sum of absolute term values, the scale used for relative tolerances."""
        X = np.atleast_2d(np.asarray(X, dtype=float))
        P = self._powers(X)
        out = np.zeros((X.shape[0], self.count))
        for k, (exps, coefs) in enumerate(zip(self._exps, self._coefs)):
            if coefs.size:
                out[:, k] = np.abs(self._monomials(P, exps) * coefs).sum(axis=1)
        return out

    def jacobians(self, X) -> np.ndarray:
        """Array of shape ``(points, polys, nvars)``."""
        X = np.atleast_2d(np.asarray(X, dtype=float))
        P = self._powers(X)
        out = np.zeros((X.shape[0], self.count, self.nvars))
        for k, grad in enumerate(self._grads):
            for i, (exps, coefs) in enumerate(grad):
                if coefs.size:
                    out[:, k, i] = self._monomials(P, exps) @ coefs
        return out
