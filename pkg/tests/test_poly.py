from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given

from germcq.poly import (
    CompiledPolynomials,
    Polynomial,
    PolynomialSyntaxError,
    evaluate,
    format_polynomial,
    gradient_at,
    hessian,
    homogeneous_part,
    parse_polynomial,
    truncate_jet,
)

from .conftest import polynomials

P = parse_polynomial


def test_eval_examples():
    assert evaluate(P("x1^2 + x2"), (1, 1)) == 2
    assert evaluate(P("(x1 - 1/3)^2 + x2^2 - 1/9"), (0, 0)) == 0
    assert evaluate(P("x1^2 - x2^2"), (1, 1)) == 0


def test_gradient_examples():
    assert gradient_at(P("x1^3 + x2^2"), (0, 0)) == [0, 0]
    assert gradient_at(P("(x1 - 1/3)^2 + x2^2 - 1/9"), (0, 0)) == [Fraction(-2, 3), 0]
    assert [gradient_at(P(t, 1), (0,)) for t in ("x1", "2*x1")] == [[1], [2]]


def test_jet_and_homogeneous_parts():
    assert truncate_jet(P("x1 + x1^2"), 1) == P("x1")
    assert truncate_jet(P("x1"), 0).is_zero()
    assert truncate_jet(P("x1^3 + x1*x2^2"), 2).is_zero()
    assert homogeneous_part(P("x1^3 - x1*x2^2 + x3^2"), 3) == P("x1^3 - x1*x2^2", 3)
    assert homogeneous_part(P("x2^3 + x1^2"), 2) == P("x1^2", 2)
    assert homogeneous_part(P("x1^2"), 5).is_zero()


def test_no_zero_coefficients_stored():
    p = Polynomial(2, {(1, 0): 1, (0, 1): 0})
    assert list(p.terms.values()) == [1]
    assert (P("x1 + x2") - P("x2", 2)) == P("x1", 2)


def test_graded_lex_order():
    p = P("x2 + x1^2 + 1 + x1*x2 + x1")
    assert [e for e, _ in p.items()] == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1)]


def test_hessian():
    assert hessian(P("x1^2 + 3*x1*x2 - x2^2")) == [[2, 3], [3, -2]]


@pytest.mark.parametrize("text", ["", "x1 +* 3", "x0", "x1 / x2", "sin(x1)", "x1^-1", "x1^x2"])
def test_parse_errors(text):
    with pytest.raises(PolynomialSyntaxError):
        P(text)


def test_parse_rejects_excess_variables():
    with pytest.raises(PolynomialSyntaxError, match="exceeds"):
        P("x3", 2)


def test_compiled_matches_exact():
    polys = [P("x1^3 - 2*x1*x2 + 1/2", 2), P("x2^2", 2)]
    comp = CompiledPolynomials(polys, 2)
    X = np.array([[0.5, -1.0], [2.0, 3.0]])
    exact = [[float(evaluate(p, x)) for p in polys] for x in [(Fraction(1, 2), -1), (2, 3)]]
    np.testing.assert_allclose(comp.values(X), exact)
    J = comp.jacobians(X)
    assert J.shape == (2, 2, 2)
    np.testing.assert_allclose(J[1, 0], [3 * 4 - 2 * 3, -2 * 2])


@given(polynomials(), polynomials(), polynomials())
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Polynomial.zero(2)


@given(polynomials(nvars=3))
def test_format_parse_round_trip(p):
    assert parse_polynomial(format_polynomial(p), 3) == p


@given(polynomials(), polynomials())
def test_evaluation_is_a_homomorphism(a, b):
    x = (Fraction(2, 3), Fraction(-5, 2))
    assert evaluate(a * b, x) == evaluate(a, x) * evaluate(b, x)
    assert evaluate(a + b, x) == evaluate(a, x) + evaluate(b, x)


@given(polynomials(max_degree=4))
def test_jet_splits_into_homogeneous_parts(p):
    k = 3
    assert truncate_jet(p, k) == sum((homogeneous_part(p, r) for r in range(k + 1)), Polynomial.zero(2))
