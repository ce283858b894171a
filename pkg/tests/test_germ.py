from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from germcq.cq_generic import catalog_descriptors
from germcq.germ import (
    REGULAR,
    ConstraintGerm,
    NormalFormDescriptor as D,
    active_set,
    minimal_n,
    quadratic_determinant,
    realize,
    validate,
)

G = ConstraintGerm.parse


def test_active_set_and_feasibility():
    assert active_set(G(1, ["x1 - 1"])) == [] and G(1, ["x1 - 1"]).feasible
    assert active_set(G(1, ["x1", "x1 - 1"])) == [0]
    assert not G(1, ["x1 + 1"]).feasible


def test_equalities_must_vanish():
    with pytest.raises(ValueError, match="does not vanish"):
        G(1, [], ["x1 + 1"])


def test_validate_condition_star():
    d = D("T2", "(6)", n=4, q=3, eps={"3": 1, "4": 1}, delta={"1": 1, "2": 1}, alpha={"1,2": 2})
    assert any("(*)" in p for p in validate(d))


def test_validate_k_range():
    assert validate(D("T1", "(1,6)", n=2, eps={"2": 1})) == ["k=6 out of range 2..5"]


def test_l_is_derived_from_the_type():
    eps = {"2": -1, "3": -1, "4": -1, "5": -1}
    d = D("T2", "(3,2)", n=5, q=3, l1=0, eps=eps)
    assert d.l == 1 and validate(d) == []
    assert validate(D("T2", "(3,2)", n=5, q=3, l=0, l1=0, eps=eps)) == ["l=0 but (3,k) with q=3 has l=1"]


def test_l1_bound():
    d = D("T2", "(1,2)", n=4, q=3, l1=2, eps={"3": 1, "4": 1})
    assert d.l == 2 and validate(d) == ["l1=2 outside 0..ceil(l/2)=1"]


def test_missing_and_unexpected_signs():
    problems = validate(D("T1", "(1,2)", n=3, eps={"2": 1, "7": 1}))
    assert "missing sign eps[3]" in problems and "unexpected sign eps[7]" in problems


def test_realize_examples():
    assert realize(D("T3", "(1,2)", n=2, eps={"2": -1})) == G(2, ["x1"], ["x1^2 - x2^2"])
    assert realize(D("T1", "(1,3)", n=2, eps={"2": 1})) == G(2, [], ["x1^3 + x2^2"])
    d = D("T2", "(1,2)", n=3, q=2, l1=0, eps={"2": 1, "3": 1})
    assert realize(d) == G(3, ["x1", "-x1 + x2^2 + x3^2"])
    assert realize(REGULAR(3, 1, 1)) == G(3, ["x1"], ["x2"])


def test_realize_linear_block():
    d = D("T2", "(6)", n=6, q=5, l1=1, eps={"5": 1, "6": -1}, delta={"1": 1, "2": -1}, alpha={"1,2": 1})
    g = realize(d).g
    assert [p.linear_part() for p in g[:4]] == [[int(i == j) for i in range(6)] for j in range(4)]
    assert g[4].linear_part() == [1, -1, 0, 0, 0, 0]


def test_realize_rejects_invalid():
    with pytest.raises(ValueError, match="invalid descriptor"):
        realize(D("T1", "(1,6)", n=2, eps={"2": 1}))


def test_double_star_determinant():
    # the identity form is nondegenerate, the all-ones form of rank 1 is not
    dl = {1: 1, 2: 1, 3: 1}
    al = {(1, 2): Fraction(0), (1, 3): Fraction(0), (2, 3): Fraction(0)}
    assert quadratic_determinant(dl, al) != 0
    al = {(1, 2): Fraction(2), (1, 3): Fraction(2), (2, 3): Fraction(2)}
    assert quadratic_determinant(dl, al) == 0


def test_minimal_dimensions():
    assert minimal_n("T1", "(1,k)") == 2
    assert minimal_n("T1", "(2)") == 4
    assert minimal_n("T3", "(8)") == 4


def test_germ_json_round_trip():
    g = G(2, ["(x1 - 1/3)^2 + x2^2 - 1/9"], ["x1*x2"])
    assert ConstraintGerm.from_json(g.to_json()) == g


@given(st.sampled_from(catalog_descriptors(4, 4)))
def test_descriptor_json_round_trip(d):
    back = D.from_json(d.to_json())
    assert back == d and realize(back) == realize(d)


def test_type_with_embedded_k():
    assert D("T1", "(1,3)", n=2, eps={"2": 1}) == D("T1", "(1,k)", n=2, k=3, eps={"2": 1})
    with pytest.raises(ValueError, match="disagrees"):
        D("T1", "(1,3)", n=2, k=4, eps={"2": 1})
