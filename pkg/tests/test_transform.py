import random

import pytest
from hypothesis import given, strategies as st

from germcq.cq_direct import licq, mfcq
from germcq.cq_generic import catalog_descriptors
from germcq.germ import ConstraintGerm, realize
from germcq.poly import Polynomial
from germcq.transform import KGElement, ReductionPlan, apply, full_reduction, reduce

from .generators import random_kg_element, random_unreduced

G = ConstraintGerm.parse
SMALL = [d for d in catalog_descriptors(4, 3) if not d.alpha or set(d.alpha.values()) <= {0, 1}]


def verdicts(germ):
    return licq(germ), mfcq(germ).holds


def test_identity_element():
    germ = G(2, ["x1", "x2^2"], ["x1*x2"])
    assert apply(KGElement.identity(2, 2, 1), germ) == germ


def test_swap_inequalities():
    germ = G(2, ["x1", "x2"], ["x1*x2"])
    e = KGElement.identity(2, 2, 1)
    swapped = KGElement(e.phi, [[0, 1], [1, 0]], e.B, e.A)
    assert apply(swapped, germ) == G(2, ["x2", "x1"], ["x1*x2"])


def test_scaling_keeps_mfcq():
    germ = G(1, ["x1", "2*x1"])
    e = KGElement([[1]], [[2, 0], [0, 1]])
    out = apply(e, germ)
    assert out == G(1, ["2*x1", "2*x1"])
    assert mfcq(out).holds == mfcq(germ).holds is True


def test_source_change_is_inverse_pullback():
    germ = G(2, ["x1 + x2^2"])
    out = apply(KGElement([[1, 1], [0, 1]], [[1]]), germ)
    # phi^-1(x) = (x1 - x2, x2)
    assert out == G(2, ["x1 - x2 + x2^2"])


def test_equalities_mix_into_inequalities():
    germ = G(2, ["x1"], ["x2^2"])
    n = 2
    e = KGElement([[1, 0], [0, 1]], [[1]], [[Polynomial.constant(n, 3)]], [[Polynomial.constant(n, -1)]])
    assert apply(e, germ) == G(2, ["x1 + 3*x2^2"], ["-x2^2"])


@pytest.mark.parametrize(
    "C", [[[0, 0], [0, 1]], [[-1, 0], [0, 1]], [[1, 1], [0, 1]], [[1, 0], [1, 0]]]
)
def test_inequality_block_must_keep_signs(C):
    with pytest.raises(ValueError, match="positive diagonal"):
        apply(KGElement([[1]], C), G(1, ["x1", "x1^2"]))


def test_singular_maps_rejected():
    with pytest.raises(ValueError, match="not invertible"):
        apply(KGElement([[1, 1], [1, 1]], []), G(2, [], []))
    n = 1
    with pytest.raises(ValueError, match="A\\(0\\)"):
        apply(KGElement([[1]], [], [], [[Polynomial.var(n, 0)]]), G(1, [], ["x1^2"]))


def test_drop_inactive():
    assert reduce(G(1, ["x1", "x1 - 1"]), ReductionPlan((1,))).germ == G(1, ["x1"])
    with pytest.raises(ValueError, match="active"):
        reduce(G(1, ["x1", "x1 - 1"]), ReductionPlan((0,)))


def test_eliminate_coordinate_equality():
    red = reduce(G(2, ["x2"], ["x1"]), ReductionPlan((), (0,)))
    assert red.germ == G(1, ["x1"]) and red.kept_variables == (1,) and red.exact


def test_eliminate_with_substitution():
    red = reduce(G(2, ["x1"], ["x2", "x1^3 + x2^2"]), ReductionPlan((), (0,)))
    assert red.germ == G(1, ["x1"], ["x1^3"])


def test_eliminate_curved_equality():
    # x2 = x1^2 on the zero set; the remaining inequality becomes x1^2 + x1^3
    red = reduce(G(2, ["x2 + x1^3"], ["x2 - x1^2"]), ReductionPlan((), (0,)))
    assert red.germ == G(1, ["x1^2 + x1^3"]) and red.exact


def test_singular_equalities_cannot_be_eliminated():
    with pytest.raises(ValueError, match="independent"):
        reduce(G(2, [], ["x1^2"]), ReductionPlan((), (0,)))


def test_full_reduction_leaves_singular_part():
    germ = G(3, ["x1", "x2 - 1"], ["x3 - x1^2", "x1^2 + x2^2"])
    red = full_reduction(germ)
    assert red.germ.q == 1 and red.germ.r == 1
    assert all(not any(p.linear_part()) for p in red.germ.h)


@given(st.sampled_from(SMALL), st.integers(0, 10**6))
def test_group_action_keeps_verdicts(d, seed):
    germ = realize(d)
    out = apply(random_kg_element(random.Random(seed), germ), germ)
    assert verdicts(out) == verdicts(germ)


@given(st.sampled_from(SMALL), st.integers(0, 10**6))
def test_reduction_keeps_verdicts(d, seed):
    germ = realize(d)
    big = random_unreduced(random.Random(seed), germ)
    red = full_reduction(big, jet_order=3).germ
    assert red.n == germ.n
    assert verdicts(big) == verdicts(red) == verdicts(germ)
