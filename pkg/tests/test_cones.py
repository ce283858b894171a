from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from germcq.cones import (
    ConeDescriptor,
    as_polyhedral,
    linearized_cone,
    member,
    rational_members,
    tangent_cone_descriptor,
)
from germcq.cq_generic import catalog_descriptors, decide
from germcq.germ import ConstraintGerm, NormalFormDescriptor as D, realize
from germcq.polyhedral import PolyhedralCone, cone_equal_polyhedral, conic_hull, polar

G = ConstraintGerm.parse
H = PolyhedralCone.from_h
T13 = D("T1", "(1,3)", n=2, eps={"2": 1})


def test_linearized_examples():
    assert cone_equal_polyhedral(linearized_cone(G(2, ["x1", "x2"])), H(2, [(1, 0), (0, 1)]))
    assert cone_equal_polyhedral(linearized_cone(G(2, ["x1"], ["x1^3 + x2^2"])), H(2, [(1, 0)]))
    assert cone_equal_polyhedral(linearized_cone(G(2, [], ["x1^3 + x2^2"])), PolyhedralCone.whole(2))


def test_linearized_skips_inactive():
    assert cone_equal_polyhedral(linearized_cone(G(1, ["x1 - 1"])), PolyhedralCone.whole(1))


@pytest.mark.parametrize("q,n,k", [(3, 4, 2), (4, 5, 3), (3, 3, 4)])
def test_linearized_polar_of_type_3k(q, n, k):
    eps = {str(j): -1 for j in range(q - 1, n + 1)}
    d = D("T2", f"(3,{k})", n=n, q=q, l1=0, eps=eps)
    P = polar(linearized_cone(realize(d)))
    unit = lambda i, s=1: tuple(s if j == i else 0 for j in range(n))
    # w_1..w_{q-2} free, w_{q-1} >= 0, the rest zero
    expected = H(n, [unit(q - 2, -1)], [unit(j) for j in range(q - 1, n)])
    assert cone_equal_polyhedral(P, expected)


def test_tangent_cone_t1_even_definite_is_origin():
    c = tangent_cone_descriptor(D("T1", "(1,2)", n=2, eps={"2": 1}))
    assert c.is_origin()


def test_tangent_cone_t1_odd_is_negative_ray():
    c = tangent_cone_descriptor(T13)
    assert member(c, (-1, 0)) and not member(c, (1, 0)) and member(c, (0, 0))
    assert not member(c, (0, 1))
    assert cone_equal_polyhedral(as_polyhedral(c), conic_hull(2, [(-1, 0)]))


@pytest.mark.parametrize("q,l1", [(3, 0), (4, 0), (4, 1)])
def test_tangent_cone_type_6_has_no_exclusion(q, l1):
    eps = {str(j): (-1) ** j for j in range(q, 6)}
    d = D("T2", "(6)", n=5, q=q, l1=l1, eps=eps, delta={"1": 1, "2": -1}, alpha={"1,2": 1})
    c = tangent_cone_descriptor(d)
    assert c.excluded is None
    if l1:
        # MFCQ holds, so the tangent cone is the linearized cone
        assert c.quad is None and cone_equal_polyhedral(as_polyhedral(c), linearized_cone(realize(d)))
    else:
        assert c.relation == "LE0" and c.zero_indices == frozenset(range(q - 3))


def test_polar_of_specific_cone():
    # h = x1^3 + x2^2: C = ray(-e1), L = R^2
    C = as_polyhedral(tangent_cone_descriptor(T13))
    L = linearized_cone(realize(T13))
    assert cone_equal_polyhedral(polar(C), H(2, [(-1, 0)]))
    assert cone_equal_polyhedral(polar(L), PolyhedralCone.origin(2))
    assert not cone_equal_polyhedral(polar(C), polar(L))
    assert not decide(T13).gcq


def test_quadric_membership():
    c = ConeDescriptor(3, nonpos_indices={0}, quad=G(3, ["x2^2 - x3^2"]).g[0])
    assert member(c, (-1, 1, 1)) and member(c, (0, 2, -2))
    assert not member(c, (1, 1, 1)) and not member(c, (0, 1, 0))


def test_rational_members_are_members():
    for d in catalog_descriptors(3, 3)[::7]:
        c = tangent_cone_descriptor(d)
        for m in rational_members(c, 6, seed=1):
            assert member(c, m)


def test_descriptor_json_has_one_based_indices():
    data = tangent_cone_descriptor(T13).to_json()
    assert data["excluded"]["support"] == [1] and data["quad"] == "x2^2"


def test_every_tangent_cone_lies_in_the_linearized_cone():
    for d in catalog_descriptors(3, 3):
        c = tangent_cone_descriptor(d)
        L = linearized_cone(realize(d))
        for m in rational_members(c, 5, seed=0):
            assert L.contains(m), d.label


POLYHEDRAL = [
    (d, P) for d in catalog_descriptors(3, 4) if (P := as_polyhedral(tangent_cone_descriptor(d))) is not None
]


def test_polyhedral_spot_check_is_nontrivial():
    assert len(POLYHEDRAL) > 100
    assert {decide(d).acq for d, _ in POLYHEDRAL} == {True, False}


@given(st.sampled_from(POLYHEDRAL))
def test_acq_and_gcq_agree_with_exact_cones(dp):
    d, P = dp
    L = linearized_cone(realize(d))
    v = decide(d)
    assert cone_equal_polyhedral(P, L) == v.acq
    assert cone_equal_polyhedral(polar(P), polar(L)) == v.gcq
