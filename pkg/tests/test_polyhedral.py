from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from germcq.polyhedral import (
    DimensionError,
    PolyhedralCone,
    cone_equal_polyhedral,
    conic_hull,
    double_description,
    polar,
    subset,
)

H = PolyhedralCone.from_h


@st.composite
def h_cones(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    row = st.lists(st.integers(-2, 2), min_size=n, max_size=n)
    le = draw(st.lists(row, max_size=n + 2))
    eq = draw(st.lists(row, max_size=1))
    return H(n, le, eq)


def test_polar_of_origin_and_space():
    for n in (1, 3):
        assert cone_equal_polyhedral(polar(PolyhedralCone.origin(n)), PolyhedralCone.whole(n))
        assert cone_equal_polyhedral(polar(PolyhedralCone.whole(n)), PolyhedralCone.origin(n))


def test_polar_of_negative_ray():
    P = polar(conic_hull(2, [(-1, 0)]))
    assert cone_equal_polyhedral(P, H(2, [(-1, 0)]))
    assert P.contains((0, 5)) and P.contains((1, -3)) and not P.contains((-1, 0))


def test_ray_equals_half_axis():
    assert cone_equal_polyhedral(conic_hull(2, [(-1, 0)]), H(2, [(1, 0)], [(0, 1)]))
    assert not cone_equal_polyhedral(PolyhedralCone.origin(1), PolyhedralCone.whole(1))


def test_quadrant_generators():
    c = H(2, [(1, 0), (0, 1)]).with_v()
    assert set(c.rays) == {(-1, 0), (0, -1)} and c.lineality == ()


def test_half_space_has_lineality():
    c = H(3, [(1, 0, 0)]).with_v()
    assert c.rays == ((-1, 0, 0),) and len(c.lineality) == 2


def test_redundant_rows():
    c = H(2, [(1, 0), (2, 0), (1, 1), (0, 1)]).with_v()
    assert set(c.rays) == {(-1, 0), (0, -1)}


def test_pointed_cone_from_many_rays():
    # cone over a square
    c = conic_hull(3, [(1, 1, 1), (1, -1, 1), (-1, 1, 1), (-1, -1, 1), (0, 0, 1)]).canonical()
    assert len(c.le) == 4 and len(c.rays) == 4


def test_dimension_limit():
    with pytest.raises(DimensionError):
        double_description(13, [], [])


def test_json_round_trip():
    c = H(3, [(1, 0, -1)], [(0, 1, 0)]).complete()
    back = PolyhedralCone.from_json(c.to_json())
    assert back == c


def test_subset():
    assert subset(conic_hull(2, [(-1, 0)]), H(2, [(1, 0)]))
    assert not subset(H(2, [(1, 0)]), conic_hull(2, [(-1, 0)]))


@given(h_cones())
def test_biduality(c):
    assert cone_equal_polyhedral(polar(polar(c)), c)


@given(h_cones())
def test_generators_satisfy_inequalities(c):
    full = c.with_v()
    assert all(c.contains(g) for g in full.generators())


@given(h_cones(max_n=4))
def test_polar_pairing(c):
    P = polar(c)
    for w in P.generators():
        for d in c.with_v().generators():
            assert sum((Fraction(a) * b for a, b in zip(w, d)), Fraction(0)) <= 0


@given(h_cones(max_n=4))
def test_canonical_is_minimal_and_equal(c):
    k = c.canonical()
    assert cone_equal_polyhedral(k, c)
    # no ray is a conic combination of the others
    for i, r in enumerate(k.rays):
        rest = conic_hull(c.n, [s for j, s in enumerate(k.rays) if j != i])
        rest = PolyhedralCone(c.n, rays=rest.rays, lineality=k.lineality)
        assert not rest.contains(r)
