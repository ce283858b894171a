import math

import numpy as np
import pytest

from germcq.cones import ConeDescriptor, member, tangent_cone_descriptor
from germcq.germ import REGULAR, ConstraintGerm, NormalFormDescriptor as D, realize
from germcq.oracle import (
    TOL_DIR,
    branch_suite,
    cone_agreement,
    descriptor_distance,
    estimate_tangent_directions,
    run_suite,
    witness_direction,
)
from germcq.poly import parse_polynomial

G = ConstraintGerm.parse
CUSP = G(2, [], ["x1^3 + x2^2"])


def angle(u, v):
    u, v = np.asarray(u, float), np.asarray(v, float)
    return math.acos(max(-1.0, min(1.0, u @ v / np.linalg.norm(u) / np.linalg.norm(v))))


def test_cusp_has_one_direction():
    est = estimate_tangent_directions(CUSP, samples_per_radius=3000, seed=0)
    assert len(est.directions) == 1
    assert angle(est.directions[0], (-1, 0)) < TOL_DIR


def test_crossing_axes_give_two_directions():
    est = estimate_tangent_directions(G(2, ["x1", "x2"], ["x1*x2"]), samples_per_radius=3000, seed=1)
    found = sorted(min(angle(u, e) for u in est.directions) for e in ((-1, 0), (0, -1)))
    assert len(est.directions) == 2 and found[-1] < TOL_DIR


def test_regular_quadrant_is_filled():
    est = estimate_tangent_directions(realize(REGULAR(2, 2, 0)), samples_per_radius=2000, seed=2)
    U = np.array(est.directions)
    assert (U <= 1e-12).all()
    # 5 degree clusters over a 90 degree arc
    assert len(U) >= 10


def test_estimate_is_reproducible():
    a = estimate_tangent_directions(CUSP, samples_per_radius=500, seed=7)
    b = estimate_tangent_directions(CUSP, samples_per_radius=500, seed=7)
    assert a.directions == b.directions and a.feasible_counts == b.feasible_counts


def test_infeasible_germ_rejected():
    with pytest.raises(ValueError):
        estimate_tangent_directions(G(1, ["x1 + 1"]), samples_per_radius=10)


def test_witnesses_for_the_cusp():
    assert witness_direction(CUSP, (-1, 0))
    assert not witness_direction(CUSP, (1, 0))
    assert not witness_direction(CUSP, (0, 1))
    assert witness_direction(CUSP, (0, 0)).found


def test_witness_sequence_is_reported():
    w = witness_direction(CUSP, (-1, 0))
    data = w.to_json()
    assert data["found"] and len(data["m"]) == 3 and data["angles"][-1] < 0.1


def test_descriptor_distance():
    c = tangent_cone_descriptor(D("T1", "(1,3)", n=2, eps={"2": 1}))
    assert descriptor_distance(c, (-1, 0)) < 1e-6
    assert descriptor_distance(c, (1, 0)) > 1
    quad = ConeDescriptor(2, quad=parse_polynomial("x1^2 - x2^2"), relation="EQ0")
    assert descriptor_distance(quad, (1, 1)) < 1e-6
    assert abs(descriptor_distance(quad, (1, 0)) - math.pi / 4) < 1e-4


def test_agreement_t1_odd():
    rep = cone_agreement(D("T1", "(1,3)", n=2, eps={"2": 1}), budget=2000, seed=0)
    assert rep.agree and rep.directions == 1 and rep.excluded_found == 0


def test_agreement_type_6_sampled_directions():
    d = D("T2", "(6)", n=4, q=3, eps={"3": -1, "4": 1}, delta={"1": 1, "2": -1}, alpha={"1,2": 1})
    est = estimate_tangent_directions(realize(d), samples_per_radius=2000, seed=3)
    c = tangent_cone_descriptor(d)
    assert est.directions and max(descriptor_distance(c, u) for u in est.directions) < TOL_DIR


def test_agreement_t3_crossing_lines():
    d = D("T3", "(1,2)", n=2, eps={"2": -1})
    est = estimate_tangent_directions(realize(d), samples_per_radius=2000, seed=4)
    s = 1 / math.sqrt(2)
    assert len(est.directions) == 2
    assert all(min(angle(u, (-s, s)), angle(u, (-s, -s))) < TOL_DIR for u in est.directions)
    assert cone_agreement(d, budget=2000, seed=4).agree


def test_wrong_descriptor_is_caught():
    # claim the whole plane for the cusp
    rep = cone_agreement(CUSP, budget=2000, seed=0, cone=ConeDescriptor(2))
    assert not rep.agree and rep.sufficiency_rate < 0.95
    # claim the opposite ray
    rep = cone_agreement(CUSP, budget=2000, seed=0, cone=ConeDescriptor(2, zero_indices={1}, nonpos_indices=set()))
    assert not rep.agree


def test_germ_needs_cone():
    with pytest.raises(ValueError):
        cone_agreement(CUSP)


def test_branch_suite_shape():
    suite = branch_suite()
    branches = {tangent_cone_descriptor(d).branch for d in suite}
    assert len(suite) >= 20 and len(branches) >= 20
    assert {d.table for d in suite} == {"T1", "T2", "T3"}


def test_run_suite_seeds_are_stable():
    ds = branch_suite()[:2]
    a = run_suite(ds, budget=300, seed=5, directions=4)
    b = run_suite(ds, budget=300, seed=5, directions=4)
    assert [r.to_json() for r in a] == [r.to_json() for r in b]
    assert a[0].seed != a[1].seed
