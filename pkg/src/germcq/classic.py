"""Classical counterexamples that separate the four qualifications.

Each case carries its germ, its tangent cone written as a union of
polyhedral pieces, a descriptor of the same cone for the oracle, and the
expected codimension verdict.  ACQ and GCQ are derived from the pieces
exactly: GCQ compares closed convex hulls, which is what equality of polars
amounts to.
"""

from __future__ import annotations

from dataclasses import dataclass

from .codim import FINITE, GROWING
from .cones import ConeDescriptor, EQ0, linearized_cone
from .cq_direct import licq, mfcq
from .germ import ConstraintGerm
from .poly import parse_polynomial
from .polyhedral import PolyhedralCone, cone_equal_polyhedral, conic_hull, subset


@dataclass(frozen=True)
class ClassicCase:
    name: str
    germ: ConstraintGerm
    expected: tuple[bool, bool, bool, bool]
    pieces: tuple[PolyhedralCone, ...]
    cone: ConeDescriptor
    codim: tuple[str, int | None]


def _case(name, n, g, h, expected, pieces, cone, codim):
    return ClassicCase(name, ConstraintGerm.parse(n, g, h), expected, tuple(pieces), cone, codim)


def cases() -> list[ClassicCase]:
    T, F = True, False
    half_plane = PolyhedralCone.from_h(2, le=[(-1, 0)])
    axis1 = PolyhedralCone.from_h(2, le=[(1, 0)], eq=[(0, 1)])
    axis2 = PolyhedralCone.from_h(2, le=[(0, 1)], eq=[(1, 0)])
    line1 = PolyhedralCone.from_h(2, eq=[(0, 1)])
    line2 = PolyhedralCone.from_h(2, eq=[(1, 0)])
    cross = parse_polynomial("x1*x2", 2)
    return [
        _case("Peterson (x, 2x)", 1, ["x1", "2*x1"], [], (F, T, T, T),
              [PolyhedralCone.from_h(1, le=[(1,)])], ConeDescriptor(1, nonpos_indices={0}), (FINITE, 1)),
        _case("Wright", 2, ["(x1 - 1/3)^2 + x2^2 - 1/9", "(x1 - 2/3)^2 + x2^2 - 4/9"], [], (F, T, T, T),
              [half_plane], ConeDescriptor(2, linear_le=[(-1, 0)]), (FINITE, 1)),
        _case("Peterson parabola", 2, ["x2 - x1^2", "-x2 + x1^2"], [], (F, F, T, T),
              [line1], ConeDescriptor(2, zero_indices={1}), (GROWING, None)),
        _case("Andreani et al.", 2, ["-x1", "-x1^2 - x2^2"], [], (F, F, T, T),
              [half_plane], ConeDescriptor(2, linear_le=[(-1, 0)]), (FINITE, 2)),
        _case("Andreani-Silva", 2, ["x1", "x2"], ["x1*x2"], (F, F, F, T),
              [axis1, axis2], ConeDescriptor(2, nonpos_indices={0, 1}, quad=cross, relation=EQ0), (GROWING, None)),
        _case("Peterson x1^2 x2^2", 2, ["x1^2*x2^2"], [], (F, F, F, T),
              [line1, line2], ConeDescriptor(2, quad=cross, relation=EQ0), (GROWING, None)),
    ]


def union_qualifications(germ: ConstraintGerm, pieces) -> tuple[bool, bool]:
    """(ACQ, GCQ) for a tangent cone given as a union of polyhedral cones."""
    L = linearized_cone(germ)
    if not all(subset(p, L) for p in pieces):
        raise ValueError("a tangent-cone piece leaves the linearized cone")
    gens = [v for p in pieces for v in p.generators()]
    gcq = cone_equal_polyhedral(conic_hull(germ.n, gens), L)
    if any(cone_equal_polyhedral(p, L) for p in pieces):
        acq = True
    elif all(p.dimension() < L.dimension() for p in pieces):
        acq = False
    else:
        raise ValueError("cannot decide whether the pieces cover the linearized cone")
    return acq, gcq


def quadruple(case: ClassicCase) -> tuple[bool, bool, bool, bool]:
    acq, gcq = union_qualifications(case.germ, case.pieces)
    return licq(case.germ), mfcq(case.germ).holds, acq, gcq
