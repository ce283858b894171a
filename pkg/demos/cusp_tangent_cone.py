"""
A cusp that fails Guignard's condition
======================================

The equality x1^3 + x2^2 = 0 has a vanishing gradient at the origin, so
its linearized cone is the whole plane.  The feasible set, however, is a
cusp pointing into x1 < 0.
"""

from germcq import ConstraintGerm, estimate_tangent_directions, linearized_cone, polar
from germcq.polyhedral import PolyhedralCone, cone_equal_polyhedral

germ = ConstraintGerm.parse(2, [], ["x1^3 + x2^2"])

# sample the feasible set on shrinking balls and cluster the unit directions
est = estimate_tangent_directions(germ, seed=0)
print("sampled tangent directions:", est.directions)
print("feasible points per radius:", est.feasible_counts)

# the sampled cone is the ray through -e1
ray = PolyhedralCone.from_h(2, le=[(1, 0)], eq=[(0, 1)])
L = linearized_cone(germ)
print("linearized cone is R^2:", cone_equal_polyhedral(L, PolyhedralCone.whole(2)))

# the polars differ: a half-plane against the origin
print("polar of the ray:", polar(ray).to_json())
print("polar of L+:     ", polar(L).to_json())
print("GCQ holds:", cone_equal_polyhedral(polar(ray), polar(L)))
