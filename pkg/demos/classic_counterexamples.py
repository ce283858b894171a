"""
Six germs that separate the qualifications
==========================================

Each classical example is checked two ways.  LICQ and MFCQ come straight
from the gradients (exact rank and an exact LP).  ACQ and GCQ come from
the tangent cone written as a union of polyhedral pieces; the sampling
oracle then checks that this cone is really the one the feasible set has.
"""

from germcq import codim_sequence, cone_agreement
from germcq.classic import cases, quadruple

fmt = lambda flags: "".join("T" if f else "F" for f in flags)

for i, case in enumerate(cases()):
    q = quadruple(case)
    rep = cone_agreement(case.germ, cone=case.cone, seed=i, label=case.name)
    cod = codim_sequence(case.germ, 6)
    print(f"{case.name:22s} LICQ/MFCQ/ACQ/GCQ = {fmt(q)}   oracle agrees: {rep.agree}   "
          f"codim {cod.verdict} {cod.codims}")

# The two Peterson germs on a pair of inequalities look alike but sit far
# apart: (x, 2x) has a finite codimension while the parabola pair does not
# stabilise, so no finite jet pins it down.
