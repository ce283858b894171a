"""Exact constraint-qualification checks for constraint germs."""

from .codim import CodimReport, codim_sequence, descriptor_report
from .cones import ConeDescriptor, linearized_cone, tangent_cone_descriptor
from .cq_direct import InfeasibleGermError, licq, mfcq
from .cq_generic import CQVerdict, decide, enumerate_catalog
from .germ import REGULAR, ConstraintGerm, NormalFormDescriptor, realize, validate
from .oracle import AgreementReport, cone_agreement, estimate_tangent_directions, witness_direction
from .poly import Polynomial, parse_polynomial
from .polyhedral import PolyhedralCone, cone_equal_polyhedral, polar

__all__ = [
    "AgreementReport", "CQVerdict", "CodimReport", "ConeDescriptor", "ConstraintGerm", "InfeasibleGermError",
    "NormalFormDescriptor", "PolyhedralCone", "Polynomial", "REGULAR", "codim_sequence", "cone_agreement",
    "cone_equal_polyhedral", "decide", "descriptor_report", "enumerate_catalog", "estimate_tangent_directions",
    "licq", "linearized_cone", "mfcq", "parse_polynomial", "polar", "realize", "tangent_cone_descriptor",
    "validate", "witness_direction",
]
