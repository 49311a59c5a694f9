"""Exact polytopes for Local Friendliness and Bell scenarios, with quantum see-saw tools."""
from .builders import Polytope, build_polytope, lf_vertices, lhv_vertices, ns_facets, ns_vertices
from .dd import dd_facets, dd_vertices, remove_redundant
from .errors import LFPolyError, ValidationError
from .inequalities import LIBRARY, Inequality, evaluate
from .lp import LPCertificate, lp_membership, verify_certificate
from .quantum import BipartiteState, behavior_from_strategy, hermitian_eigensystem, rho_mu
from .reps import HRepresentation, VRepresentation
from .scenario import Behavior, Scenario, to_collins_gisin
from .seesaw import MeasurementAngles, mu_sweep, seesaw_maximize, white_noise_tolerance
from .symmetry import canonical_form, classify, relabeling_group

__all__ = [
    "Behavior", "BipartiteState", "HRepresentation", "Inequality", "LFPolyError", "LIBRARY",
    "LPCertificate", "MeasurementAngles", "Polytope", "Scenario", "VRepresentation",
    "ValidationError", "behavior_from_strategy", "build_polytope", "canonical_form", "classify",
    "dd_facets", "dd_vertices", "evaluate", "hermitian_eigensystem", "lf_vertices",
    "lhv_vertices", "lp_membership", "mu_sweep", "ns_facets", "ns_vertices", "relabeling_group",
    "remove_redundant", "rho_mu", "seesaw_maximize", "to_collins_gisin", "verify_certificate",
    "white_noise_tolerance",
]
