"""Bounds on the bifurcation set of a rational function f = P/Q via Newton polytopes."""

from .config import AnalysisOptions, ProbeConfig, Tolerances
from .critvals import discriminant_sheet, global_critical_values, probe_milnor_set
from .errors import InconsistencyError
from .faces import cf_values, classify_faces, face_critical_values, face_function, reduce_face_function
from .nondegen import check_condition_star, check_hypotheses, check_nondegenerate, check_normal_crossing
from .parse import ParseError, parse_rational_function
from .poly import RationalFunction, SparseLaurentPoly
from .polytope import LatticePolytope, convex_hull, minkowski_sum, newton_polytope, support_data
from .report import bifurcation_superset, emit_json
from .svg import render_svg

__all__ = [
    "AnalysisOptions", "ProbeConfig", "Tolerances", "discriminant_sheet", "global_critical_values",
    "probe_milnor_set", "InconsistencyError", "cf_values", "classify_faces", "face_critical_values",
    "face_function", "reduce_face_function", "check_condition_star", "check_hypotheses", "check_nondegenerate",
    "check_normal_crossing", "ParseError", "parse_rational_function", "RationalFunction", "SparseLaurentPoly",
    "LatticePolytope", "convex_hull", "minkowski_sum", "newton_polytope", "support_data",
    "bifurcation_superset", "emit_json", "render_svg",
]
