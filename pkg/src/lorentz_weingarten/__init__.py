"""Spacelike linear Weingarten surfaces in Minkowski 3-space."""

from .errors import (
    BlowUp, DomainError, GeometryError, IllConditionedWarning, MissingParam, NonPositiveRadius,
    NotSpacelike, NotTimelike, ParseError, PreconditionViolated, UnknownName,
)
from .expr import Jet2, eval_jet, evaluate, parse, to_source
from .foliation import (
    CoefficientExpansion, FoliationCase, FoliationFamily, build_foliated_patch,
    closed_form_coefficient, eq5_raw, extract_coefficients,
)
from .geometry import (
    CurvatureData, FundamentalForms, SurfaceJet, SurfacePatch, WeingartenSpec, curvature_data,
    eq5_residual, fundamental_forms, weingarten_residual,
)
from .mesh import MeshGrid, export_obj, sample_mesh
from .minkowski import CausalCharacter, MVec3, causal_character, lorentz_cross, lorentz_dot
from .rotational import (
    AxisKind, ProfileCurve, ProfileSpec, build_rotational_patch, catalog, first_integral,
    integrate_raw_ode, integrate_spacelike_profile, integrate_timelike_profile,
    lightlike_profile, timelike_slope,
)

__version__ = "0.1.0"

__all__ = [
    "BlowUp", "DomainError", "GeometryError", "IllConditionedWarning", "MissingParam",
    "NonPositiveRadius", "NotSpacelike", "NotTimelike", "ParseError", "PreconditionViolated",
    "UnknownName", "CoefficientExpansion", "FoliationCase", "FoliationFamily",
    "build_foliated_patch", "closed_form_coefficient", "eq5_raw", "extract_coefficients",
    "CurvatureData", "FundamentalForms", "SurfaceJet", "SurfacePatch", "WeingartenSpec",
    "curvature_data", "eq5_residual", "fundamental_forms", "weingarten_residual", "AxisKind",
    "ProfileCurve", "ProfileSpec", "build_rotational_patch", "catalog", "first_integral",
    "integrate_raw_ode", "integrate_spacelike_profile", "integrate_timelike_profile",
    "lightlike_profile", "timelike_slope", "Jet2", "eval_jet", "evaluate", "parse", "to_source",
    "MeshGrid", "export_obj", "sample_mesh", "CausalCharacter", "MVec3", "causal_character",
    "lorentz_cross", "lorentz_dot",
]
