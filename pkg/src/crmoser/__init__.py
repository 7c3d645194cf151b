"""Exact computer algebra for Levi non-degenerate hypersurfaces in normal form.

Represents defining functions v = <z,z> + F with Gaussian-rational
coefficients, checks the normal-form trace conditions, computes linear
stability algebras and their dimensions, builds the model hypersurfaces
and the triangular matrix group behind the second-largest dimension, and
verifies automorphisms (linear, scaled, and quadric fractional-linear)
symbolically.  All arithmetic is exact; nothing is ever evaluated in
floating point.
"""

__version__ = "0.1.0"

from .gaussrat import GaussianRational
from .linalg import Matrix
from .poly import Poly
from .forms import HermitianForm, is_pseudounitary, standard_form, u_basis
from .normal_form import (
    Hypersurface,
    NormalFormReport,
    check_normal_form,
    is_function_of_form_and_u,
    is_umbilic_origin,
    trace_op,
)
from .jets import HoloPoly, JetMap
from .autgroup import (
    AutoParams,
    InfSym,
    StabilizerResult,
    T_operator,
    extract_params,
    is_linear_automorphism,
    moser_weight_identity,
    quadric_automorphism,
    reparametrize,
    stabilizer_algebra,
    verify_automorphism,
)
from .models import (
    ClassifyResult,
    ScaledSAuto,
    SElement,
    classify,
    is_in_S,
    model_corollary2,
    model_theorem1,
    model_theorem2,
    model_umbilic,
    s_dimension,
    s_named_subgroup,
    s_to_matrix,
    verify_scaled_automorphism,
)
from .surface_io import parse_surface, surface_from_json, surface_to_json
from .census import CensusConfig, run_census

__all__ = [
    "GaussianRational",
    "Matrix",
    "Poly",
    "HermitianForm",
    "standard_form",
    "is_pseudounitary",
    "u_basis",
    "Hypersurface",
    "NormalFormReport",
    "check_normal_form",
    "is_function_of_form_and_u",
    "is_umbilic_origin",
    "trace_op",
    "HoloPoly",
    "JetMap",
    "AutoParams",
    "InfSym",
    "StabilizerResult",
    "T_operator",
    "extract_params",
    "is_linear_automorphism",
    "moser_weight_identity",
    "quadric_automorphism",
    "reparametrize",
    "stabilizer_algebra",
    "verify_automorphism",
    "ClassifyResult",
    "ScaledSAuto",
    "SElement",
    "classify",
    "is_in_S",
    "model_corollary2",
    "model_theorem1",
    "model_theorem2",
    "model_umbilic",
    "s_dimension",
    "s_named_subgroup",
    "s_to_matrix",
    "verify_scaled_automorphism",
    "parse_surface",
    "surface_from_json",
    "surface_to_json",
    "CensusConfig",
    "run_census",
    "__version__",
]
