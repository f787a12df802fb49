"""Graded K-type multiplicities in the harmonic polynomials of the cyclic-quiver
theta-groups K = S(GL2^r) < SL(2r)."""

from .characters import (
    CharacterInIrreps,
    LaurentPoly,
    char_H_recursive,
    char_H_shell,
    char_P,
    chi_sl2,
    clebsch_gordan,
    decompose_into_irreps,
    verify_gf_identity,
)
from .combinatorics import (
    KTypeLabel,
    LatticeBox,
    RaySpec,
    base_point,
    central_param_of_degree,
    is_valid_ktype,
    lambda_box,
    little_lambda_box,
    ray_contains,
    ray_iter,
    shell_contains,
    shell_iter,
)
from .errors import (
    InvalidParameters,
    MethodDisagreement,
    NotACharacter,
    OracleConventionError,
    SizeCapExceeded,
    ThetaHarmonicsError,
)
from .geometry import (
    FaceSystem,
    count_shell_surface_intersections,
    export_geometry,
    face_is_empty,
    in_polyhedron,
    on_hypersurface,
)
from .multiplicity import (
    Method,
    MFixedPredicate,
    MultiplicityResult,
    decompose_component,
    mfixed_conditions,
    multiplicity,
    multiplicity_table,
    total_multiplicity,
)
from .oracle import (
    apply_operator,
    build_monomial_basis,
    harmonic_character_oracle,
    verify_lebruyn_procesi_freeness,
)

__version__ = "0.1.0"

__all__ = [
    "CharacterInIrreps",
    "FaceSystem",
    "InvalidParameters",
    "KTypeLabel",
    "LatticeBox",
    "LaurentPoly",
    "MFixedPredicate",
    "Method",
    "MethodDisagreement",
    "MultiplicityResult",
    "NotACharacter",
    "OracleConventionError",
    "RaySpec",
    "SizeCapExceeded",
    "ThetaHarmonicsError",
    "apply_operator",
    "base_point",
    "build_monomial_basis",
    "central_param_of_degree",
    "char_H_recursive",
    "char_H_shell",
    "char_P",
    "chi_sl2",
    "clebsch_gordan",
    "count_shell_surface_intersections",
    "decompose_component",
    "decompose_into_irreps",
    "export_geometry",
    "face_is_empty",
    "harmonic_character_oracle",
    "in_polyhedron",
    "is_valid_ktype",
    "lambda_box",
    "little_lambda_box",
    "mfixed_conditions",
    "multiplicity",
    "multiplicity_table",
    "on_hypersurface",
    "ray_contains",
    "ray_iter",
    "shell_contains",
    "shell_iter",
    "total_multiplicity",
    "verify_gf_identity",
    "verify_lebruyn_procesi_freeness",
]
