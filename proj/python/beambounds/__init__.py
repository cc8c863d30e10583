"""Guaranteed two-sided bounds for buckling loads of clamped Euler-Bernoulli beams."""

from ._core import (
    BoundsReport,
    ConfigError,
    EigenvalueBounds,
    FactorizationFailure,
    Mesh,
    MisalignedMesh,
    NoConvergence,
    StiffnessProfile,
    UnsupportedProfile,
    analytic_first_eigenvalue,
    assemble,
    check_alignment,
    compute_eoc,
    element_bending_matrix,
    element_geometric_matrix,
    format_table,
    interpolation_constant,
    kappa_vector,
    lower_bound,
    make_uniform_mesh,
    preset_names,
    run_case,
    run_verification_suite,
    scaled_mesh_size,
    smallest_eigenvalues,
    stepped_scaled_bounds,
    two_sided_bounds,
)

__all__ = [
    "BoundsReport",
    "ConfigError",
    "EigenvalueBounds",
    "FactorizationFailure",
    "Mesh",
    "MisalignedMesh",
    "NoConvergence",
    "StiffnessProfile",
    "UnsupportedProfile",
    "analytic_first_eigenvalue",
    "assemble",
    "check_alignment",
    "compute_eoc",
    "element_bending_matrix",
    "element_geometric_matrix",
    "format_table",
    "interpolation_constant",
    "kappa_vector",
    "lower_bound",
    "make_uniform_mesh",
    "preset_names",
    "run_case",
    "run_verification_suite",
    "scaled_mesh_size",
    "smallest_eigenvalues",
    "stepped_scaled_bounds",
    "two_sided_bounds",
]
