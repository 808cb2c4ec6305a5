"""Functional models for completely non-unitary contractions at finite
matrix scale: defect data and characteristic functions, partial-isometry
dilations with Julia unitary extensions, oblique subspace decompositions,
reproducing-kernel model spaces, de Branges operator pairs, and a
residual-reporting harness for the coincidence identities."""

from .contraction import (
    CnuReport,
    Contraction,
    boundary_resolvent,
    char_function,
    char_function_full,
    char_identity_residual,
    is_cnu,
    validate,
)
from .coincidence import (
    CoincidenceContext,
    CoincidenceSample,
    coincidence_residual,
    final_kernel_identity_residual,
    fz_gram_check,
    split_generator,
    split_residuals,
    split_y_parameter,
)
from .coincidence import build as build_coincidence
from .debranges import (
    DeBrangesOperator,
    choose_beta,
    evaluate,
    fredholm_report,
    intersection_dimension_report,
    ratio_contractivity_scan,
    reconstruction_residual,
    rho,
)
from .debranges import build as build_debranges
from .decomposition import (
    ModelContext,
    PYEvaluation,
    apply_PY,
    arc_points,
    decompose,
    empirical_arc_chord,
    in_omega,
    make_context,
    projector_PY,
    straus_extension,
    subspace_M,
)
from .dilation import (
    CayleyResiduals,
    DilationPair,
    cayley,
    cayley_mapping_residuals,
    regular_type_constant,
    spectrum_union_residual,
)
from .dilation import build as build_dilation
from .errors import ToolkitError
from .gaps import GapReport, angle_stability_residual, arc_gap_scan, direct_sum_check, gap
from .linalg import (
    Subspace,
    column_space,
    hermitian_sqrt,
    kernel_space,
    multiset_distance,
    opnorm,
    solve_min_norm,
    spectral_metrics,
)
from .rkhs import (
    KernelMatrix,
    apply_R,
    compression_check,
    injectivity_check,
    intertwine_residual,
    kernel,
    psi_eval,
    s_beta,
)
from .verify import VerifyConfig, VerifyReport, run_verify

__all__ = [
    "CnuReport", "Contraction", "boundary_resolvent", "char_function",
    "char_function_full", "char_identity_residual", "is_cnu", "validate",
    "CoincidenceContext", "CoincidenceSample", "build_coincidence",
    "coincidence_residual", "final_kernel_identity_residual", "fz_gram_check",
    "split_generator", "split_residuals", "split_y_parameter",
    "DeBrangesOperator", "build_debranges", "choose_beta", "evaluate",
    "fredholm_report", "intersection_dimension_report",
    "ratio_contractivity_scan", "reconstruction_residual", "rho",
    "ModelContext", "PYEvaluation", "apply_PY", "arc_points", "decompose",
    "empirical_arc_chord", "in_omega", "make_context", "projector_PY",
    "straus_extension", "subspace_M",
    "CayleyResiduals", "DilationPair", "build_dilation", "cayley",
    "cayley_mapping_residuals", "regular_type_constant",
    "spectrum_union_residual",
    "ToolkitError",
    "GapReport", "angle_stability_residual", "arc_gap_scan",
    "direct_sum_check", "gap",
    "Subspace", "column_space", "hermitian_sqrt", "kernel_space",
    "multiset_distance", "opnorm", "solve_min_norm", "spectral_metrics",
    "KernelMatrix", "apply_R", "compression_check", "injectivity_check",
    "intertwine_residual", "kernel", "psi_eval", "s_beta",
    "VerifyConfig", "VerifyReport", "run_verify",
]

__version__ = "0.1.0"
