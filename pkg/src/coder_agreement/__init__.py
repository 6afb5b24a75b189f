"""Inter-coder agreement statistics for category annotations."""

__version__ = "0.1.0"

from .exceptions import AgreementError, InputFormatError
from .model import (
    AnnotationMatrix,
    BoundaryTrack,
    CategorySet,
    build_matrix,
    pooled_proportions,
    to_boundary_matrix,
    with_numeric_categories,
)
from .results import (
    Band,
    DiagnosticReport,
    DiagnosticRow,
    InterpretationBand,
    MeasureResult,
    NullDistribution,
    interpret,
)
from .legacy import boundary_ratio, percent_all_pairs, percent_majority, percent_pairwise
from .stats import (
    DistanceMetric,
    expected_agreement,
    expert_kappa,
    kappa,
    krippendorff_alpha,
    observed_agreement,
    scotts_pi,
    significance,
)
from .diagnostics import (
    UnitProfile,
    leave_one_coder_out,
    pairwise_kappa_matrix,
    per_category_kappa,
    unit_profile,
    unitization_sweep,
)
from .simulation import CoderProfile, monte_carlo_pe, simulate_coders, simulate_with_truth
from .estimators import AgreementEstimator, OddManOutAnalysis
from .validation import check_annotations

__all__ = [
    "AgreementError",
    "AgreementEstimator",
    "AnnotationMatrix",
    "Band",
    "BoundaryTrack",
    "CategorySet",
    "CoderProfile",
    "DiagnosticReport",
    "DiagnosticRow",
    "DistanceMetric",
    "InputFormatError",
    "InterpretationBand",
    "MeasureResult",
    "NullDistribution",
    "OddManOutAnalysis",
    "UnitProfile",
    "boundary_ratio",
    "build_matrix",
    "check_annotations",
    "expected_agreement",
    "expert_kappa",
    "interpret",
    "kappa",
    "krippendorff_alpha",
    "leave_one_coder_out",
    "monte_carlo_pe",
    "observed_agreement",
    "pairwise_kappa_matrix",
    "per_category_kappa",
    "percent_all_pairs",
    "percent_majority",
    "percent_pairwise",
    "pooled_proportions",
    "scotts_pi",
    "significance",
    "simulate_coders",
    "simulate_with_truth",
    "to_boundary_matrix",
    "unit_profile",
    "unitization_sweep",
    "with_numeric_categories",
]
