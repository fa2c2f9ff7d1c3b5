"""Multi-panel Kendall plots and AUK-based dependence indices."""

__version__ = "0.1.0"

from .sample import BivariateSample, ObservationPair, SampleError, TieReport, detect_ties, load_csv, write_csv
from .estimators import (
    DependenceSigns,
    DVector,
    KendallCurve,
    QuadrantProbs,
    TiedDataWarning,
    auk_component,
    check_c1,
    classify_dependence,
    d_vector,
    kendall_cdf,
    kendall_curve,
    kendall_curves,
    quadrant_probs,
    standardized_index,
    total_auk,
    w_transform,
)
from .resampling import IntervalEstimate, bootstrap_ci, bootstrap_statistics

__all__ = [
    "BivariateSample",
    "DVector",
    "DependenceSigns",
    "IntervalEstimate",
    "KendallCurve",
    "ObservationPair",
    "QuadrantProbs",
    "SampleError",
    "TieReport",
    "TiedDataWarning",
    "auk_component",
    "bootstrap_ci",
    "bootstrap_statistics",
    "check_c1",
    "classify_dependence",
    "d_vector",
    "detect_ties",
    "kendall_cdf",
    "kendall_curve",
    "kendall_curves",
    "load_csv",
    "quadrant_probs",
    "standardized_index",
    "total_auk",
    "w_transform",
    "write_csv",
]
