"""Multiparametric MR radiomics: lesion feature extraction, elastic-net model
selection and cross-validated ROC evaluation."""

from ._core import (
    MpradError,
    cv_evaluate,
    extract_cohort,
    extract_sequence_features,
    fit,
    fit_path,
    generate_phantom_cohort,
    gradient_magnitude,
    lambda_grid,
    predict,
    profile_size,
    quantize,
    rasterize_polygon,
    roc_auc,
    roc_points,
    shape_features,
    stratified_folds,
    trace_boundary,
    youden,
)

__all__ = [
    "MpradError",
    "cv_evaluate",
    "extract_cohort",
    "extract_sequence_features",
    "fit",
    "fit_path",
    "generate_phantom_cohort",
    "gradient_magnitude",
    "lambda_grid",
    "predict",
    "profile_size",
    "quantize",
    "rasterize_polygon",
    "roc_auc",
    "roc_points",
    "shape_features",
    "stratified_folds",
    "trace_boundary",
    "youden",
]
