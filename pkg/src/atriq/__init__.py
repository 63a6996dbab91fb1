"""Curvature-based no-reference image quality analysis.

The package scores grayscale images by anisotropic texture richness (ATR),
tells Gaussian blur apart from white noise using the paired response of two
specialist filter configurations, and maps scores to predicted opinion scores
with per-class regression models. Calibration (grid search), grouped K-fold
cross-validation, synthetic dataset generation, and a CLI are included.
"""

__version__ = "0.1.0"

from .curvature import (
    CurvatureBundle,
    analyze,
    as_gray_image,
    compute_curvature,
    dispersion,
    log_normalize,
)
from .degrade import add_white_noise, gaussian_blur
from .errors import (
    AtriqError,
    DegenerateInputError,
    DomainError,
    InputFileError,
    InsufficientDataError,
    InvalidInputError,
)
from .filters import (
    AtrScore,
    FilterMode,
    FilterParams,
    MaskPair,
    SaliencyArtifacts,
    atr_score,
    classify_mode,
    compute_masks,
    saliency_artifacts,
    score_bundle,
)
from .imageio import load_image_grayscale, save_png
from .manifest import ManifestRecord, load_manifest, write_manifest
from .metrics import MetricReport, average_ranks, pearson, regression_metrics, spearman
from .pipeline import (
    BLUR_FILTER,
    NOISE_FILTER,
    CalibrationResult,
    CvReport,
    DatasetRecord,
    EvaluationResult,
    HybridPrediction,
    Signature,
    classify_artifact,
    compute_signature,
    evaluate_end_to_end,
    grid_search_calibrate,
    kfold_cross_validate,
    predict_quality,
    signature_from_bundle,
)
from .regression import (
    Artifact,
    RegressionModel,
    default_model,
    evaluate_fit,
    fit_loglog_poly2,
    load_model,
    predict_dmos,
    predict_dmos_many,
    save_model,
)
from .synth import DEFAULT_BLUR_SIGMAS, DEFAULT_NOISE_SIGMAS, synthesize_dataset
