"""End-to-end orchestration: signatures, classification, calibration, CV.

The two specialist filter configurations are fixed here. Their paired response
to one image (the signature) drives a simple decision rule for the dominant
artifact, after which the matching specialist regression model quantifies it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from . import curvature
from .errors import (
    DegenerateInputError,
    InsufficientDataError,
    InvalidInputError,
)
from .filters import AtrScore, FilterParams, score_bundle
from .metrics import METRIC_FIELDS, MetricReport, regression_metrics, spearman
from .regression import (
    Artifact,
    RegressionModel,
    fit_loglog_poly2,
    predict_dmos,
    predict_dmos_many,
)

# Specialist configurations: one tuned for blur, one for white noise.
BLUR_FILTER = FilterParams(alpha=4.0, beta=2.5)
NOISE_FILTER = FilterParams(alpha=1.5, beta=1.0)


@dataclass(frozen=True)
class DatasetRecord:
    """One decoded image with its ground-truth score and grouping metadata."""

    image: np.ndarray
    dmos: float
    ref_id: str = ""
    label: Optional[str] = None


@dataclass(frozen=True)
class Signature:
    """Paired specialist scores of one image, from a single shared analysis."""

    atr_blur: AtrScore
    atr_noise: AtrScore


def signature_from_bundle(bundle: curvature.CurvatureBundle) -> Signature:
    return Signature(
        atr_blur=score_bundle(bundle, BLUR_FILTER),
        atr_noise=score_bundle(bundle, NOISE_FILTER),
    )


def compute_signature(img) -> Signature:
    """Both specialist scores from exactly one curvature analysis."""
    return signature_from_bundle(curvature.analyze(img))


def classify_artifact(sig: Signature) -> Artifact:
    """Blur when the noise-filter score strictly dominates, noise otherwise.

    Ties go to noise; the blur branch requires strict dominance.
    """
    if sig.atr_noise.value > sig.atr_blur.value:
        return Artifact.BLUR
    return Artifact.NOISE


@dataclass(frozen=True)
class HybridPrediction:
    """Classification plus the matching specialist model's quality estimate."""

    artifact: Artifact
    dmos_hat: float
    signature: Signature
    model_used: RegressionModel
    atr_used: float
    atr_clamped: bool


def predict_quality(
    img,
    blur_model: RegressionModel,
    noise_model: RegressionModel,
) -> HybridPrediction:
    """Classify the dominant artifact, then apply that class's model.

    The classified class's own specialist score is what feeds the model. A
    zero score is clamped to one pixel's coverage and flagged.
    """
    if blur_model.artifact is not Artifact.BLUR:
        raise InvalidInputError("blur_model must be tagged for the blur class")
    if noise_model.artifact is not Artifact.NOISE:
        raise InvalidInputError("noise_model must be tagged for the noise class")
    sig = compute_signature(img)
    artifact = classify_artifact(sig)
    if artifact is Artifact.BLUR:
        score, model = sig.atr_blur, blur_model
    else:
        score, model = sig.atr_noise, noise_model
    value, clamped = score.log_safe_value()
    return HybridPrediction(
        artifact=artifact,
        dmos_hat=predict_dmos(model, value),
        signature=sig,
        model_used=model,
        atr_used=value,
        atr_clamped=clamped,
    )


# ---------------------------------------------------------------------------
# Grid-search calibration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GridCell:
    """One evaluated (alpha, beta) pair; rho is None for degenerate cells."""

    alpha: float
    beta: float
    rho: Optional[float]
    degenerate: bool = False


@dataclass(frozen=True)
class CalibrationResult:
    best_params: FilterParams
    best_abs_rho: float
    grid: tuple[GridCell, ...]


def grid_search_calibrate(
    records: Sequence[DatasetRecord],
    alpha_grid,
    beta_grid,
) -> CalibrationResult:
    """Exhaustive search for the |rho|-maximizing threshold pair.

    Curvature bundles are computed once per record and reused for every cell.
    Cells whose score vector is constant are recorded as degenerate and
    excluded from the argmax. Ties break toward the lexicographically
    smallest (alpha, beta); the grids are scanned in sorted order.
    """
    records = list(records)
    if len(records) < 3:
        raise InsufficientDataError(f"need at least 3 records, got {len(records)}")
    alphas = sorted({float(a) for a in alpha_grid})
    betas = sorted({float(b) for b in beta_grid})
    if not alphas or not betas:
        raise InvalidInputError("alpha and beta grids must be non-empty")
    bundles = [curvature.analyze(r.image) for r in records]
    dmos = np.array([r.dmos for r in records], dtype=np.float64)
    cells: list[GridCell] = []
    best: Optional[GridCell] = None
    for alpha in alphas:
        for beta in betas:
            params = FilterParams(alpha=alpha, beta=beta)
            scores = np.array([score_bundle(b, params).value for b in bundles])
            try:
                rho = spearman(scores, dmos)
            except DegenerateInputError:
                cells.append(GridCell(alpha, beta, None, degenerate=True))
                continue
            cell = GridCell(alpha, beta, rho)
            cells.append(cell)
            if best is None or abs(rho) > abs(best.rho):
                best = cell
    if best is None:
        raise DegenerateInputError("every grid cell was degenerate; scores never varied")
    return CalibrationResult(
        best_params=FilterParams(alpha=best.alpha, beta=best.beta),
        best_abs_rho=abs(best.rho),
        grid=tuple(cells),
    )


# ---------------------------------------------------------------------------
# K-fold cross-validation, grouped by reference image
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FoldResult:
    index: int
    test_groups: tuple[str, ...]
    train_size: int
    test_size: int
    report: MetricReport


@dataclass(frozen=True)
class CvReport:
    k: int
    params: FilterParams
    seed: int
    folds: tuple[FoldResult, ...]
    summary: dict = field(default_factory=dict)
    fold_assignment: dict = field(default_factory=dict)
    n_clamped: int = 0


def _summarize_folds(folds: Sequence[FoldResult]) -> dict:
    """Per-metric mean and sample standard deviation across folds.

    Metrics that were undefined on some fold (None) are skipped for that fold;
    the summary records how many folds contributed.
    """
    summary = {}
    for name in METRIC_FIELDS:
        values = [getattr(f.report, name) for f in folds]
        finite = np.array([v for v in values if v is not None], dtype=np.float64)
        if finite.size == 0:
            summary[name] = {"mean": None, "sd": None, "n_folds": 0}
            continue
        sd = float(finite.std(ddof=1)) if finite.size > 1 else None
        summary[name] = {"mean": float(finite.mean()), "sd": sd, "n_folds": int(finite.size)}
    return summary


def kfold_cross_validate(
    records: Sequence[DatasetRecord],
    k: int,
    params: FilterParams,
    *,
    seed: int = 0,
    artifact: Union[Artifact, str, None] = None,
) -> CvReport:
    """Grouped K-fold CV of the score-to-dmos polynomial for one filter.

    Records sharing a ref_id always land in the same fold, so no content
    leaks between train and test. Groups are shuffled with a seeded generator
    and dealt round-robin. The polynomial is refit on each training split.
    The ``artifact`` tag only labels the per-fold models; when omitted it is
    inferred from the filter parameters.
    """
    records = list(records)
    if k < 2:
        raise InvalidInputError(f"k must be at least 2, got {k}")
    groups: list[str] = []
    for r in records:
        if not r.ref_id:
            raise InvalidInputError("cross-validation needs a ref_id on every record")
        if r.ref_id not in groups:
            groups.append(r.ref_id)
    if len(groups) < k:
        raise InvalidInputError(f"need at least {k} reference groups, got {len(groups)}")
    if artifact is None:
        artifact = Artifact.NOISE if params == NOISE_FILTER else Artifact.BLUR

    rng = np.random.default_rng(seed)
    shuffled = list(groups)
    rng.shuffle(shuffled)
    assignment = {group: i % k for i, group in enumerate(shuffled)}

    scores = np.empty(len(records), dtype=np.float64)
    n_clamped = 0
    for i, r in enumerate(records):
        value, clamped = score_bundle(curvature.analyze(r.image), params).log_safe_value()
        scores[i] = value
        n_clamped += clamped
    dmos = np.array([r.dmos for r in records], dtype=np.float64)
    fold_of = np.array([assignment[r.ref_id] for r in records])

    folds = []
    for i in range(k):
        test = fold_of == i
        train = ~test
        model = fit_loglog_poly2(scores[train], dmos[train], artifact)
        predictions = predict_dmos_many(model, scores[test])
        report = regression_metrics(predictions, dmos[test])
        folds.append(
            FoldResult(
                index=i,
                test_groups=tuple(g for g in groups if assignment[g] == i),
                train_size=int(np.count_nonzero(train)),
                test_size=int(np.count_nonzero(test)),
                report=report,
            )
        )
    return CvReport(
        k=k,
        params=params,
        seed=seed,
        folds=tuple(folds),
        summary=_summarize_folds(folds),
        fold_assignment=assignment,
        n_clamped=n_clamped,
    )


# ---------------------------------------------------------------------------
# End-to-end evaluation of the hybrid system
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EvaluationResult:
    report: MetricReport
    accuracy: float
    n_records: int
    predictions: tuple[HybridPrediction, ...]
    labels: tuple[Artifact, ...]


def evaluate_end_to_end(
    records: Sequence[DatasetRecord],
    blur_model: RegressionModel,
    noise_model: RegressionModel,
) -> EvaluationResult:
    """Run the hybrid predictor over labeled records from both classes."""
    records = list(records)
    labels = []
    for r in records:
        if r.label not in (Artifact.BLUR.value, Artifact.NOISE.value):
            raise InvalidInputError(
                f"end-to-end evaluation needs records labeled blur or noise, got {r.label!r}"
            )
        labels.append(Artifact(r.label))
    if len(set(labels)) < 2:
        raise InvalidInputError("records must cover both artifact classes")
    predictions = [predict_quality(r.image, blur_model, noise_model) for r in records]
    predicted = np.array([p.dmos_hat for p in predictions])
    dmos = np.array([r.dmos for r in records], dtype=np.float64)
    report = regression_metrics(predicted, dmos)
    hits = sum(p.artifact is label for p, label in zip(predictions, labels))
    return EvaluationResult(
        report=report,
        accuracy=hits / len(records),
        n_records=len(records),
        predictions=tuple(predictions),
        labels=tuple(labels),
    )
