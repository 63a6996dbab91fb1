"""Specialist quality models: second-degree polynomials in log-log space.

A model maps an ATR score to a predicted opinion score through
``exp(c + b1*ln(atr) + b2*ln(atr)^2)``. One model is fitted per artifact
class; bundled defaults ship with the package.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .errors import (
    DegenerateInputError,
    DomainError,
    InputFileError,
    InsufficientDataError,
    InvalidInputError,
)
from .metrics import MetricReport, regression_metrics

logger = logging.getLogger(__name__)

# Warn when the centered design matrix is badly conditioned.
CONDITION_LIMIT = 1e8


class Artifact(enum.Enum):
    """Distortion classes the system can tell apart."""

    BLUR = "blur"
    NOISE = "noise"


def _as_artifact(value: Union[Artifact, str]) -> Artifact:
    if isinstance(value, Artifact):
        return value
    try:
        return Artifact(str(value).strip().lower())
    except ValueError:
        raise InvalidInputError(f"unknown artifact type: {value!r}") from None


@dataclass(frozen=True)
class RegressionModel:
    """Coefficients of the log-log quadratic predictor for one artifact class."""

    artifact: Artifact
    c: float
    b1: float
    b2: float
    sample_size: Optional[int] = None
    fit_date: Optional[str] = None
    excluded: int = 0

    def __post_init__(self):
        for name in ("c", "b1", "b2"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise InvalidInputError(f"coefficient {name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)


def predict_dmos(model: RegressionModel, atr: float) -> float:
    """Evaluate the model at one positive ATR value; the result is positive."""
    a = float(atr)
    if not (math.isfinite(a) and a > 0.0):
        raise DomainError(f"atr must be positive and finite, got {atr!r}")
    u = math.log(a)
    return math.exp(model.c + model.b1 * u + model.b2 * u * u)


def predict_dmos_many(model: RegressionModel, atr_values) -> np.ndarray:
    """Vectorized :func:`predict_dmos` over an array of positive scores."""
    arr = np.asarray(atr_values, dtype=np.float64)
    if arr.size == 0:
        raise InvalidInputError("no atr values given")
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
        raise DomainError("every atr value must be positive and finite")
    u = np.log(arr)
    return np.exp(model.c + model.b1 * u + model.b2 * u * u)


def fit_loglog_poly2(atr, dmos, artifact: Union[Artifact, str]) -> RegressionModel:
    """Ordinary least squares of ln(dmos) on [1, ln(atr), ln(atr)^2].

    Records with non-positive dmos are dropped (their log is undefined); the
    count of dropped records is kept on the returned model. The regressor is
    centered internally for conditioning and the coefficients are un-centered
    on output.
    """
    artifact = _as_artifact(artifact)
    a = np.asarray(atr, dtype=np.float64).ravel()
    d = np.asarray(dmos, dtype=np.float64).ravel()
    if a.size != d.size:
        raise InvalidInputError(f"vector lengths disagree: {a.size} vs {d.size}")
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(d))):
        raise InvalidInputError("fit inputs must be finite")
    if np.any(a <= 0.0):
        raise InvalidInputError("atr values must be positive; clamp zero scores before fitting")
    usable = d > 0.0
    excluded = int(np.count_nonzero(~usable))
    a = a[usable]
    d = d[usable]
    if a.size < 3:
        raise InsufficientDataError(f"need at least 3 usable points, got {a.size}")
    u = np.log(a)
    center = float(u.mean())
    uc = u - center
    design = np.column_stack([np.ones_like(uc), uc, uc * uc])
    coef, _, rank, singular = np.linalg.lstsq(design, np.log(d), rcond=None)
    if rank < 3:
        raise DegenerateInputError("design matrix is rank-deficient; atr values lack spread")
    condition = float(singular[0] / singular[-1]) if singular[-1] > 0 else math.inf
    if condition > CONDITION_LIMIT:
        logger.warning("ill-conditioned fit (condition %.3g); coefficients may be unstable", condition)
    a0, a1, a2 = (float(v) for v in coef)
    return RegressionModel(
        artifact=artifact,
        c=a0 - a1 * center + a2 * center * center,
        b1=a1 - 2.0 * a2 * center,
        b2=a2,
        sample_size=int(a.size),
        excluded=excluded,
    )


def evaluate_fit(model: RegressionModel, atr, dmos) -> MetricReport:
    """Score the model on a sample, in linear (not log) dmos space."""
    predictions = predict_dmos_many(model, atr)
    return regression_metrics(predictions, np.asarray(dmos, dtype=np.float64))


# ---------------------------------------------------------------------------
# Plain-text model files: "key = value" lines, '#' comments.
# ---------------------------------------------------------------------------

_REQUIRED_KEYS = ("artifact", "c", "b1", "b2")
_OPTIONAL_KEYS = ("sample_size", "fit_date", "excluded")


def save_model(model: RegressionModel, path) -> None:
    lines = [
        "# atriq regression model",
        f"artifact = {model.artifact.value}",
        f"c = {model.c!r}",
        f"b1 = {model.b1!r}",
        f"b2 = {model.b2!r}",
    ]
    if model.sample_size is not None:
        lines.append(f"sample_size = {model.sample_size}")
    if model.excluded:
        lines.append(f"excluded = {model.excluded}")
    if model.fit_date is not None:
        lines.append(f"fit_date = {model.fit_date}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _parse_model_text(text: str, source: str) -> RegressionModel:
    fields: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise InputFileError(f"{source}: line {lineno} is not a 'key = value' entry")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in _REQUIRED_KEYS + _OPTIONAL_KEYS:
            raise InputFileError(f"{source}: unknown key {key!r} on line {lineno}")
        if key in fields:
            raise InputFileError(f"{source}: duplicate key {key!r} on line {lineno}")
        fields[key] = value.strip()
    missing = [k for k in _REQUIRED_KEYS if k not in fields]
    if missing:
        raise InputFileError(f"{source}: missing keys {missing}")
    try:
        artifact = _as_artifact(fields["artifact"])
    except InvalidInputError as exc:
        raise InputFileError(f"{source}: {exc}") from None
    try:
        c, b1, b2 = (float(fields[k]) for k in ("c", "b1", "b2"))
        sample_size = int(fields["sample_size"]) if "sample_size" in fields else None
        excluded = int(fields["excluded"]) if "excluded" in fields else 0
    except ValueError as exc:
        raise InputFileError(f"{source}: bad numeric value ({exc})") from None
    return RegressionModel(
        artifact=artifact,
        c=c,
        b1=b1,
        b2=b2,
        sample_size=sample_size,
        fit_date=fields.get("fit_date"),
        excluded=excluded,
    )


def load_model(path) -> RegressionModel:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise InputFileError(f"model file not found: {p}") from None
    except OSError as exc:
        raise InputFileError(f"cannot read model file {p}: {exc}") from None
    return _parse_model_text(text, str(p))


def default_model(artifact: Union[Artifact, str]) -> RegressionModel:
    """The bundled specialist model for an artifact class."""
    artifact = _as_artifact(artifact)
    ref = resources.files(__package__).joinpath(f"models/{artifact.value}.model")
    return _parse_model_text(ref.read_text(encoding="utf-8"), f"bundled:{artifact.value}")
