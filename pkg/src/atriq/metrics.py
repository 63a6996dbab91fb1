"""Rank and regression statistics for scoring predictions against opinion scores."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DegenerateInputError, InvalidInputError

MIN_POINTS = 3


def _as_paired(x, y) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=np.float64).ravel()
    y = np.asarray(y, dtype=np.float64).ravel()
    if x.size != y.size:
        raise InvalidInputError(f"vector lengths disagree: {x.size} vs {y.size}")
    if x.size < MIN_POINTS:
        raise InvalidInputError(f"need at least {MIN_POINTS} points, got {x.size}")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise InvalidInputError("vectors must be finite")
    return x, y


def average_ranks(values) -> np.ndarray:
    """1-based ranks; tied values all receive the mean rank of their block."""
    v = np.asarray(values, dtype=np.float64).ravel()
    order = np.argsort(v, kind="stable")
    sorted_v = v[order]
    ranks = np.empty(v.size, dtype=np.float64)
    i = 0
    while i < v.size:
        j = i
        while j + 1 < v.size and sorted_v[j + 1] == sorted_v[i]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return ranks


def pearson(x, y) -> float:
    """Product-moment correlation; raises on a constant vector."""
    x, y = _as_paired(x, y)
    xc = x - x.mean()
    yc = y - y.mean()
    sx = float(np.dot(xc, xc))
    sy = float(np.dot(yc, yc))
    if sx == 0.0 or sy == 0.0:
        raise DegenerateInputError("correlation undefined for a constant vector")
    return float(np.dot(xc, yc)) / math.sqrt(sx * sy)


def spearman(x, y) -> float:
    """Rank correlation with midrank tie handling."""
    x, y = _as_paired(x, y)
    if np.all(x == x[0]) or np.all(y == y[0]):
        raise DegenerateInputError("rank correlation undefined for a constant vector")
    return pearson(average_ranks(x), average_ranks(y))


@dataclass(frozen=True)
class MetricReport:
    """Correlation and error statistics of predictions against targets.

    Percentage errors are relative to the target dynamic range (max - min).
    Correlations are None when undefined, i.e. one side is constant; the
    error statistics remain meaningful in that case.
    """

    spearman_rho: Optional[float]
    pearson_r: Optional[float]
    r_squared: float
    rmse: float
    mae: float
    rmse_pct: float
    mae_pct: float

    def as_dict(self) -> dict:
        return {
            "spearman_rho": self.spearman_rho,
            "pearson_r": self.pearson_r,
            "r_squared": self.r_squared,
            "rmse": self.rmse,
            "mae": self.mae,
            "rmse_pct": self.rmse_pct,
            "mae_pct": self.mae_pct,
        }


METRIC_FIELDS = ("spearman_rho", "pearson_r", "r_squared", "rmse", "mae", "rmse_pct", "mae_pct")


def regression_metrics(predictions, targets) -> MetricReport:
    """Full report of predictions against targets.

    R^2 is the coefficient of determination (1 - SS_res / SS_tot about the
    target mean), not squared correlation, so biased predictors are penalized.
    """
    p, t = _as_paired(predictions, targets)
    residuals = p - t
    rmse = float(np.sqrt(np.mean(residuals**2)))
    mae = float(np.mean(np.abs(residuals)))
    tc = t - t.mean()
    ss_tot = float(np.dot(tc, tc))
    if ss_tot == 0.0:
        raise DegenerateInputError("R^2 undefined: targets have zero variance")
    r_squared = 1.0 - float(np.dot(residuals, residuals)) / ss_tot
    span = float(t.max() - t.min())
    try:
        rho = spearman(p, t)
    except DegenerateInputError:
        rho = None
    try:
        r = pearson(p, t)
    except DegenerateInputError:
        r = None
    return MetricReport(
        spearman_rho=rho,
        pearson_r=r,
        r_squared=r_squared,
        rmse=rmse,
        mae=mae,
        rmse_pct=100.0 * rmse / span,
        mae_pct=100.0 * mae / span,
    )
