"""Dual-threshold orientation masks, the ATR score, and saliency renderings.

A pixel enters the horizontal mask when its vertical log-curvature reaches the
activation bound (beta times that map's dispersion) while its horizontal
log-curvature stays under the tolerance bound (alpha times the other
dispersion); the vertical mask swaps the roles. The ATR score is the fraction
of pixels active in either mask.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .curvature import CurvatureBundle, as_gray_image
from .errors import InvalidInputError


class FilterMode(enum.Enum):
    """Operating regime implied by the relative size of alpha and beta."""

    TEXTURE = "texture"
    SALIENCY = "saliency"
    BOUNDARY = "boundary"


@dataclass(frozen=True)
class FilterParams:
    """Threshold pair: alpha scales the tolerance bound, beta the activation bound."""

    alpha: float
    beta: float

    def __post_init__(self):
        for name in ("alpha", "beta"):
            value = getattr(self, name)
            try:
                value = float(value)
            except (TypeError, ValueError):
                raise InvalidInputError(f"{name} must be a number, got {getattr(self, name)!r}") from None
            if not (math.isfinite(value) and value > 0.0):
                raise InvalidInputError(f"{name} must be positive and finite, got {value!r}")
            object.__setattr__(self, name, value)

    @property
    def mode(self) -> FilterMode:
        if self.alpha > self.beta:
            return FilterMode.TEXTURE
        if self.beta > self.alpha:
            return FilterMode.SALIENCY
        return FilterMode.BOUNDARY


def classify_mode(params: FilterParams) -> FilterMode:
    """Texture when alpha dominates, saliency when beta does, boundary at equality."""
    return params.mode


@dataclass(frozen=True)
class MaskPair:
    """Boolean orientation masks plus their pixel counts."""

    m_horz: np.ndarray
    m_vert: np.ndarray
    horz_count: int
    vert_count: int
    union_count: int

    @classmethod
    def from_masks(cls, m_horz, m_vert) -> "MaskPair":
        m_horz = np.asarray(m_horz, dtype=bool)
        m_vert = np.asarray(m_vert, dtype=bool)
        if m_horz.shape != m_vert.shape:
            raise InvalidInputError(f"mask shapes disagree: {m_horz.shape} vs {m_vert.shape}")
        return cls(
            m_horz=m_horz,
            m_vert=m_vert,
            horz_count=int(np.count_nonzero(m_horz)),
            vert_count=int(np.count_nonzero(m_vert)),
            union_count=int(np.count_nonzero(m_horz | m_vert)),
        )

    @property
    def shape(self) -> tuple[int, int]:
        return self.m_horz.shape


def compute_masks(bundle: CurvatureBundle, params: FilterParams) -> MaskPair:
    """Evaluate both orientation predicates over a bundle.

    Activation is non-strict (>=) and tolerance strict (<), so a constant
    image, whose dispersions are zero, yields empty masks.
    """
    bundle.validate()
    m_horz = (bundle.l_v >= params.beta * bundle.sigma_v) & (bundle.l_h < params.alpha * bundle.sigma_h)
    m_vert = (bundle.l_h >= params.beta * bundle.sigma_h) & (bundle.l_v < params.alpha * bundle.sigma_v)
    return MaskPair.from_masks(m_horz, m_vert)


@dataclass(frozen=True)
class AtrScore:
    """Fraction of image pixels active in either orientation mask."""

    value: float
    raw_count: int
    n_pixels: int
    params: FilterParams

    def log_safe_value(self) -> tuple[float, bool]:
        """Value usable under ln().

        A zero score is clamped to one pixel's worth of coverage and flagged,
        so downstream log-space consumers stay in-domain without reordering
        any non-degenerate scores.
        """
        if self.value > 0.0:
            return self.value, False
        return 1.0 / self.n_pixels, True


def atr_score(mask: MaskPair, width: int, height: int, params: FilterParams) -> AtrScore:
    """Union coverage of the two masks over a width x height pixel grid."""
    if width <= 0 or height <= 0:
        raise InvalidInputError(f"image dimensions must be positive, got {width}x{height}")
    if mask.shape != (height, width):
        raise InvalidInputError(f"mask shape {mask.shape} does not match {height}x{width}")
    n_pixels = width * height
    return AtrScore(
        value=mask.union_count / n_pixels,
        raw_count=mask.union_count,
        n_pixels=n_pixels,
        params=params,
    )


def score_bundle(bundle: CurvatureBundle, params: FilterParams) -> AtrScore:
    """Masks plus score in one step; lets callers reuse one analysis per image."""
    masks = compute_masks(bundle, params)
    height, width = bundle.shape
    return atr_score(masks, width, height, params)


# Mask-true pixels are painted this color in overlays; it differs from every
# gray value, so the overlay changes exactly on the active pixels.
HIGHLIGHT_RGB = (255, 0, 0)


@dataclass(frozen=True)
class SaliencyArtifacts:
    """Renderable views of a mask pair: per-orientation, union, and overlay."""

    horz: np.ndarray
    vert: np.ndarray
    union: np.ndarray
    overlay: np.ndarray


def saliency_artifacts(img, mask: MaskPair) -> SaliencyArtifacts:
    """Render masks as 0/255 grayscale and an RGB overlay on the source."""
    arr = as_gray_image(img)
    if mask.shape != arr.shape:
        raise InvalidInputError(f"mask shape {mask.shape} does not match image shape {arr.shape}")
    base = np.clip(np.rint(arr), 0, 255).astype(np.uint8)
    union = mask.m_horz | mask.m_vert
    overlay = np.repeat(base[:, :, None], 3, axis=2)
    overlay[union] = HIGHLIGHT_RGB

    def render(m: np.ndarray) -> np.ndarray:
        return np.where(m, 255, 0).astype(np.uint8)

    return SaliencyArtifacts(
        horz=render(mask.m_horz),
        vert=render(mask.m_vert),
        union=render(union),
        overlay=overlay,
    )
