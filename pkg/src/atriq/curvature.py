"""Directional second-derivative maps and their log-domain dispersion statistics.

Everything downstream (masks, scores, classification) is built on the bundle
produced by :func:`analyze`: raw curvature along each axis, the log-compressed
maps, and one dispersion value per axis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError

# 3-tap second-difference kernel, applied along rows for the horizontal map
# and along columns for the vertical map.
KERNEL = (1.0, -2.0, 1.0)

MIN_SIDE = 3


def as_gray_image(img) -> np.ndarray:
    """Coerce to a float64 2D intensity array and check the invariants.

    Intensities are expected in [0, 255]; values are not clipped here, but the
    array must be finite and at least 3x3 so the kernel has full support.
    """
    arr = np.asarray(img, dtype=np.float64)
    if arr.ndim != 2:
        raise InvalidInputError(f"expected a 2D intensity array, got shape {arr.shape}")
    h, w = arr.shape
    if h < MIN_SIDE or w < MIN_SIDE:
        raise InvalidInputError(f"image must be at least {MIN_SIDE}x{MIN_SIDE}, got {h}x{w}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError("image contains non-finite values")
    return arr


def compute_curvature(img) -> tuple[np.ndarray, np.ndarray]:
    """Second differences along rows (c_h) and columns (c_v).

    Borders are replicate-extended so the outputs keep the input shape and
    transposing the image exactly swaps the two maps.
    """
    arr = as_gray_image(img)
    px = np.pad(arr, ((0, 0), (1, 1)), mode="edge")
    c_h = px[:, :-2] - 2.0 * px[:, 1:-1] + px[:, 2:]
    py = np.pad(arr, ((1, 1), (0, 0)), mode="edge")
    c_v = py[:-2, :] - 2.0 * py[1:-1, :] + py[2:, :]
    return c_h, c_v


def log_normalize(c) -> np.ndarray:
    """Compress a curvature map to ln(1 + |c|), pointwise and non-negative."""
    arr = np.asarray(c, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError("curvature map contains non-finite values")
    return np.log1p(np.abs(arr))


def dispersion(l) -> float:
    """Population standard deviation over all entries of a map."""
    arr = np.asarray(l, dtype=np.float64)
    if arr.size == 0:
        raise InvalidInputError("dispersion of an empty map is undefined")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError("map contains non-finite values")
    return float(arr.std())


@dataclass(frozen=True)
class CurvatureBundle:
    """Curvature maps, their log-normalized versions, and the two dispersions.

    All four maps share the source image's shape. Instances are immutable and
    safe to share between threads; the arrays are marked read-only.
    """

    c_h: np.ndarray
    c_v: np.ndarray
    l_h: np.ndarray
    l_v: np.ndarray
    sigma_h: float
    sigma_v: float

    @property
    def shape(self) -> tuple[int, int]:
        return self.c_h.shape

    def validate(self) -> None:
        """Raise if the maps disagree in shape or a dispersion is unusable."""
        shapes = {self.c_h.shape, self.c_v.shape, self.l_h.shape, self.l_v.shape}
        if len(shapes) != 1:
            raise InvalidInputError(f"bundle maps disagree in shape: {sorted(shapes)}")
        for name, value in (("sigma_h", self.sigma_h), ("sigma_v", self.sigma_v)):
            if not (np.isfinite(value) and value >= 0.0):
                raise InvalidInputError(f"{name} must be finite and non-negative, got {value!r}")


def analyze(img) -> CurvatureBundle:
    """Full per-image analysis: curvature, log maps, and dispersions."""
    arr = as_gray_image(img)
    c_h, c_v = compute_curvature(arr)
    l_h = log_normalize(c_h)
    l_v = log_normalize(c_v)
    bundle = CurvatureBundle(
        c_h=c_h,
        c_v=c_v,
        l_h=l_h,
        l_v=l_v,
        sigma_h=dispersion(l_h),
        sigma_v=dispersion(l_v),
    )
    for m in (bundle.c_h, bundle.c_v, bundle.l_h, bundle.l_v):
        m.flags.writeable = False
    return bundle
