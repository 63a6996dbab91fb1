"""Synthetic degradations: separable Gaussian blur and seeded additive noise."""

from __future__ import annotations

import math

import numpy as np

from .curvature import as_gray_image
from .errors import InvalidInputError


def _check_sigma(sigma) -> float:
    s = float(sigma)
    if not (math.isfinite(s) and s > 0.0):
        raise InvalidInputError(f"sigma must be positive and finite, got {sigma!r}")
    return s


def gaussian_kernel(sigma: float) -> np.ndarray:
    """Unit-sum 1D Gaussian sampled on [-r, r] with r = ceil(3*sigma)."""
    s = _check_sigma(sigma)
    radius = int(math.ceil(3.0 * s))
    x = np.arange(-radius, radius + 1, dtype=np.float64)
    k = np.exp(-0.5 * (x / s) ** 2)
    return k / k.sum()


def _convolve_axis(arr: np.ndarray, kernel: np.ndarray, axis: int) -> np.ndarray:
    # Replicate-padded correlation; the kernel is symmetric so this equals
    # convolution. One shifted-slice accumulation per tap.
    radius = kernel.size // 2
    pad = [(0, 0), (0, 0)]
    pad[axis] = (radius, radius)
    padded = np.pad(arr, pad, mode="edge")
    out = np.zeros_like(arr)
    for i, weight in enumerate(kernel):
        index = [slice(None), slice(None)]
        index[axis] = slice(i, i + arr.shape[axis])
        out += weight * padded[tuple(index)]
    return out


def gaussian_blur(img, sigma: float) -> np.ndarray:
    """Separable Gaussian smoothing with replicate borders."""
    arr = as_gray_image(img)
    kernel = gaussian_kernel(sigma)
    return _convolve_axis(_convolve_axis(arr, kernel, 0), kernel, 1)


def add_white_noise(img, sigma: float, seed: int) -> np.ndarray:
    """Add zero-mean Gaussian noise from a seeded generator, clipped to [0, 255]."""
    arr = as_gray_image(img)
    s = _check_sigma(sigma)
    rng = np.random.default_rng(seed)
    return np.clip(arr + rng.normal(0.0, s, size=arr.shape), 0.0, 255.0)
