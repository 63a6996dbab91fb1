"""Raster loading with BT.601 grayscale conversion, plus PNG emission."""

from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .curvature import as_gray_image
from .errors import InputFileError

# BT.601 luma weights for R, G, B.
LUMA_WEIGHTS = (0.299, 0.587, 0.114)


def load_image_grayscale(path) -> np.ndarray:
    """Decode an image file to a float64 luma array in [0, 255].

    8-bit grayscale inputs pass through unchanged; everything else is
    converted to RGB first and reduced with the BT.601 weights.
    """
    p = Path(path)
    try:
        with Image.open(p) as im:
            if im.mode == "L":
                arr = np.asarray(im, dtype=np.float64)
            else:
                rgb = np.asarray(im.convert("RGB"), dtype=np.float64)
                arr = (
                    LUMA_WEIGHTS[0] * rgb[..., 0]
                    + LUMA_WEIGHTS[1] * rgb[..., 1]
                    + LUMA_WEIGHTS[2] * rgb[..., 2]
                )
    except FileNotFoundError:
        raise InputFileError(f"image not found: {p}") from None
    except UnidentifiedImageError:
        raise InputFileError(f"not a decodable image: {p}") from None
    except OSError as exc:
        raise InputFileError(f"failed to read image {p}: {exc}") from None
    return as_gray_image(arr)


def save_png(path, arr) -> None:
    """Write a 2D grayscale or HxWx3 RGB array as PNG, rounding to 8 bits."""
    a = np.asarray(arr)
    if a.dtype != np.uint8:
        a = np.clip(np.rint(a), 0, 255).astype(np.uint8)
    mode = "L" if a.ndim == 2 else "RGB"
    Image.fromarray(a, mode=mode).save(Path(path), format="PNG")
