"""Seeded synthetic degradation ladders over reference images.

Each reference image yields one file per blur level and one per noise level,
plus an optional pristine copy. The emitted manifest uses the degradation
strength as a rank-faithful stand-in for an opinion score (larger means worse),
with references at 0.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

from .degrade import add_white_noise, gaussian_blur
from .errors import InvalidInputError
from .imageio import load_image_grayscale, save_png
from .manifest import ManifestRecord, write_manifest

DEFAULT_BLUR_SIGMAS = (0.5, 1.0, 2.0, 4.0, 8.0)
DEFAULT_NOISE_SIGMAS = (2.0, 5.0, 10.0, 20.0, 40.0)

MANIFEST_NAME = "manifest.csv"


def synthesize_dataset(
    reference_paths: Sequence,
    out_dir,
    blur_sigmas: Sequence[float] = DEFAULT_BLUR_SIGMAS,
    noise_sigmas: Sequence[float] = DEFAULT_NOISE_SIGMAS,
    seed: int = 0,
    include_references: bool = True,
) -> tuple[list[ManifestRecord], Path]:
    """Generate the degraded files and manifest; returns (records, manifest path).

    Noise seeds are derived from the master seed by enumeration, so the whole
    dataset is reproducible byte for byte for a fixed seed and input order.
    """
    if not reference_paths:
        raise InvalidInputError("at least one reference image is required")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    records: list[ManifestRecord] = []
    noise_index = 0
    for ref_path in reference_paths:
        ref_path = Path(ref_path)
        image = load_image_grayscale(ref_path)
        stem = ref_path.stem
        if include_references:
            target = out / f"{stem}_ref.png"
            save_png(target, image)
            records.append(ManifestRecord(target, 0.0, "reference", stem))
        for sigma in blur_sigmas:
            target = out / f"{stem}_blur_{sigma:g}.png"
            save_png(target, gaussian_blur(image, sigma))
            records.append(ManifestRecord(target, float(sigma), "blur", stem))
        for sigma in noise_sigmas:
            target = out / f"{stem}_noise_{sigma:g}.png"
            save_png(target, add_white_noise(image, sigma, seed + noise_index))
            noise_index += 1
            records.append(ManifestRecord(target, float(sigma), "noise", stem))
    manifest_path = out / MANIFEST_NAME
    write_manifest(records, manifest_path)
    return records, manifest_path
