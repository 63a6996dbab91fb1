"""Dataset manifests: delimited text tying image files to scores and labels.

Format: UTF-8 CSV with header ``image_path,dmos,artifact_label,ref_id``.
Lines starting with '#' are ignored. Image paths are resolved relative to the
manifest's own directory, which keeps a dataset directory relocatable.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .errors import InputFileError

HEADER = ("image_path", "dmos", "artifact_label", "ref_id")

LABEL_ALIASES = {
    "blur": "blur",
    "gblur": "blur",
    "gaussian_blur": "blur",
    "gaussian-blur": "blur",
    "noise": "noise",
    "wn": "noise",
    "white_noise": "noise",
    "white-noise": "noise",
    "awgn": "noise",
    "reference": "reference",
    "ref": "reference",
    "pristine": "reference",
    "original": "reference",
    "unknown": "unknown",
}

LABELS = ("blur", "noise", "reference", "unknown")


@dataclass(frozen=True)
class ManifestRecord:
    image_path: Path
    dmos: float
    artifact_label: str
    ref_id: str


def normalize_label(raw: str) -> str:
    key = raw.strip().lower()
    if key not in LABEL_ALIASES:
        raise ValueError(f"unknown artifact label {raw!r} (known: {sorted(set(LABEL_ALIASES))})")
    return LABEL_ALIASES[key]


def load_manifest(path) -> list[ManifestRecord]:
    """Parse a manifest file; errors name the offending line."""
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise InputFileError(f"manifest not found: {p}") from None
    except OSError as exc:
        raise InputFileError(f"cannot read manifest {p}: {exc}") from None

    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        rows.append((lineno, raw))
    if not rows:
        raise InputFileError(f"{p}: manifest is empty")

    header_line = rows[0][1]
    header = tuple(cell.strip().lower() for cell in next(csv.reader([header_line])))
    if header != HEADER:
        raise InputFileError(f"{p}: header must be {','.join(HEADER)!r}, got {header_line.strip()!r}")

    base = p.parent
    records = []
    for lineno, raw in rows[1:]:
        cells = next(csv.reader([raw]))
        if len(cells) != len(HEADER):
            raise InputFileError(f"{p}: line {lineno}: expected {len(HEADER)} columns, got {len(cells)}")
        raw_path, raw_dmos, raw_label, ref_id = (c.strip() for c in cells)
        if not raw_path:
            raise InputFileError(f"{p}: line {lineno}: empty image_path")
        try:
            dmos = float(raw_dmos)
        except ValueError:
            raise InputFileError(f"{p}: line {lineno}: unparsable dmos value {raw_dmos!r}") from None
        try:
            label = normalize_label(raw_label)
        except ValueError as exc:
            raise InputFileError(f"{p}: line {lineno}: {exc}") from None
        if not ref_id:
            raise InputFileError(f"{p}: line {lineno}: empty ref_id")
        image_path = Path(raw_path)
        if not image_path.is_absolute():
            image_path = base / image_path
        records.append(ManifestRecord(image_path=image_path, dmos=dmos, artifact_label=label, ref_id=ref_id))
    return records


def write_manifest(records: Sequence[ManifestRecord], path) -> None:
    """Emit a manifest; paths under the manifest's directory are written relative."""
    p = Path(path)
    base = p.parent
    lines = [",".join(HEADER)]
    for r in records:
        image_path = Path(r.image_path)
        try:
            rel = image_path.relative_to(base)
            written = rel.as_posix()
        except ValueError:
            written = str(image_path)
        lines.append(f"{written},{r.dmos!r},{r.artifact_label},{r.ref_id}")
    p.write_text("\n".join(lines) + "\n", encoding="utf-8")
