"""Self-describing JSON documents emitted by the command-line tools.

Documents embed the tool version and the exact parameters of the run. They
contain no timestamps, so identical inputs (and seed) reproduce identical
bytes.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from . import __version__

TOOL_NAME = "atriq"


def _jsonable(value):
    """Recursively convert to JSON-safe values; non-finite floats become None."""
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, float):
        return value if math.isfinite(value) else None
    if isinstance(value, (str, int, bool)) or value is None:
        return value
    if isinstance(value, Path):
        return str(value)
    if hasattr(value, "item"):  # numpy scalars
        return _jsonable(value.item())
    return str(value)


def build_document(command: str, parameters: dict, results) -> dict:
    return {
        "tool": TOOL_NAME,
        "version": __version__,
        "command": command,
        "parameters": _jsonable(parameters),
        "results": _jsonable(results),
    }


def document_text(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, allow_nan=False) + "\n"


def write_document(doc: dict, path) -> None:
    Path(path).write_text(document_text(doc), encoding="utf-8")
