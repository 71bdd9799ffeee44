"""Delimited-output writers: CSV and JSON, written atomically.

Numbers are serialized with shortest round-trip representation, so re-parsed
output reproduces the in-memory values exactly and reruns with the same
config are byte-identical.  CSV files carry the effective run configuration
as '#'-prefixed comment lines above the header row.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

__all__ = ["format_value", "write_csv", "write_json", "atomic_write_text"]


def format_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def atomic_write_text(path, text: str) -> Path:
    """Write text via a temp file and rename, so readers never see partials."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def write_csv(path, columns, rows, config: dict | None = None,
              footer: list[str] | None = None) -> Path:
    """UTF-8 CSV, ',' delimiter, LF endings, config echoed as '#' comments."""
    lines = []
    for key in sorted(config or {}):
        lines.append(f"# {key}={format_value((config or {})[key])}")
    lines.append(",".join(columns))
    for row in rows:
        if len(row) != len(columns):
            raise ValueError(f"row width {len(row)} != {len(columns)} columns")
        lines.append(",".join(format_value(v) for v in row))
    for note in footer or []:
        lines.append(f"# {note}")
    return atomic_write_text(path, "\n".join(lines) + "\n")


def write_json(path, obj: dict) -> Path:
    """Pretty-printed JSON object; floats keep full round-trip precision."""
    return atomic_write_text(path, json.dumps(obj, indent=2) + "\n")
