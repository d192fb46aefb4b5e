"""Deterministic CSV and JSON emission.

JSON carries full float precision (shortest round-trip repr), so re-parsing a
report reproduces the in-memory values bit for bit. CSV renders floats with 9
significant digits, uses a header row, LF line endings and UTF-8. Row order
is fixed by the caller; nothing here reorders or buffers nondeterministically.
"""

from __future__ import annotations

import json
import sys


def format_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.9g}"
    if value is None:
        return ""
    return str(value)


def render_csv(columns: list[str], rows: list[list]) -> str:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(format_cell(cell) for cell in row))
    return "\n".join(lines) + "\n"


def render_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, allow_nan=False) + "\n"


def emit(payload: dict, columns: list[str], rows: list[list], fmt: str, out_path: str | None):
    """Write one report in the requested format to stdout or a file."""
    text = render_json(payload) if fmt == "json" else render_csv(columns, rows)
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
