#!/usr/bin/env python3
"""
JSON and CSV rendering for command output
"""

import csv
import io
import json
from typing import Any, Iterable, Sequence


def format_float(value: Any) -> str:
    """Shortest round-tripping representation; blank for missing values."""
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(float(value))
    return str(value)


def render_json(payload: Any) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def render_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_float(v) for v in row])
    return buffer.getvalue()
