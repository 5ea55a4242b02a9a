"""Deterministic text output: CSV tables and flat key/value blocks."""

from __future__ import annotations

import csv
import enum
import io
import math

SIG_DIGITS = 9
DB_DECIMALS = 5


def format_value(value, db: bool = False) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, enum.Enum):
        return str(value.value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"refusing to serialize non-finite value {value!r}")
        if db:
            return f"{value:.{DB_DECIMALS}f}"
        return f"{value:.{SIG_DIGITS}g}"
    return str(value)


def csv_text(header, rows, db_columns=()) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    db_idx = {header.index(c) for c in db_columns}
    for row in rows:
        writer.writerow([format_value(v, i in db_idx) for i, v in enumerate(row)])
    return buf.getvalue()


def kv_text(items: dict, db_keys=()) -> str:
    """A one-level JSON object with fixed number formatting."""
    lines = []
    for key, value in items.items():
        text = format_value(value, key in db_keys)
        if isinstance(value, (str, enum.Enum)) or value is None:
            text = f'"{text}"'
        lines.append(f'  "{key}": {text}')
    return "{\n" + ",\n".join(lines) + "\n}\n"
