"""Delimited report emission.

Both writers are deterministic: identical payloads produce identical
bytes. CSV follows RFC 4180 (CRLF line endings, mandatory header row)
with floats at 17 significant digits so values round-trip exactly; JSON
uses stable key order and carries a schema tag.
"""

from __future__ import annotations

import csv
import json
import sys

import numpy as np

__all__ = ["SCHEMA", "format_cell", "write_csv", "write_json"]

SCHEMA = "lebesgue-lab/1"


def format_cell(value) -> str:
    """Render one CSV cell: floats at 17 significant digits, booleans
    lowercase, None empty."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return "%.17g" % float(value)
    return str(value)


def _open_out(path, newline):
    if path == "-" or path is None:
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=newline), True


def write_csv(path, header, rows) -> None:
    """Write one RFC 4180 table; ``path`` of "-" or None means stdout."""
    fh, owned = _open_out(path, newline="")
    try:
        writer = csv.writer(fh)
        writer.writerow(list(header))
        for row in rows:
            writer.writerow([format_cell(v) for v in row])
    finally:
        if owned:
            fh.close()


def _plain(value):
    # json refuses numpy scalars; unwrap them (and containers) first.
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def write_json(path, payload: dict) -> None:
    """Write the payload with the schema tag, sorted keys, one trailing
    newline; ``path`` of "-" or None means stdout."""
    body = {"schema": SCHEMA, **payload}
    text = json.dumps(_plain(body), sort_keys=True, indent=2) + "\n"
    fh, owned = _open_out(path, newline=None)
    try:
        fh.write(text)
    finally:
        if owned:
            fh.close()
