"""Serialization of sweep tables and boundary curves.

Two formats, same field names: CSV with one header line, and JSON-lines
with one row object per line. Floats are written with 17 significant
digits, which round-trips double precision exactly; a read of an emitted
file reproduces the table bit for bit, NaN and inf included.
"""

import csv
import json
from contextlib import nullcontext

import numpy as np

from .sweep import BoundaryCurve, SweepTable


def _writable(path_or_handle, newline=None):
    if hasattr(path_or_handle, "write"):
        return nullcontext(path_or_handle)
    return open(path_or_handle, "w", newline=newline)

FLOAT_FORMAT = "%.17g"
SWEEP_FIELDS = ("j", "b", "t", "delta", "quantity", "value")
FORMATS = ("csv", "json-lines")


def format_float(x):
    return FLOAT_FORMAT % float(x)


def _has_errors(table):
    return any(table.error)


def write_sweep_csv(table, path):
    """Write a SweepTable as CSV; the error column appears only when used."""
    with_errors = _has_errors(table)
    fields = SWEEP_FIELDS + ("error",) if with_errors else SWEEP_FIELDS
    with _writable(path, newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(fields)
        for row in table.rows():
            record = [
                format_float(row.j),
                format_float(row.b),
                format_float(row.t),
                format_float(row.delta),
                row.quantity,
                format_float(row.value),
            ]
            if with_errors:
                record.append(row.error)
            writer.writerow(record)


def write_sweep_jsonl(table, path):
    """Write a SweepTable as JSON-lines, one row object per line."""
    with _writable(path) as handle:
        for row in table.rows():
            record = {
                "j": row.j,
                "b": row.b,
                "t": row.t,
                "delta": row.delta,
                "quantity": row.quantity,
                "value": row.value,
            }
            if row.error:
                record["error"] = row.error
            handle.write(_dumps_row(record) + "\n")


def _dumps_row(record):
    # json has no NaN/inf literals; keep rows parseable by emitting strings
    # for the rare non-finite value and converting back on read
    safe = {}
    for key, value in record.items():
        if isinstance(value, float) and not np.isfinite(value):
            safe[key] = repr(value)
        else:
            safe[key] = value
    return json.dumps(safe, allow_nan=False)


def _parse_float(text):
    return float(text)


def _table_from_rows(rows):
    return SweepTable(
        j=np.array([r[0] for r in rows]),
        b=np.array([r[1] for r in rows]),
        t=np.array([r[2] for r in rows]),
        delta=np.array([r[3] for r in rows]),
        quantity=tuple(r[4] for r in rows),
        value=np.array([r[5] for r in rows]),
        error=tuple(r[6] for r in rows),
    )


def read_sweep_csv(path):
    with open(path, newline="") as handle:
        reader = csv.DictReader(handle)
        rows = [
            (
                _parse_float(record["j"]),
                _parse_float(record["b"]),
                _parse_float(record["t"]),
                _parse_float(record["delta"]),
                record["quantity"],
                _parse_float(record["value"]),
                record.get("error") or "",
            )
            for record in reader
        ]
    return _table_from_rows(rows)


def read_sweep_jsonl(path):
    rows = []
    with open(path) as handle:
        for line in handle:
            line = line.strip()
            if not line:
                continue
            record = json.loads(line)
            rows.append(
                (
                    _parse_float(record["j"]),
                    _parse_float(record["b"]),
                    _parse_float(record["t"]),
                    _parse_float(record["delta"]),
                    record["quantity"],
                    _parse_float(record["value"]),
                    record.get("error") or "",
                )
            )
    return _table_from_rows(rows)


def write_sweep(table, path, fmt="csv"):
    if fmt == "csv":
        write_sweep_csv(table, path)
    elif fmt == "json-lines":
        write_sweep_jsonl(table, path)
    else:
        raise ValueError(f"unknown format {fmt!r}; valid: {FORMATS}")


def read_sweep(path, fmt=None):
    if fmt is None:
        fmt = "json-lines" if str(path).endswith((".jsonl", ".ndjson")) else "csv"
    if fmt == "csv":
        return read_sweep_csv(path)
    if fmt == "json-lines":
        return read_sweep_jsonl(path)
    raise ValueError(f"unknown format {fmt!r}; valid: {FORMATS}")


def write_boundary_csv(curve, path):
    """Write a BoundaryCurve with columns b, t_c, branch."""
    with _writable(path, newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(("b", "t_c", "branch"))
        for b, t_c, branch in zip(curve.field, curve.t_c, curve.branch):
            writer.writerow((format_float(b), format_float(t_c), branch))


def read_boundary_csv(path):
    fields, temps, branches = [], [], []
    with open(path, newline="") as handle:
        for record in csv.DictReader(handle):
            fields.append(_parse_float(record["b"]))
            temps.append(_parse_float(record["t_c"]))
            branches.append(record["branch"])
    return BoundaryCurve(
        field=np.array(fields),
        t_c=np.array(temps),
        branch=tuple(branches),
        tolerance=float("nan"),
    )
