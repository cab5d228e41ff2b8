"""Readers for the torus-scan CSV/JSON output schemas.

The record CSV has the fixed header
``omega1,omega2,a_or_eps,rot1,rot2,digT,class,m1,m2,n,M,lyap1,lyap2``
with empty strings where a field does not apply.  Summaries are JSON with a
``schema`` version field.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

EXPECTED_COLUMNS = ("omega1", "omega2", "a_or_eps", "rot1", "rot2", "digT",
                    "class", "m1", "m2", "n", "M", "lyap1", "lyap2")

CLASS_COLORS = {
    "nonresonant": "tab:blue",
    "resonant": "tab:green",
    "periodic": "tab:purple",
    "chaotic": "tab:red",
    "error": "0.6",
}


class SchemaError(ValueError):
    """The input file does not match the documented schema."""


@dataclass
class Records:
    """Columnar view of a record CSV (NaN marks empty numeric fields)."""

    omega1: np.ndarray
    omega2: np.ndarray
    param: np.ndarray
    rot1: np.ndarray
    rot2: np.ndarray
    dig: np.ndarray
    cls: np.ndarray

    def __len__(self) -> int:
        return self.param.size


def _column(rows: list[dict], key: str) -> np.ndarray:
    return np.array([float(r[key]) if r[key] != "" else np.nan for r in rows])


def read_records(path) -> Records:
    path = Path(path)
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or tuple(reader.fieldnames) != EXPECTED_COLUMNS:
            raise SchemaError(
                f"{path}: header {reader.fieldnames} does not match the "
                f"record schema {','.join(EXPECTED_COLUMNS)}")
        rows = list(reader)
    if not rows:
        raise SchemaError(f"{path}: no records")
    return Records(
        omega1=_column(rows, "omega1"),
        omega2=_column(rows, "omega2"),
        param=_column(rows, "a_or_eps"),
        rot1=_column(rows, "rot1"),
        rot2=_column(rows, "rot2"),
        dig=_column(rows, "digT"),
        cls=np.array([r["class"] for r in rows]),
    )


def read_summary(path) -> dict:
    with open(path) as fh:
        summary = json.load(fh)
    if not isinstance(summary, dict) or summary.get("schema") != 1:
        raise SchemaError(f"{path}: not a schema-1 summary")
    return summary


def class_fractions(records: Records) -> tuple[np.ndarray, dict[str, np.ndarray]]:
    """Per-parameter class fractions, parameters sorted ascending."""
    params = np.unique(records.param)
    fractions = {tag: np.zeros(params.size) for tag in CLASS_COLORS}
    for i, value in enumerate(params):
        sel = records.param == value
        total = np.sum(sel)
        for tag in CLASS_COLORS:
            fractions[tag][i] = np.sum(records.cls[sel] == tag) / total
    return params, fractions
