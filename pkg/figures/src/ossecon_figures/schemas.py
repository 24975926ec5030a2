"""Readers for the ossecon CLI's output files.

Every reader validates the columns or keys it needs and raises
SchemaError otherwise; rendering code never touches raw files.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "SchemaError",
    "SweepTable",
    "EquilibriumCurves",
    "TailFitData",
    "read_sweep",
    "read_equilibrium",
    "read_tailfit",
]


class SchemaError(ValueError):
    """An input file is missing, empty, or shaped wrong for the figure."""


@dataclass(frozen=True)
class SweepTable:
    """Rows of a sweep.csv, restricted to the columns figures use."""

    axis: str
    value: np.ndarray
    v: np.ndarray
    omega_bound: np.ndarray
    pi_floor_ratio: np.ndarray
    source: str


@dataclass(frozen=True)
class EquilibriumCurves:
    """Ratio curves over v from an equilibrium.csv or equilibrium.json."""

    label: str
    v: np.ndarray
    m_ratio: np.ndarray
    ms_ratio: np.ndarray
    qbar_ratio: np.ndarray
    utility_ratio: np.ndarray
    source: str


@dataclass(frozen=True)
class TailFitData:
    """Slope, intercept, and binned points from a tailfit.json."""

    slope: float
    intercept: float
    r_squared: float
    ranks: np.ndarray
    values: np.ndarray
    source: str


def _read_csv_rows(path: Path, needed: tuple[str, ...]) -> list[dict]:
    if not path.exists():
        raise SchemaError(f"{path} does not exist")
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in needed if c not in header]
        if missing:
            raise SchemaError(f"{path} lacks required columns {missing}; header {header}")
        rows = list(reader)
    if not rows:
        raise SchemaError(f"{path} has a header but no data rows")
    return rows


def _column(rows: list[dict], name: str, path: Path) -> np.ndarray:
    try:
        return np.array([float(r[name]) for r in rows])
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"{path} column {name} is not numeric: {exc}") from exc


def read_sweep(path) -> SweepTable:
    """Load sweep.csv; all rows must share one sweep axis."""
    path = Path(path)
    needed = ("axis", "value", "v", "omega_bound", "pi_floor_ratio")
    rows = _read_csv_rows(path, needed)
    axes = {r["axis"] for r in rows}
    if len(axes) != 1:
        raise SchemaError(f"{path} mixes sweep axes {sorted(axes)}")
    return SweepTable(
        axis=axes.pop(),
        value=_column(rows, "value", path),
        v=_column(rows, "v", path),
        omega_bound=_column(rows, "omega_bound", path),
        pi_floor_ratio=_column(rows, "pi_floor_ratio", path),
        source=str(path),
    )


_RATIO_COLUMNS = ("v", "m_ratio", "ms_ratio", "qbar_ratio", "utility_ratio")


def read_equilibrium(path) -> EquilibriumCurves:
    """Load ratio curves from equilibrium.csv or equilibrium.json.

    The JSON carries the resolved config, so its scenario names the
    curve; a bare CSV falls back to the file stem.
    """
    path = Path(path)
    if path.suffix == ".json":
        if not path.exists():
            raise SchemaError(f"{path} does not exist")
        try:
            payload = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path} is not valid JSON: {exc}") from exc
        rows = payload.get("rows")
        if not isinstance(rows, list) or not rows:
            raise SchemaError(f"{path} has no rows")
        for col in _RATIO_COLUMNS:
            if col not in rows[0]:
                raise SchemaError(f"{path} rows lack column {col}")
        label = str(payload.get("config", {}).get("scenario", path.stem))
    else:
        rows = _read_csv_rows(path, _RATIO_COLUMNS)
        label = path.stem
    return EquilibriumCurves(
        label=label,
        v=_column(rows, "v", path),
        m_ratio=_column(rows, "m_ratio", path),
        ms_ratio=_column(rows, "ms_ratio", path),
        qbar_ratio=_column(rows, "qbar_ratio", path),
        utility_ratio=_column(rows, "utility_ratio", path),
        source=str(path),
    )


def read_tailfit(path) -> TailFitData:
    """Load a tailfit.json written by `ossecon calibrate`."""
    path = Path(path)
    if not path.exists():
        raise SchemaError(f"{path} does not exist")
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path} is not valid JSON: {exc}") from exc
    for key in ("slope", "intercept", "r_squared", "bin_table"):
        if key not in payload:
            raise SchemaError(f"{path} lacks key {key!r}")
    table = payload["bin_table"]
    if not isinstance(table, list) or not table:
        raise SchemaError(f"{path} bin_table is empty")
    try:
        ranks = np.array([float(r) for r, _ in table])
        values = np.array([float(v) for _, v in table])
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"{path} bin_table rows must be [rank, value] pairs") from exc
    return TailFitData(
        slope=float(payload["slope"]),
        intercept=float(payload["intercept"]),
        r_squared=float(payload["r_squared"]),
        ranks=ranks,
        values=values,
        source=str(path),
    )
