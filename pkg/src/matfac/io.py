"""CSV ingestion, result serialization, and JSON config loading.

Series files are plain CSV: one observation per row, ``p * q`` numeric
fields in row-major frame order (the (i, j) frame entry sits in column
``(i - 1) * q + j``).  A header row and a leading non-numeric date
column are detected and skipped.  All numeric output is written with 12
significant digits so files are bit-reproducible for a given seed.
"""

from __future__ import annotations

import csv
import dataclasses
import json
from pathlib import Path
from typing import Optional, Sequence, TextIO

import numpy as np

from .dgp import DgpConfig
from .estimation import LagParams, SideEstimate
from .evaluation import CvReport, McCellConfig, McReport
from .exceptions import ConfigError, ParseError

FMT = "%.12g"
CURVE_COLUMNS = ("i", "T_hat", "G_hat", "MR", "SR", "ER")


def _is_number(text: str) -> bool:
    try:
        float(text)
    except ValueError:
        return False
    return True


def read_series_csv(path: str, p: int, q: int, demean: bool = True) -> np.ndarray:
    """Load a series CSV into an (n, p, q) array.

    By default the per-entry temporal mean is subtracted, matching the
    zero-mean assumption of the estimation pipeline; pass
    ``demean=False`` to keep raw values (e.g. for already-centered or
    synthetic data).
    """
    if p < 1 or q < 1:
        raise ConfigError(f"frame dimensions must be positive, got p={p}, q={q}")
    rows: list[list[float]] = []
    skip_date_col: Optional[bool] = None
    with open(path, newline="") as handle:
        for line_no, fields in enumerate(csv.reader(handle), start=1):
            fields = [f.strip() for f in fields if f.strip() != ""] if fields else []
            if not fields:
                continue
            if not rows and skip_date_col is None and not all(_is_number(f) for f in fields):
                # Header row, unless it looks like a date column in front of data.
                if len(fields) == p * q + 1 and all(_is_number(f) for f in fields[1:]):
                    skip_date_col = True
                    fields = fields[1:]
                else:
                    continue
            elif skip_date_col is None:
                skip_date_col = len(fields) == p * q + 1 and not _is_number(fields[0])
                if skip_date_col:
                    fields = fields[1:]
            elif skip_date_col:
                if len(fields) != p * q + 1:
                    raise ParseError(
                        f"{path}:{line_no}: expected {p * q} fields plus date column, got {len(fields)}"
                    )
                fields = fields[1:]
            if len(fields) != p * q:
                raise ParseError(
                    f"{path}:{line_no}: expected {p * q} fields, got {len(fields)}"
                )
            try:
                rows.append([float(f) for f in fields])
            except ValueError as exc:
                raise ParseError(f"{path}:{line_no}: non-numeric field ({exc})") from None
    if not rows:
        raise ParseError(f"{path}: no data rows")
    series = np.asarray(rows, dtype=np.float64).reshape(len(rows), p, q)
    if not np.all(np.isfinite(series)):
        raise ParseError(f"{path}: non-finite values in data")
    if demean:
        series = series - series.mean(axis=0)
    return series


def write_series_csv(series: np.ndarray, path: str) -> None:
    """Write an (n, p, q) series in the row-major layout read_series_csv expects."""
    series = np.asarray(series, dtype=np.float64)
    n, p, q = series.shape
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow([f"y_{i}_{j}" for i in range(1, p + 1) for j in range(1, q + 1)])
        for t in range(n):
            writer.writerow([FMT % v for v in series[t].ravel()])


def write_curves_csv(side_estimate: SideEstimate, path: str) -> None:
    """Curve CSV for one (side, mode): T/G statistics plus ratio curves.

    Ratio columns are blank past the search bound ``i_max`` (MR/ER) or
    past the SR range.
    """
    t = side_estimate.curves.t_curve
    g = side_estimate.curves.g_curve
    ratios = {m: side_estimate.results[m].ratio_curve for m in ("MR", "SR", "ER")}
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(CURVE_COLUMNS)
        for k in range(t.size):
            row = [str(k + 1), FMT % t[k], FMT % g[k]]
            for method in ("MR", "SR", "ER"):
                curve = ratios[method]
                row.append(FMT % curve[k] if k < curve.size else "")
            writer.writerow(row)


def curves_filename(side: str, mode: str) -> str:
    return f"curves_{side}_{mode}.csv"


MC_COLUMNS = (
    "p",
    "q",
    "n",
    "r",
    "c",
    "a",
    "delta",
    "omega",
    "noise_case",
    "replications",
    "method",
    "mode",
    "side",
    "exact",
    "under",
    "over",
    "x",
    "y",
    "z",
    "cell",
)


def write_mc_csv(
    cells: Sequence[tuple[McCellConfig, McReport]], path_or_handle: str | TextIO
) -> None:
    """Tidy Monte Carlo table: one row per (cell, method, mode, side)."""

    def emit(handle: TextIO) -> None:
        writer = csv.writer(handle)
        writer.writerow(MC_COLUMNS)
        for config, report in cells:
            d = config.dgp
            for mode in config.modes:
                for method in config.methods:
                    for side in ("row", "col"):
                        exact, under, over = report.counts[(method, mode, side)]
                        x, y, z = report.frequencies(method, mode, side)
                        writer.writerow(
                            [
                                d.p,
                                d.q,
                                d.n,
                                d.r,
                                d.c,
                                FMT % d.a,
                                FMT % d.delta,
                                FMT % d.omega,
                                d.noise_case,
                                report.replications,
                                method,
                                mode,
                                side,
                                exact,
                                under,
                                over,
                                FMT % x,
                                FMT % y,
                                FMT % z,
                                report.cell(method, mode, side),
                            ]
                        )

    if isinstance(path_or_handle, str):
        with open(path_or_handle, "w", newline="") as handle:
            emit(handle)
    else:
        emit(path_or_handle)


def write_cv_csv(report: CvReport, path: str) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["r", "c", "rss", "folds"])
        for (r, c), rss in zip(report.candidates, report.rss):
            writer.writerow([r, c, FMT % rss, report.folds])


def _build_dataclass(cls, data: dict, context: str):
    names = {f.name for f in dataclasses.fields(cls)}
    unknown = set(data) - names
    if unknown:
        raise ConfigError(f"{context}: unknown keys {sorted(unknown)}")
    return cls(**data)


def load_mc_config(path: str, overrides: Optional[dict] = None) -> list[McCellConfig]:
    """Load Monte Carlo cells from a JSON file.

    The file holds either one cell object or ``{"cells": [...]}``.  Each
    cell has keys ``dgp`` (DgpConfig fields), ``params`` (LagParams
    fields), and optional ``m``, ``replications``, ``methods``,
    ``modes``.  ``overrides`` (from CLI flags) replace matching fields
    in every cell.
    """
    try:
        with open(path) as handle:
            raw = json.load(handle)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from None
    cells_raw = raw.get("cells", [raw]) if isinstance(raw, dict) else raw
    if not isinstance(cells_raw, list) or not cells_raw:
        raise ConfigError(f"{path}: expected a cell object or a non-empty 'cells' list")

    overrides = dict(overrides or {})
    dgp_names = {f.name for f in dataclasses.fields(DgpConfig)}
    lag_names = {f.name for f in dataclasses.fields(LagParams)}

    cells = []
    for idx, cell_raw in enumerate(cells_raw):
        if not isinstance(cell_raw, dict):
            raise ConfigError(f"{path}: cell {idx} is not an object")
        dgp_data = dict(cell_raw.get("dgp", {}))
        params_data = dict(cell_raw.get("params", {}))
        cell_data = {k: v for k, v in cell_raw.items() if k not in ("dgp", "params")}
        for key, value in overrides.items():
            if value is None:
                continue
            if key in dgp_names:
                dgp_data[key] = value
            elif key in lag_names:
                params_data[key] = value
            else:
                cell_data[key] = value
        dgp = _build_dataclass(DgpConfig, dgp_data, f"{path}: cell {idx} dgp")
        params = _build_dataclass(LagParams, params_data, f"{path}: cell {idx} params")
        if "methods" in cell_data:
            cell_data["methods"] = tuple(cell_data["methods"])
        if "modes" in cell_data:
            cell_data["modes"] = tuple(cell_data["modes"])
        cells.append(
            _build_dataclass(
                McCellConfig,
                {"dgp": dgp, "params": params, **cell_data},
                f"{path}: cell {idx}",
            )
        )
    return cells


def parse_candidates(text: str) -> list[tuple[int, int]]:
    """Parse an ``"r:c,r:c,..."`` candidate list."""
    out = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(":")
        if len(parts) != 2:
            raise ConfigError(f"bad candidate {chunk!r}, expected r:c")
        try:
            out.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise ConfigError(f"bad candidate {chunk!r}, expected integers r:c") from None
    if not out:
        raise ConfigError("empty candidate list")
    return out


def ensure_dir(path: str) -> Path:
    out = Path(path)
    out.mkdir(parents=True, exist_ok=True)
    return out
