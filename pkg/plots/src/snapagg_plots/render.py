"""Render sweep-grid CSVs into the two figure styles of the study:
stability heatmaps over (threshold x window size) and FP/FN/distance
curves with one axis fixed.

The only coupling to the sweep tool is its emitted CSV schema; rows are
read with the stdlib csv module.  Undefined score cells (empty fields)
are drawn as hatched grey squares so they cannot be mistaken for low
values.  Heatmap cells use vector quads, keeping the SVG output
structurally inspectable.
"""

from __future__ import annotations

import csv
from typing import List, Optional, Tuple

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.patches import Rectangle

#: Column set produced by the sweep emitter.
SCHEMA = (
    "w_a", "w_f", "threshold_pct", "mode", "seed", "stability", "fp", "fn",
    "distance", "normalized_distance", "retention", "n_snapshots",
    "kept_link_fraction",
)

_SAVE_STYLE = {"svg.fonttype": "none"}  # keep SVG text as text, not paths


class SchemaError(ValueError):
    """The CSV does not match the sweep emitter's column set."""


def read_grid(path: str) -> List[dict]:
    """Load and type a sweep CSV, validating the schema."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for column in SCHEMA:
            if column not in header:
                raise SchemaError(f"missing column {column!r} in {path}")
        rows = []
        for raw in reader:
            rows.append(
                {
                    "w_a": int(raw["w_a"]),
                    "w_f": int(raw["w_f"]),
                    "threshold_pct": float(raw["threshold_pct"]),
                    "mode": raw["mode"],
                    "stability": float(raw["stability"]) if raw["stability"] else None,
                    "fp": int(raw["fp"]),
                    "fn": int(raw["fn"]),
                    "distance": int(raw["distance"]),
                    "normalized_distance": float(raw["normalized_distance"]),
                    "retention": float(raw["retention"]),
                    "kept_link_fraction": float(raw["kept_link_fraction"]),
                }
            )
    if not rows:
        raise SchemaError(f"no data rows in {path}")
    return rows


def _single_mode(rows: List[dict]) -> str:
    modes = sorted({r["mode"] for r in rows})
    if len(modes) != 1:
        raise ValueError(f"expected one mode per file, found {modes}")
    return modes[0]


def humanize_seconds(seconds: int) -> str:
    if seconds % 3600 == 0:
        return f"{seconds // 3600}h"
    if seconds % 60 == 0:
        return f"{seconds // 60}m"
    return f"{seconds}s"


def _pivot(
    rows: List[dict], value_column: str
) -> Tuple[List[float], List[int], np.ma.MaskedArray]:
    thresholds = sorted({r["threshold_pct"] for r in rows})
    windows = sorted({r["w_a"] for r in rows})
    grid = np.full((len(thresholds), len(windows)), np.nan)
    for r in rows:
        i = thresholds.index(r["threshold_pct"])
        j = windows.index(r["w_a"])
        value = r[value_column]
        if value is not None:
            grid[i, j] = value
    return thresholds, windows, np.ma.masked_invalid(grid)


def render_heatmap(
    csv_path: str, value_column: str, out_path: str, title: Optional[str] = None
) -> None:
    """Threshold (0 at top) against window size, colored by one column."""
    rows = read_grid(csv_path)
    if value_column not in rows[0]:
        raise SchemaError(f"missing column {value_column!r} in {csv_path}")
    mode = _single_mode(rows)
    thresholds, windows, grid = _pivot(rows, value_column)

    fig, ax = plt.subplots(figsize=(1.2 + 0.9 * len(windows), 1.2 + 0.5 * len(thresholds)))
    n_rows, n_cols = grid.shape
    mesh = ax.pcolormesh(
        np.arange(n_cols + 1), np.arange(n_rows + 1), grid,
        cmap="viridis", edgecolors="white", linewidth=0.5,
    )
    for i in range(n_rows):
        for j in range(n_cols):
            if grid.mask[i, j]:
                ax.add_patch(
                    Rectangle((j, i), 1, 1, facecolor="lightgrey",
                              hatch="//", edgecolor="grey")
                )
    ax.invert_yaxis()  # threshold 0 on the top row
    ax.set_xticks(np.arange(n_cols) + 0.5)
    ax.set_xticklabels([humanize_seconds(w) for w in windows])
    ax.set_yticks(np.arange(n_rows) + 0.5)
    ax.set_yticklabels([f"-{t:g}%" for t in thresholds])
    ax.set_xlabel("aggregation window")
    ax.set_ylabel("filtered links")
    ax.set_title(title or f"{value_column} ({mode} filtering)")
    fig.colorbar(mesh, ax=ax, label=value_column)
    fig.tight_layout()
    with plt.rc_context(_SAVE_STYLE):
        fig.savefig(out_path)
    plt.close(fig)


def _fixed_filter(rows: List[dict], fixed: Tuple[str, float]) -> List[dict]:
    key, value = fixed
    if key == "threshold":
        picked = [r for r in rows if r["threshold_pct"] == value]
        available = sorted({r["threshold_pct"] for r in rows})
    elif key == "window":
        picked = [r for r in rows if r["w_a"] == value]
        available = sorted({r["w_a"] for r in rows})
    else:
        raise ValueError(f"fixed axis must be 'threshold' or 'window', got {key!r}")
    if not picked:
        raise ValueError(f"no rows with {key}={value:g}; available: {available}")
    return picked


def render_fidelity_curves(
    csv_path: str, fixed: Tuple[str, float], out_path: str,
    title: Optional[str] = None,
) -> None:
    """FP, FN and distance against the axis left free by ``fixed``."""
    rows = read_grid(csv_path)
    _single_mode(rows)
    picked = _fixed_filter(rows, fixed)
    key, value = fixed
    if key == "threshold":
        xs = [r["w_a"] for r in picked]
        x_label = "aggregation window (s)"
        fixed_label = f"threshold -{value:g}%"
    else:
        xs = [r["threshold_pct"] for r in picked]
        x_label = "filtered links (%)"
        fixed_label = f"window {humanize_seconds(int(value))}"
    order = np.argsort(xs)

    fig, ax = plt.subplots(figsize=(6, 4))
    for column, style in (("fp", "o-"), ("fn", "s-"), ("distance", "^-")):
        ys = [picked[i][column] for i in order]
        ax.plot([xs[i] for i in order], ys, style, label=column.upper())
    if key == "threshold" and len(set(xs)) > 1:
        ax.set_xscale("log")
    ax.set_xlabel(x_label)
    ax.set_ylabel("timestep contacts")
    ax.set_title(title or f"disagreements at fixed {fixed_label}")
    ax.legend()
    fig.tight_layout()
    with plt.rc_context(_SAVE_STYLE):
        fig.savefig(out_path)
    plt.close(fig)
