"""Experiment driver: evaluate grids of (window size, threshold) cells.

Each cell filters the sequence (per mode), aggregates it, and scores the
result; cells are independent and may run in a process pool.  Output
ordering and all randomness are deterministic, so re-running a sweep
with the same configuration reproduces the file byte for byte.
"""

from __future__ import annotations

import csv
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import IO, List, Optional, Sequence, Tuple, Union

from .aggregate import aggregate
from .filtering import MODES, apply_outcomes, filter_windows
from .ingest import ColumnMap, load_contacts
from .metrics import distance, stability
from .model import ContactSequence, SweepCell, WindowSpec

#: Window grid spanning the scales discussed for 20 s resolution data:
#: 20 s, 1 min, 5 min, 15 min, 1 h, 4 h, 24 h.
DEFAULT_WINDOWS = (20, 60, 300, 900, 3600, 14400, 86400)

CSV_COLUMNS = (
    "w_a,w_f,threshold_pct,mode,seed,stability,fp,fn,distance,"
    "normalized_distance,retention,n_snapshots,kept_link_fraction"
)


class SweepError(RuntimeError):
    """A grid cell failed; the message identifies the offending cell."""


@dataclass(frozen=True)
class SweepConfig:
    input_path: Optional[str] = None
    preset: Union[str, ColumnMap] = "generic"
    dt: Optional[int] = None
    t0: Union[int, str] = "first"
    windows: Tuple[int, ...] = DEFAULT_WINDOWS
    filter_window: Optional[int] = None  # None: w_f equals each cell's w_a
    thresholds: Tuple[float, ...] = (0.0,)
    mode: str = "none"
    seed: Optional[int] = None
    include_partial_tail: bool = False
    count_tail_misses: bool = False
    workers: int = 1
    out: Optional[str] = None
    format: str = "csv"

    def __post_init__(self) -> None:
        if self.mode not in MODES + ("none",):
            raise ValueError(f"mode must be none|percentile|stochastic: {self.mode!r}")
        if self.mode == "stochastic" and self.seed is None:
            raise ValueError("stochastic mode requires a seed")
        if not self.windows or any(w <= 0 for w in self.windows):
            raise ValueError("window grid must be non-empty and positive")
        for n in self.thresholds:
            if not 0.0 <= n <= 100.0:
                raise ValueError(f"threshold {n} outside [0, 100]")
        if self.filter_window is not None:
            for w_a in self.windows:
                if self.filter_window % w_a:
                    raise ValueError(
                        f"filter window {self.filter_window} is not an integer "
                        f"multiple of aggregation window {w_a}"
                    )
        if self.format not in ("csv", "json"):
            raise ValueError(f"format must be csv or json, got {self.format!r}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if not isinstance(self.t0, int) and self.t0 not in ("first", "midnight"):
            raise ValueError(f"t0 must be 'first', 'midnight' or an epoch: {self.t0!r}")


def resolve_t0(policy: Union[int, str], seq: ContactSequence) -> int:
    """Turn a t0 policy into a concrete, grid-aligned window origin."""
    if seq.t_min is None:
        raise ValueError("cannot place windows on an empty sequence")
    if isinstance(policy, int):
        t0 = policy
    elif policy == "first":
        t0 = seq.t_min
    elif policy == "midnight":
        t0 = seq.t_min - seq.t_min % 86400
    else:
        raise ValueError(f"unknown t0 policy {policy!r}")
    if t0 > seq.t_min:
        raise ValueError(f"t0={t0} is after the first observation {seq.t_min}")
    if (seq.t_min - t0) % seq.dt:
        raise ValueError(f"t0={t0} off the dt={seq.dt} grid of the data")
    return t0


def evaluate_cell(
    seq: ContactSequence,
    w_a: int,
    w_f: int,
    n_pct: float,
    mode: str,
    seed: Optional[int],
    t0: int,
    include_partial_tail: bool = False,
    count_tail_misses: bool = False,
) -> SweepCell:
    """Filter, aggregate and score one grid cell."""
    try:
        spec = WindowSpec(
            t0=t0, w_a=w_a, dt=seq.dt, w_f=w_f,
            include_partial_tail=include_partial_tail,
        )
        if mode == "none":
            filtered = seq
            kept_fraction = 1.0
        else:
            selected = filter_windows(seq, spec, n_pct, mode, seed)
            links = sum(len(o.kept) + len(o.removed) for _, o in selected)
            removed = sum(len(o.removed) for _, o in selected)
            kept_fraction = 1.0 - removed / links if links else 1.0
            filtered = apply_outcomes(seq, selected)
        graph = aggregate(filtered, spec)
        score = stability(graph)
        report = distance(graph, seq, count_tail_misses=count_tail_misses)
    except Exception as exc:
        raise SweepError(
            f"cell (w_a={w_a}, w_f={w_f}, N={n_pct}, mode={mode}) failed: {exc}"
        ) from exc
    return SweepCell(
        w_a=w_a,
        w_f=w_f,
        threshold_pct=n_pct,
        mode=mode,
        seed=seed,
        stability=score,
        report=report,
        snapshot_count=len(graph),
        kept_link_fraction=kept_fraction,
    )


_worker_seq: Optional[ContactSequence] = None


def _init_worker(seq: ContactSequence) -> None:
    global _worker_seq
    _worker_seq = seq


def _run_in_worker(params: tuple) -> SweepCell:
    return evaluate_cell(_worker_seq, *params)


def run_sweep(
    cfg: SweepConfig, sequence: Optional[ContactSequence] = None
) -> List[SweepCell]:
    """Evaluate every (w_a, threshold) combination of the grid.

    Cells are emitted sorted by (w_a, threshold); results do not depend
    on the worker count.
    """
    seq = sequence
    if seq is None:
        if cfg.input_path is None:
            raise ValueError("config has no input path and no sequence was given")
        seq = load_contacts(cfg.input_path, cfg.preset, dt=cfg.dt)
    t0 = resolve_t0(cfg.t0, seq)
    params = [
        (
            w_a,
            cfg.filter_window if cfg.filter_window is not None else w_a,
            n,
            cfg.mode,
            cfg.seed,
            t0,
            cfg.include_partial_tail,
            cfg.count_tail_misses,
        )
        for w_a in sorted(set(cfg.windows))
        for n in sorted(set(cfg.thresholds))
    ]
    if cfg.workers == 1 or len(params) == 1:
        return [evaluate_cell(seq, *p) for p in params]
    with ProcessPoolExecutor(
        max_workers=cfg.workers, initializer=_init_worker, initargs=(seq,)
    ) as pool:
        return list(pool.map(_run_in_worker, params))


def _fmt(x: float) -> str:
    return format(x, ".12g")


def cell_record(cell: SweepCell) -> dict:
    """Flatten a cell into the emitted column set."""
    return {
        "w_a": cell.w_a,
        "w_f": cell.w_f,
        "threshold_pct": cell.threshold_pct,
        "mode": cell.mode,
        "seed": cell.seed,
        "stability": cell.stability,
        "fp": cell.report.fp,
        "fn": cell.report.fn,
        "distance": cell.report.distance,
        "normalized_distance": cell.report.normalized_distance,
        "retention": cell.report.retention,
        "n_snapshots": cell.snapshot_count,
        "kept_link_fraction": cell.kept_link_fraction,
    }


def emit(
    cells: Sequence[SweepCell],
    fmt: str = "csv",
    path: Union[str, IO[str], None] = None,
) -> str:
    """Serialize cells to CSV or JSON; returns the text, optionally writing it.

    Undefined stability becomes an empty CSV field / JSON null.  Counts
    round-trip exactly; scores carry 12 significant digits.
    """
    if not cells:
        raise ValueError("nothing to emit: no cells")
    if fmt == "csv":
        lines = [CSV_COLUMNS]
        for cell in cells:
            r = cell_record(cell)
            lines.append(
                ",".join(
                    (
                        str(r["w_a"]),
                        str(r["w_f"]),
                        format(r["threshold_pct"], "g"),
                        r["mode"],
                        "" if r["seed"] is None else str(r["seed"]),
                        "" if r["stability"] is None else _fmt(r["stability"]),
                        str(r["fp"]),
                        str(r["fn"]),
                        str(r["distance"]),
                        _fmt(r["normalized_distance"]),
                        _fmt(r["retention"]),
                        str(r["n_snapshots"]),
                        _fmt(r["kept_link_fraction"]),
                    )
                )
            )
        text = "\n".join(lines) + "\n"
    elif fmt == "json":
        text = json.dumps([cell_record(c) for c in cells], indent=2) + "\n"
    else:
        raise ValueError(f"format must be csv or json, got {fmt!r}")
    if path is not None:
        if isinstance(path, (str, bytes)) or hasattr(path, "__fspath__"):
            with open(path, "w", newline="") as fh:
                fh.write(text)
        else:
            path.write(text)
    return text


def read_grid_csv(path: Union[str, IO[str]]) -> List[dict]:
    """Parse an emitted CSV back into typed records (None for blanks)."""
    own = isinstance(path, (str, bytes)) or hasattr(path, "__fspath__")
    fh = open(path, "r", newline="") if own else path
    try:
        rows = []
        for row in csv.DictReader(fh):
            rows.append(
                {
                    "w_a": int(row["w_a"]),
                    "w_f": int(row["w_f"]),
                    "threshold_pct": float(row["threshold_pct"]),
                    "mode": row["mode"],
                    "seed": int(row["seed"]) if row["seed"] else None,
                    "stability": float(row["stability"]) if row["stability"] else None,
                    "fp": int(row["fp"]),
                    "fn": int(row["fn"]),
                    "distance": int(row["distance"]),
                    "normalized_distance": float(row["normalized_distance"]),
                    "retention": float(row["retention"]),
                    "n_snapshots": int(row["n_snapshots"]),
                    "kept_link_fraction": float(row["kept_link_fraction"]),
                }
            )
        return rows
    finally:
        if own:
            fh.close()
