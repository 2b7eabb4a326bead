#!/usr/bin/env python3
"""Run the full sweep experiments on the high-school dataset.

Produces long-form CSV grids under results/: stability heatmaps for the
single-timescale (w_f = w_a) and two-timescale (w_f = 1 h) cases, both
percentile and stochastic, plus the fidelity curve at w_a = 5 min.
Feed the CSVs to the plot package for the figures, e.g.:

    plot heatmap --in results/grid_twoscale_percentile.csv \
        --value stability --out stability.svg
    plot fidelity --in results/fidelity_curve.csv \
        --fix window=300 --out fidelity.svg
"""

import argparse
import os
import time
from pathlib import Path

from snapagg import DEFAULT_WINDOWS, SweepConfig, emit, load_contacts, run_sweep

HOUR_DIVISORS = (20, 60, 300, 900, 1800, 3600)
THRESHOLDS = tuple(float(n) for n in range(0, 100, 10))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument(
        "--data",
        default=Path(__file__).resolve().parent.parent
        / "data" / "High-School_data_2013.csv.gz",
        type=Path,
    )
    ap.add_argument("--out", default=Path("results"), type=Path)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--workers", type=int, default=min(8, os.cpu_count() or 1))
    args = ap.parse_args()

    seq = load_contacts(args.data, "sociopatterns", dt=20)
    print(f"{len(seq)} contacts, {seq.node_count} nodes, "
          f"{(seq.t_max - seq.t_min) / 86400:.1f} days")
    args.out.mkdir(parents=True, exist_ok=True)

    common = dict(thresholds=THRESHOLDS, workers=args.workers)
    runs = {
        "grid_equal_percentile.csv": SweepConfig(
            windows=DEFAULT_WINDOWS, mode="percentile", **common),
        "grid_twoscale_percentile.csv": SweepConfig(
            windows=HOUR_DIVISORS, filter_window=3600, mode="percentile", **common),
        "grid_equal_stochastic.csv": SweepConfig(
            windows=DEFAULT_WINDOWS, mode="stochastic", seed=args.seed, **common),
        "grid_twoscale_stochastic.csv": SweepConfig(
            windows=HOUR_DIVISORS, filter_window=3600, mode="stochastic",
            seed=args.seed, **common),
        "fidelity_curve.csv": SweepConfig(
            windows=(300,), filter_window=3600,
            thresholds=THRESHOLDS + (95.0,), mode="percentile",
            workers=args.workers),
    }
    for name, cfg in runs.items():
        started = time.perf_counter()
        cells = run_sweep(cfg, sequence=seq)
        emit(cells, "csv", args.out / name)
        print(f"{name}: {len(cells)} cells in {time.perf_counter() - started:.1f}s")


if __name__ == "__main__":
    main()
