"""Command line interface.

Subcommands: aggregate, stability, fidelity, sweep, synth.
Exit codes: 0 success, 1 input error, 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .aggregate import aggregate, write_snapshot_graph
from .filtering import filter_sequence
from .ingest import ParseError, load_contacts, write_contacts
from .metrics import distance, stability
from .model import WindowSpec
from .sweep import (
    DEFAULT_WINDOWS,
    SweepConfig,
    SweepError,
    emit,
    resolve_t0,
    run_sweep,
)
from .synth import generate_planted

_SUFFIX = {"s": 1, "m": 60, "h": 3600, "d": 86400}


def parse_duration(text: str) -> int:
    """Seconds from '90', '20s', '5m', '1h' or '1d'."""
    text = text.strip()
    if text and text[-1] in _SUFFIX:
        return int(text[:-1]) * _SUFFIX[text[-1]]
    return int(text)


def _duration_list(text: str) -> tuple:
    return tuple(parse_duration(p) for p in text.split(",") if p.strip())


def _threshold_list(text: str) -> tuple:
    return tuple(float(p) for p in text.split(",") if p.strip())


def _t0_policy(text: str):
    if text in ("first", "midnight"):
        return text
    return int(text)


def _add_io_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="contact file (may be gzipped)")
    p.add_argument(
        "--preset",
        default="generic",
        choices=("sociopatterns", "cns", "generic"),
        help="input column layout",
    )
    p.add_argument("--dt", type=parse_duration, default=None,
                   help="resolution in seconds (inferred when omitted)")
    p.add_argument("--t0", type=_t0_policy, default="first",
                   help="window origin: first, midnight, or an epoch second")
    p.add_argument("--include-partial-tail", action="store_true",
                   help="keep the trailing window that outruns the data")
    p.add_argument("--out", default=None, help="output path (default stdout)")


def _add_filter_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--filter-window", type=parse_duration, default=None,
                   help="filtering window w_f in seconds (default: equal to w_a)")
    p.add_argument("--threshold", type=float, default=0.0,
                   help="percentage of links to filter out per window")
    p.add_argument("--mode", default="none",
                   choices=("none", "percentile", "stochastic"))
    p.add_argument("--seed", type=int, default=None,
                   help="master seed (required for stochastic mode)")


def _load(args) -> tuple:
    seq = load_contacts(args.input, args.preset, dt=args.dt)
    t0 = resolve_t0(args.t0, seq)
    return seq, t0


def _pipeline(args):
    """Shared filter-then-aggregate path of the one-off subcommands."""
    seq, t0 = _load(args)
    spec = WindowSpec(
        t0=t0,
        w_a=args.window,
        dt=seq.dt,
        w_f=args.filter_window,
        include_partial_tail=args.include_partial_tail,
    )
    work = seq
    if args.mode != "none":
        work = filter_sequence(seq, spec, args.threshold, args.mode, args.seed)
    return seq, aggregate(work, spec)


def _write_text(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def cmd_aggregate(args) -> int:
    _, graph = _pipeline(args)
    if args.out is None:
        write_snapshot_graph(graph, sys.stdout)
    else:
        write_snapshot_graph(graph, args.out)
    return 0


def _emit_record(record: dict, fmt: str, out: Optional[str]) -> None:
    if fmt == "json":
        text = json.dumps(record) + "\n"
    else:
        fields = [
            "" if v is None else format(v, ".12g") if isinstance(v, float) else str(v)
            for v in record.values()
        ]
        text = ",".join(record) + "\n" + ",".join(fields) + "\n"
    _write_text(text, out)


def cmd_stability(args) -> int:
    _, graph = _pipeline(args)
    score = stability(graph)
    if args.out:
        _emit_record({"stability": score}, args.format, args.out)
    text = "undefined" if score is None else format(score, ".12g")
    print(f"stability={text}")
    return 0


def cmd_fidelity(args) -> int:
    seq, graph = _pipeline(args)
    report = distance(graph, seq, count_tail_misses=args.count_tail_misses)
    record = {
        "fp": report.fp,
        "fn": report.fn,
        "distance": report.distance,
        "normalized_distance": report.normalized_distance,
        "retention": report.retention,
        "original_contacts": report.original_contacts,
    }
    if args.out:
        _emit_record(record, args.format, args.out)
    for key, value in record.items():
        value = format(value, ".12g") if isinstance(value, float) else value
        print(f"{key}={value}")
    return 0


def cmd_sweep(args) -> int:
    cfg = SweepConfig(
        input_path=args.input,
        preset=args.preset,
        dt=args.dt,
        t0=args.t0,
        windows=args.window,
        filter_window=args.filter_window,
        thresholds=args.threshold,
        mode=args.mode,
        seed=args.seed,
        include_partial_tail=args.include_partial_tail,
        workers=args.workers,
        out=args.out,
        format=args.format,
    )
    cells = run_sweep(cfg)
    text = emit(cells, cfg.format)
    _write_text(text, args.out)
    return 0


def cmd_synth(args) -> int:
    inst = generate_planted(
        nodes=args.nodes,
        core_edges=args.core_edges,
        noise_edges=args.noise_edges,
        core_rate=args.core_rate,
        noise_rate=args.noise_rate,
        steps=args.steps,
        dt=args.dt,
        seed=args.seed,
    )
    if args.out is None:
        write_contacts(inst.sequence, sys.stdout)
    else:
        write_contacts(inst.sequence, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="snapagg",
        description="Snapshot-graph aggregation, filtering and evaluation "
        "of temporal contact networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("aggregate", help="dump the aggregated snapshot graph")
    _add_io_flags(p)
    _add_filter_flags(p)
    p.add_argument("--window", type=parse_duration, required=True,
                   help="aggregation window w_a in seconds")
    p.set_defaults(func=cmd_aggregate)

    p = sub.add_parser("stability", help="stability score of the aggregation")
    _add_io_flags(p)
    _add_filter_flags(p)
    p.add_argument("--window", type=parse_duration, required=True)
    p.add_argument("--format", default="json", choices=("csv", "json"))
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("fidelity", help="distance/FP/FN against the raw contacts")
    _add_io_flags(p)
    _add_filter_flags(p)
    p.add_argument("--window", type=parse_duration, required=True)
    p.add_argument("--count-tail-misses", action="store_true",
                   help="count contacts in a dropped tail window as misses")
    p.add_argument("--format", default="json", choices=("csv", "json"))
    p.set_defaults(func=cmd_fidelity)

    p = sub.add_parser("sweep", help="evaluate a (window x threshold) grid")
    _add_io_flags(p)
    p.add_argument("--window", type=_duration_list, default=DEFAULT_WINDOWS,
                   help="comma-separated aggregation windows")
    p.add_argument("--filter-window", type=parse_duration, default=None)
    p.add_argument("--threshold", type=_threshold_list, default=(0.0,),
                   help="comma-separated filter percentages")
    p.add_argument("--mode", default="none",
                   choices=("none", "percentile", "stochastic"))
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--format", default="csv", choices=("csv", "json"))
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("synth", help="generate a planted-structure contact file")
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--core-edges", type=int, default=3)
    p.add_argument("--noise-edges", type=int, default=10)
    p.add_argument("--core-rate", type=float, default=0.8)
    p.add_argument("--noise-rate", type=float, default=0.05)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--dt", type=parse_duration, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_synth)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, SweepError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
