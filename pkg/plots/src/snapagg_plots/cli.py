"""CLI for rendering sweep grids: `plot heatmap ...`, `plot fidelity ...`."""

from __future__ import annotations

import argparse
import sys

from .render import SchemaError, render_fidelity_curves, render_heatmap


def _fixed(text: str):
    try:
        key, value = text.split("=", 1)
        return key.strip(), float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected threshold=<N> or window=<seconds>, got {text!r}"
        ) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plot", description="Render sweep-grid CSVs as figures (PNG/SVG)."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("heatmap", help="threshold x window heatmap of one column")
    p.add_argument("--in", dest="csv_path", required=True)
    p.add_argument("--value", default="stability", help="column to color by")
    p.add_argument("--out", required=True, help="output image (.png or .svg)")
    p.add_argument("--title", default=None)

    p = sub.add_parser("fidelity", help="FP/FN/distance curves with one axis fixed")
    p.add_argument("--in", dest="csv_path", required=True)
    p.add_argument("--fix", type=_fixed, required=True,
                   help="threshold=<N> or window=<seconds>")
    p.add_argument("--out", required=True)
    p.add_argument("--title", default=None)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "heatmap":
            render_heatmap(args.csv_path, args.value, args.out, title=args.title)
        else:
            render_fidelity_curves(args.csv_path, args.fix, args.out, title=args.title)
    except (SchemaError, FileNotFoundError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
