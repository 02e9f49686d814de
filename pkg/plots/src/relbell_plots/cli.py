"""Command line front end: relbell-plots render."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .figure import FigureSpec, GROUP_COLUMNS, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relbell-plots",
        description="Render CHSH sweep CSV files into SVG or PNG figures.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("render", help="draw one figure from a sweep CSV")
    p.add_argument("--input", type=Path, required=True, help="sweep CSV to read")
    p.add_argument("--output", type=Path, required=True, help="image to write (.svg or .png)")
    p.add_argument(
        "--group-by",
        choices=GROUP_COLUMNS,
        required=True,
        help="column that splits rows into curves",
    )
    p.add_argument("--title", default=None, help="optional figure title")
    p.add_argument(
        "--no-bound-line",
        action="store_true",
        help="omit the dashed horizontal line at the classical bound F = 2",
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)

    try:
        spec = FigureSpec(
            input=args.input,
            output=args.output,
            group_by=args.group_by,
            title=args.title,
            bound_line=not args.no_bound_line,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    try:
        out = render(spec)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
