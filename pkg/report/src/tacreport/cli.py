"""CLI: render one benchmark figure per invocation.

Usage: tacreport <figure-kind> --in <path...> --out <file> [--category CAT]
Exit codes: 0 success, 2 bad input or configuration, 3 runtime failure.
"""

from __future__ import annotations

import argparse
import sys

from .figures import FIGURE_KINDS, FigureSpec, plot
from .io import ParseError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tacreport",
        description="Render figures from tacbench CSV/JSON/log outputs",
    )
    parser.add_argument("kind", choices=FIGURE_KINDS, help="figure kind")
    parser.add_argument("--in", dest="inputs", nargs="+", required=True,
                        help="input file(s): metrics.csv, episode log(s), or sweep summary")
    parser.add_argument("--out", required=True, help="output image (.png/.svg/.pdf)")
    parser.add_argument("--category", default=None, help="category filter for box plots")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = FigureSpec(
            kind=args.kind,
            inputs=tuple(args.inputs),
            output=args.out,
            category=args.category,
        )
        path = plot(spec)
    except (ParseError, FileNotFoundError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:
        print(f"runtime failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
