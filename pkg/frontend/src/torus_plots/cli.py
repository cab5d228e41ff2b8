"""Command line: render torus-scan output files into figures."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .figures import FIGURE_KINDS, render
from .reader import SchemaError


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="torus-plots")
    sub = top.add_subparsers(dest="command", required=True)
    p = sub.add_parser("render", help="render one figure from scan output")
    p.add_argument("--kind", choices=FIGURE_KINDS, required=True)
    p.add_argument("--input", type=Path, required=True,
                   help="records.csv from a torus-scan run")
    p.add_argument("--summary", type=Path, default=None,
                   help="optional summary.json (critical-strength marker)")
    p.add_argument("--output", type=Path, required=True)
    return top


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        out = render(args.kind, args.input, args.output,
                     summary_path=args.summary)
    except (SchemaError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
