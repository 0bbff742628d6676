"""Command line: figrender render --figure fig1 --in fig1.csv --out fig1.png"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .render import FIGURE_SCHEMAS, RenderJob, SchemaError, render


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="figrender")
    parser.add_argument("--version", action="version", version=f"figrender {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("render", help="render one figure CSV to an image")
    p.add_argument("--figure", choices=sorted(FIGURE_SCHEMAS), required=True)
    p.add_argument("--in", dest="input_csv", required=True, help="figure dataset CSV")
    p.add_argument("--out", dest="output_image", required=True, help="image file to write")
    ns = parser.parse_args(argv)

    try:
        job = RenderJob(ns.figure, ns.input_csv, ns.output_image)
        render(job)
        return 0
    except SchemaError as exc:
        print(f"figrender: schema error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"figrender: error: {exc}", file=sys.stderr)
        return 1


def run() -> None:
    sys.exit(main())
