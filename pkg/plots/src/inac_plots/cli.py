"""``plot`` command line: render one figure or a whole directory of them.

Usage:
    plot --input results/fig5.csv --figure power_vs_elements --out figs/fig5.svg
    plot render-all --dir results/ --out-dir figs/
"""

from __future__ import annotations

import argparse
import sys

from .recipes import FIGURE_KINDS, recipe_for
from .render import render, render_all
from .tables import PlotError


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exit code is 2; use 1
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> _Parser:
    parser = _Parser(prog="plot", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command")

    single = sub.add_parser(
        "render", parents=[], help="render one figure from one CSV (default command)"
    )
    batch = sub.add_parser(
        "render-all", help="render all seven figures from a directory of preset CSVs"
    )
    for p in (parser, single):
        p.add_argument("--input", help="result CSV to read")
        p.add_argument("--figure", choices=FIGURE_KINDS, help="figure kind")
        p.add_argument("--out", help="output image path (.svg or .png)")
    batch.add_argument("--dir", required=True, help="directory of preset result CSVs")
    batch.add_argument("--out-dir", required=True, help="directory for figure SVGs")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "render-all":
            paths = render_all(args.dir, args.out_dir)
            for path in paths:
                print(path)
            return 0
        if not (args.input and args.figure and args.out):
            parser.error("--input, --figure, and --out are required")
        path = render(recipe_for(args.figure, args.input, args.out))
        print(path)
        return 0
    except PlotError as exc:
        print(f"plot: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
