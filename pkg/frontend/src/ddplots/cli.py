"""ddplot: render log-log charts from ddrand sweep CSVs.

Exit codes: 0 success, 1 bad arguments or inputs.
"""

from __future__ import annotations

import argparse
import sys

from .render import PlotSpec, render


class _Parser(argparse.ArgumentParser):
    # keep bad-argument exits at 1, matching the simulator CLI convention
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ddplot", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    plot = sub.add_parser("plot", help="render one chart from a sweep CSV")
    plot.add_argument("--in", dest="input", required=True)
    plot.add_argument("--x", required=True, choices=("j", "tau", "t"),
                      help="x axis: coupling, pulse interval, or total time")
    plot.add_argument("--out", required=True)
    plot.add_argument("--slopes", action="store_true",
                      help="append fitted log-log slopes to the legend")
    plot.add_argument("--floor", type=float, default=1e-11,
                      help="exclude mean errors at or below this value from fits")
    plot.add_argument("--raster", action="store_true",
                      help="write PNG instead of the default vector output")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    spec = PlotSpec(
        input_path=args.input,
        x_axis={"t": "total_t"}.get(args.x, args.x),
        output_path=args.out,
        annotate_slopes=args.slopes,
        floor=args.floor,
        raster=args.raster,
    )
    try:
        path = render(spec)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {path}")
    return 0


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
