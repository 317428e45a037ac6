"""Command-line driver: fig1 / fig2 / hahn sweeps to CSV, plus a slope table.

Exit codes: 0 success, 1 bad arguments or inputs, 2 numerical-contract
violation (a matrix failed a unitarity / Hermiticity / trace check).
"""

from __future__ import annotations

import argparse
import sys

from . import experiments as xp
from .linalg import NumericalContractError


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad arguments; the CLI contract
    # reserves 2 for numerical failures, so remap to 1
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _grid_arg(text: str):
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected lo,hi,n, got {text!r}")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
        return xp.log_grid(lo, hi, n)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _protocols_arg(text: str):
    try:
        return [xp.parse_protocol_token(t) for t in text.split(",") if t]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _orders_arg(text: str):
    try:
        orders = [int(t) for t in text.split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not orders or any(k < 1 for k in orders):
        raise argparse.ArgumentTypeError("orders must be positive integers")
    return orders


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ddrand", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    fig1 = sub.add_parser("fig1", help="Heisenberg + 1-local noise sweep (XY4/XY8/CDD)")
    fig1.add_argument("--axis", required=True, choices=("j", "tau"))
    fig1.add_argument("--protocols", type=_protocols_arg,
                      default=[xp.parse_protocol_token(t) for t in xp.FIG1_PROTOCOLS],
                      help="comma-separated tokens, e.g. xy4,cdd2,rand-xy4")
    fig1.add_argument("--grid", type=_grid_arg, default=None, metavar="LO,HI,N")
    fig1.add_argument("--states", type=int, default=xp.DEFAULT_STATES)
    fig1.add_argument("--seed", type=int, default=0)
    fig1.add_argument("--out", required=True)
    fig1.add_argument("--resample-bath", action="store_true",
                      help="redraw the bath coefficients per trial")

    fig2 = sub.add_parser("fig2", help="dephasing-model UDD sweep")
    fig2.add_argument("--axis", required=True, choices=("t", "j"))
    fig2.add_argument("--orders", type=_orders_arg, default=list(xp.FIG2_ORDERS))
    fig2.add_argument("--grid", type=_grid_arg, default=None, metavar="LO,HI,N")
    fig2.add_argument("--states", type=int, default=xp.DEFAULT_STATES)
    fig2.add_argument("--seed", type=int, default=0)
    fig2.add_argument("--out", required=True)
    fig2.add_argument("--resample-bath", action="store_true")

    hahn = sub.add_parser("hahn", help="deterministic vs randomized Hahn echo sweep")
    hahn.add_argument("--grid", type=_grid_arg,
                      default=xp.log_grid(*xp.HAHN_TAU_GRID), metavar="LO,HI,N")
    hahn.add_argument("--j", type=float, default=xp.HAHN_J)
    hahn.add_argument("--states", type=int, default=xp.DEFAULT_STATES)
    hahn.add_argument("--seed", type=int, default=0)
    hahn.add_argument("--out", required=True)
    hahn.add_argument("--resample-bath", action="store_true")

    slopes = sub.add_parser("slopes", help="fit log-log slopes from a sweep CSV")
    slopes.add_argument("--in", dest="input", required=True)
    slopes.add_argument("--floor", type=float, default=xp.DEFAULT_FLOOR,
                        help="exclude mean errors at or below this value")
    return parser


def _curve_label(protocol: str, randomized: bool, order_k: int) -> str:
    base = protocol if protocol in ("hahn", "xy4", "xy8") else f"{protocol}{order_k}"
    return f"rand-{base}" if randomized else base


def _run_slopes(args) -> int:
    records = xp.read_csv(args.input)
    if not records:
        print("no records in input", file=sys.stderr)
        return 1
    x_field = xp.infer_x_field(records)
    means = xp.group_means(records, x_field)
    print(f"{'curve':<12} {'x':<8} {'slope':>8} {'intercept':>10} {'r2':>9} {'points':>7}")
    for key in sorted(means):
        label = _curve_label(*key)
        try:
            fit = xp.fit_loglog_slope(means[key], args.floor)
        except ValueError as exc:
            print(f"{label:<12} {x_field:<8} {'n/a':>8}  ({exc})")
            continue
        print(f"{label:<12} {x_field:<8} {fit.slope:8.3f} {fit.intercept:10.3f} "
              f"{fit.r_squared:9.5f} {fit.points_used:7d}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "fig1":
            grid = args.grid if args.grid is not None else xp.log_grid(
                *(xp.FIG1_J_GRID if args.axis == "j" else xp.FIG1_TAU_GRID))
            records = xp.run_fig1_sweep(
                "vary_j" if args.axis == "j" else "vary_tau",
                args.protocols, grid, args.states, args.seed,
                resample_bath=args.resample_bath)
            xp.write_csv(records, args.out)
            print(f"wrote {len(records)} records to {args.out}")
        elif args.command == "fig2":
            grid = args.grid if args.grid is not None else xp.log_grid(
                *(xp.FIG2_T_GRID if args.axis == "t" else xp.FIG2_J_GRID))
            records = xp.run_fig2_sweep(
                "vary_t" if args.axis == "t" else "vary_j",
                args.orders, grid, args.states, args.seed,
                resample_bath=args.resample_bath)
            xp.write_csv(records, args.out)
            print(f"wrote {len(records)} records to {args.out}")
        elif args.command == "hahn":
            records = xp.run_hahn_sweep(args.grid, args.j, args.states, args.seed,
                                        resample_bath=args.resample_bath)
            xp.write_csv(records, args.out)
            print(f"wrote {len(records)} records to {args.out}")
        elif args.command == "slopes":
            return _run_slopes(args)
        return 0
    except NumericalContractError as exc:
        print(f"numerical contract violation: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
