"""Reader and aggregator for ddrand sweep CSVs.

The file contract: header `protocol,randomized,order_k,j,tau,total_t,seed,
trial,error_kind,error`, decimal text at full double precision, UTF-8, LF
endings, rows pre-sorted with trial ascending within a curve. Everything
here works from that text alone; the simulator package is not imported.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

HEADER = "protocol,randomized,order_k,j,tau,total_t,seed,trial,error_kind,error"
COLUMNS = tuple(HEADER.split(","))

X_FIELDS = ("j", "tau", "total_t")


@dataclass(frozen=True)
class Row:
    protocol: str
    randomized: bool
    order_k: int
    j: float
    tau: float
    total_t: float
    seed: int
    trial: int
    error_kind: str
    error: float


def _parse_bool(s: str) -> bool:
    if s == "true":
        return True
    if s == "false":
        return False
    raise ValueError(f"expected true/false, got {s!r}")


def read_rows(path) -> list[Row]:
    with open(path, encoding="utf-8", newline="") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ValueError(f"{path}: empty file, expected header {HEADER!r}")
    if lines[0] != HEADER:
        got = lines[0].split(",")
        missing = [c for c in COLUMNS if c not in got]
        if missing:
            raise ValueError(f"{path}: missing columns {', '.join(missing)}")
        raise ValueError(f"{path}: bad header {lines[0]!r}")
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != len(COLUMNS):
            raise ValueError(
                f"{path}:{lineno}: expected {len(COLUMNS)} fields, got {len(parts)}")
        try:
            rows.append(Row(
                protocol=parts[0], randomized=_parse_bool(parts[1]),
                order_k=int(parts[2]), j=float(parts[3]), tau=float(parts[4]),
                total_t=float(parts[5]), seed=int(parts[6]),
                trial=int(parts[7]), error_kind=parts[8],
                error=float(parts[9])))
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from None
    return rows


def curve_key(row: Row) -> tuple:
    return (row.protocol, row.randomized, row.order_k)


def curve_label(protocol: str, randomized: bool, order_k: int) -> str:
    base = protocol if protocol in ("hahn", "xy4", "xy8") else f"{protocol}{order_k}"
    return f"rand-{base}" if randomized else base


def mean_curves(rows, x_field: str) -> dict[tuple, list[tuple[float, float]]]:
    """Mean error per (curve, x value), trials averaged in trial order.

    The accumulation mirrors the simulator's `slopes` table: per point the
    errors go into a float64 array in ascending-trial order and through
    np.mean, so the two tools agree bit for bit on the same file.
    """
    if x_field not in X_FIELDS:
        raise ValueError(f"unknown x field {x_field!r}")
    buckets: dict[tuple, dict[float, list[tuple[int, float]]]] = {}
    for row in rows:
        x = getattr(row, x_field)
        buckets.setdefault(curve_key(row), {}).setdefault(x, []).append(
            (row.trial, row.error))
    curves = {}
    for key, by_x in buckets.items():
        pts = []
        for x in sorted(by_x):
            errs = [e for _t, e in sorted(by_x[x])]
            pts.append((x, float(np.mean(np.array(errs, dtype=np.float64)))))
        curves[key] = pts
    return curves


def fit_slope(points, floor: float) -> tuple[float, float, int]:
    """Least-squares slope and intercept in log-log space.

    Same floor rule as the simulator's slope table: keep points with
    y > floor, require at least 3.
    """
    kept = [(x, y) for x, y in points if y > floor]
    if len(kept) < 3:
        raise ValueError(
            f"only {len(kept)} points above floor {floor:g}, need 3 to fit")
    lx = np.log([x for x, _ in kept])
    ly = np.log([y for _, y in kept])
    slope, intercept = np.polyfit(lx, ly, 1)
    return float(slope), float(intercept), len(kept)
