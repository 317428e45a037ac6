"""Sweep drivers, CSV serialization, and log-log slope fitting.

Each sweep reproduces one benchmark family:

* fig1: 4-qubit Heisenberg chain with a 4-qubit bath under general 1-local
  noise; XY4/XY8/CDD_K and randomized XY4, joint-state error vs J or tau.
* fig2: 1-qubit dephasing against a 2-qubit bath; deterministic and
  randomized UDD_K, subsystem error vs total time or J.
* hahn: Heisenberg chain with per-site dephasing coupling; deterministic
  vs randomized Hahn echo, joint-state error vs tau.

Records carry the sweep seed; per-trial state seeds (and bath seeds when
resampling) are derived from it through numpy's SeedSequence, so identical
(command, seed) pairs produce byte-identical CSV files.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .engine import (
    MixedUnitaryChannel,
    deterministic_channel,
    ideal_unitary,
    randomized_channel,
    state_error,
    subsystem_error,
)
from .model import (
    HamiltonianModel,
    build_dephasing_model,
    build_hahn_model,
    build_local_bath_model,
    random_product_state,
)
from .sequences import (
    DecouplingGroup,
    PulseSequence,
    global_x_group,
    seq_cdd,
    seq_hahn,
    seq_udd,
    seq_xy4,
    seq_xy8,
    xy4_group,
)

PROTOCOL_NAMES = ("hahn", "xy4", "xy8", "cdd", "udd")
ERROR_KINDS = ("joint_state", "subsystem")

# default grids; 8 log-spaced points per axis
FIG1_TAU = 1e-3
FIG1_J = 1e-3
FIG1_J_GRID = (1e-4, 1e-1, 8)
FIG1_TAU_GRID = (1e-4, 1e-2, 8)
FIG1_N_SYS = 4
FIG1_N_BATH = 4
FIG1_PROTOCOLS = ("xy4", "xy8", "cdd2", "cdd3", "cdd4", "rand-xy4")

FIG2_J = 1.0
FIG2_T = 0.1
# top end capped at 0.4: beyond that the K=1 trace distances saturate and
# the fitted exponents flatten out of their windows
FIG2_T_GRID = (0.05, 0.4, 8)
FIG2_J_GRID = (1e-3, 1.0, 8)
FIG2_ORDERS = (1, 2, 3)

HAHN_J = 1e-2
HAHN_TAU_GRID = (1e-3, 1e-1, 8)
HAHN_N_SYS = 2
HAHN_N_BATH = 2

DEFAULT_STATES = 20
DEFAULT_FLOOR = 1e-11

CSV_HEADER = "protocol,randomized,order_k,j,tau,total_t,seed,trial,error_kind,error"


@dataclass(frozen=True)
class SweepRecord:
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

    def __post_init__(self):
        if self.protocol not in PROTOCOL_NAMES:
            raise ValueError(f"unknown protocol {self.protocol!r}")
        if self.error_kind not in ERROR_KINDS:
            raise ValueError(f"unknown error_kind {self.error_kind!r}")
        if self.order_k < 1:
            raise ValueError(f"order_k must be at least 1, got {self.order_k}")
        if not 0.0 <= self.error <= 1.0:
            raise ValueError(f"error {self.error} outside [0, 1]")


@dataclass(frozen=True)
class SlopeFit:
    slope: float
    intercept: float
    r_squared: float
    points_used: int
    filter_floor: float


@dataclass(frozen=True)
class ProtocolSpec:
    """Parsed protocol token, e.g. 'cdd3' or 'rand-xy4'."""

    name: str
    order_k: int
    randomized: bool

    @property
    def token(self) -> str:
        base = self.name if self.name in ("hahn", "xy4", "xy8") else f"{self.name}{self.order_k}"
        return f"rand-{base}" if self.randomized else base


def parse_protocol_token(token: str) -> ProtocolSpec:
    base = token.strip().lower()
    randomized = base.startswith("rand-")
    if randomized:
        base = base[len("rand-"):]
    if base in ("hahn", "xy4", "xy8"):
        return ProtocolSpec(base, 1, randomized)
    m = re.fullmatch(r"(cdd|udd)([1-9])", base)
    if m:
        return ProtocolSpec(m.group(1), int(m.group(2)), randomized)
    raise ValueError(f"unknown protocol {token!r}")


def _derived_seed(*keys: int) -> int:
    """Stable per-(sweep seed, purpose, trial) integer seed."""
    return int(np.random.SeedSequence(keys).generate_state(1, np.uint64)[0])


def _state_seed(seed: int, trial: int) -> int:
    return _derived_seed(seed, 1, trial)


def _bath_seed(seed: int, trial: int, resample: bool) -> int:
    return _derived_seed(seed, 2, trial) if resample else seed


def _validate_grid(grid) -> list[float]:
    vals = [float(g) for g in grid]
    if len(vals) < 1 or any(v <= 0 for v in vals):
        raise ValueError("grid values must be positive")
    if any(b <= a for a, b in zip(vals, vals[1:])):
        raise ValueError("grid must be strictly increasing")
    return vals


def log_grid(lo: float, hi: float, n: int) -> list[float]:
    """n log-spaced points from lo to hi inclusive."""
    if not 0 < lo < hi:
        raise ValueError("need 0 < lo < hi")
    if n < 2:
        raise ValueError("need at least 2 grid points")
    return [float(x) for x in np.geomspace(lo, hi, n)]


def _record_sort_key(r: SweepRecord):
    return (r.protocol, r.randomized, r.order_k, r.j, r.tau, r.total_t, r.trial)


def _fig1_sequence(spec: ProtocolSpec, n: int, tau: float) -> tuple[PulseSequence, DecouplingGroup]:
    if spec.name == "hahn":
        return seq_hahn(n, tau), global_x_group(n)
    if spec.name == "xy4":
        return seq_xy4(n, tau), xy4_group(n)
    if spec.name == "xy8":
        return seq_xy8(n, tau), xy4_group(n)
    if spec.name == "cdd":
        return seq_cdd(n, spec.order_k, tau), xy4_group(n)
    raise ValueError(f"protocol {spec.token!r} is not defined on the fig1 model")


def _channel(seq: PulseSequence, group: DecouplingGroup, model: HamiltonianModel,
             randomized: bool) -> MixedUnitaryChannel:
    if randomized:
        return randomized_channel(seq, group, model)
    return deterministic_channel(seq, model)


def run_fig1_sweep(axis: str, protocols, grid, n_states: int, seed: int,
                   resample_bath: bool = False) -> list[SweepRecord]:
    """Joint-state errors on the Heisenberg + 1-local-noise model.

    axis 'vary_j' fixes tau = 1e-3; axis 'vary_tau' fixes j = 1e-3. The
    bath coefficient tables are a pure function of the sweep seed, so only
    the explicit prefactor changes along a J sweep.
    """
    if axis not in ("vary_j", "vary_tau"):
        raise ValueError(f"unknown axis {axis!r}")
    specs = [parse_protocol_token(t) if isinstance(t, str) else t for t in protocols]
    grid = _validate_grid(grid)
    n = FIG1_N_SYS
    records = []
    for gv in grid:
        j = gv if axis == "vary_j" else FIG1_J
        tau = FIG1_TAU if axis == "vary_j" else gv
        models: dict[int, HamiltonianModel] = {}
        channels: dict[tuple, tuple] = {}
        for spec in specs:
            seq, group = _fig1_sequence(spec, n, tau)
            for trial in range(n_states):
                bseed = _bath_seed(seed, trial, resample_bath)
                if bseed not in models:
                    models[bseed] = build_local_bath_model(n, FIG1_N_BATH, j, bseed)
                model = models[bseed]
                key = (bseed, spec.token)
                if key not in channels:
                    channels[key] = (_channel(seq, group, model, spec.randomized),
                                     ideal_unitary(model, seq.total_time))
                ch, u0 = channels[key]
                rho = random_product_state(model.dim_sys, model.dim_bath, _state_seed(seed, trial))
                err = state_error(ch, model, rho, seq.total_time, u0=u0)
                records.append(SweepRecord(
                    protocol=spec.name, randomized=spec.randomized, order_k=spec.order_k,
                    j=j, tau=tau, total_t=seq.total_time, seed=seed, trial=trial,
                    error_kind="joint_state", error=err,
                ))
    return sorted(records, key=_record_sort_key)


def run_fig2_sweep(axis: str, orders, grid, n_states: int, seed: int,
                   resample_bath: bool = False) -> list[SweepRecord]:
    """Subsystem errors for deterministic and randomized UDD_K on the
    1-qubit dephasing model; axis 'vary_t' fixes j = 1, 'vary_j' fixes
    total_t = 0.1."""
    if axis not in ("vary_t", "vary_j"):
        raise ValueError(f"unknown axis {axis!r}")
    orders = [int(k) for k in orders]
    if any(k < 1 for k in orders):
        raise ValueError("UDD orders must be at least 1")
    grid = _validate_grid(grid)
    group = global_x_group(1)
    records = []
    for gv in grid:
        total_t = gv if axis == "vary_t" else FIG2_T
        j = FIG2_J if axis == "vary_t" else gv
        models: dict[int, HamiltonianModel] = {}
        for k in orders:
            seq = seq_udd(k, total_t)
            # report the mean interval for the unequal-interval sequence
            tau = total_t / len(seq.segments)
            for randomized in (False, True):
                channels: dict[int, MixedUnitaryChannel] = {}
                for trial in range(n_states):
                    bseed = _bath_seed(seed, trial, resample_bath)
                    if bseed not in models:
                        models[bseed] = build_dephasing_model(j, bseed)
                    model = models[bseed]
                    if bseed not in channels:
                        channels[bseed] = _channel(seq, group, model, randomized)
                    rho = random_product_state(model.dim_sys, model.dim_bath, _state_seed(seed, trial))
                    err = subsystem_error(channels[bseed], rho, model.dim_sys, model.dim_bath)
                    records.append(SweepRecord(
                        protocol="udd", randomized=randomized, order_k=k,
                        j=j, tau=tau, total_t=total_t, seed=seed, trial=trial,
                        error_kind="subsystem", error=err,
                    ))
    return sorted(records, key=_record_sort_key)


def run_hahn_sweep(tau_grid, j: float, n_states: int, seed: int,
                   n_sys: int = HAHN_N_SYS, n_bath: int = HAHN_N_BATH,
                   resample_bath: bool = False) -> list[SweepRecord]:
    """Joint-state errors for deterministic vs randomized Hahn echo on the
    Heisenberg chain with per-site dephasing coupling."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    tau_grid = _validate_grid(tau_grid)
    group = global_x_group(n_sys)
    records = []
    models: dict[int, HamiltonianModel] = {}
    for tau in tau_grid:
        seq = seq_hahn(n_sys, tau)
        for randomized in (False, True):
            cache: dict[int, tuple] = {}
            for trial in range(n_states):
                bseed = _bath_seed(seed, trial, resample_bath)
                if bseed not in models:
                    models[bseed] = build_hahn_model(n_sys, n_bath, j, bseed)
                model = models[bseed]
                if bseed not in cache:
                    ch = _channel(seq, group, model, randomized)
                    cache[bseed] = (ch, ideal_unitary(model, seq.total_time))
                ch, u0 = cache[bseed]
                rho = random_product_state(model.dim_sys, model.dim_bath, _state_seed(seed, trial))
                err = state_error(ch, model, rho, seq.total_time, u0=u0)
                records.append(SweepRecord(
                    protocol="hahn", randomized=randomized, order_k=1,
                    j=j, tau=tau, total_t=seq.total_time, seed=seed, trial=trial,
                    error_kind="joint_state", error=err,
                ))
    return sorted(records, key=_record_sort_key)


def group_means(records, x_field: str) -> dict[tuple, list[tuple[float, float]]]:
    """Mean error per (protocol, randomized, order_k) curve and x value.

    Trials are averaged in trial order with numpy's float64 mean, the same
    reduction the CSV consumers apply, so downstream aggregations agree
    bit for bit.
    """
    if x_field not in ("j", "tau", "total_t"):
        raise ValueError(f"unknown x field {x_field!r}")
    curves: dict[tuple, dict[float, list[tuple[int, float]]]] = {}
    for r in records:
        key = (r.protocol, r.randomized, r.order_k)
        x = getattr(r, x_field)
        curves.setdefault(key, {}).setdefault(x, []).append((r.trial, r.error))
    out = {}
    for key, by_x in curves.items():
        pts = []
        for x in sorted(by_x):
            errs = np.array([e for _, e in sorted(by_x[x])], dtype=np.float64)
            pts.append((x, float(np.mean(errs))))
        out[key] = pts
    return out


def infer_x_field(records) -> str:
    """Pick the swept column: j when it varies, else tau, else total_t."""
    for field in ("j", "tau", "total_t"):
        if len({getattr(r, field) for r in records}) > 1:
            return field
    raise ValueError("no varying axis among j, tau, total_t")


def fit_loglog_slope(points, floor: float) -> SlopeFit:
    """Least-squares power-law fit over points with mean error above floor.

    Natural logs on both axes, so the intercept is ln(prefactor).
    """
    kept = [(x, y) for x, y in points if y > floor]
    if len(kept) < 3:
        raise ValueError(f"only {len(kept)} points above floor {floor:g}, need at least 3")
    lx = np.log([x for x, _ in kept])
    ly = np.log([y for _, y in kept])
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - (slope * lx + intercept)
    ss_res = float(np.sum(resid ** 2))
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return SlopeFit(float(slope), float(intercept), r2, len(kept), floor)


def _format_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_csv(records, path) -> None:
    """Write records in the canonical sort order with LF line endings.

    Floats are rendered with repr, which round-trips every double exactly.
    """
    rows = sorted(records, key=_record_sort_key)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(CSV_HEADER + "\n")
        for r in rows:
            fields = (r.protocol, r.randomized, r.order_k, r.j, r.tau,
                      r.total_t, r.seed, r.trial, r.error_kind, r.error)
            fh.write(",".join(_format_value(f) for f in fields) + "\n")


def _parse_bool(s: str) -> bool:
    if s == "true":
        return True
    if s == "false":
        return False
    raise ValueError(f"expected true/false, got {s!r}")


def read_csv(path) -> list[SweepRecord]:
    records = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        lines = fh.read().split("\n")
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"{path}:1: bad header, expected {CSV_HEADER!r}")
    for lineno, line in enumerate(lines[1:], start=2):
        if line == "":
            continue
        parts = line.split(",")
        if len(parts) != 10:
            raise ValueError(f"{path}:{lineno}: expected 10 fields, got {len(parts)}")
        try:
            records.append(SweepRecord(
                protocol=parts[0], randomized=_parse_bool(parts[1]), order_k=int(parts[2]),
                j=float(parts[3]), tau=float(parts[4]), total_t=float(parts[5]),
                seed=int(parts[6]), trial=int(parts[7]), error_kind=parts[8],
                error=float(parts[9]),
            ))
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: malformed row: {exc}") from exc
    return records
