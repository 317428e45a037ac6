"""Figure construction: one log-log chart per CSV, one curve per protocol."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .data import curve_label, fit_slope, mean_curves, read_rows

X_LABELS = {"j": "coupling J", "tau": "pulse interval tau", "total_t": "total time T"}

# circles for the randomized mixtures, triangles for deterministic runs
MARKERS = {True: "o", False: "^"}


@dataclass(frozen=True)
class PlotSpec:
    input_path: str
    x_axis: str
    output_path: str
    annotate_slopes: bool = False
    floor: float = 1e-11
    raster: bool = False
    group_by: tuple = ("protocol", "randomized", "order_k")

    def __post_init__(self):
        if self.x_axis not in X_LABELS:
            raise ValueError(f"unknown x axis {self.x_axis!r}")
        if self.group_by != ("protocol", "randomized", "order_k"):
            raise ValueError("curves are grouped by (protocol, randomized, order_k)")


def build_figure(spec: PlotSpec):
    """Aggregate the CSV and lay out the chart; returns (figure, axes)."""
    rows = read_rows(spec.input_path)
    if not rows:
        raise ValueError(f"{spec.input_path}: empty selection")
    if len({getattr(r, spec.x_axis) for r in rows}) < 2:
        raise ValueError(f"x axis {spec.x_axis!r} is constant in {spec.input_path}")
    curves = mean_curves(rows, spec.x_axis)

    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    for key in sorted(curves):
        protocol, randomized, order_k = key
        pts = curves[key]
        label = curve_label(protocol, randomized, order_k)
        if spec.annotate_slopes:
            try:
                slope, _b, _n = fit_slope(pts, spec.floor)
                label = f"{label} (slope {slope:.2f})"
            except ValueError:
                pass
        ax.loglog([x for x, _ in pts], [y for _, y in pts],
                  marker=MARKERS[randomized],
                  linestyle="--" if randomized else "-",
                  markersize=5, label=label)
    ax.set_xlabel(X_LABELS[spec.x_axis])
    ax.set_ylabel("mean error")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    return fig, ax


def render(spec: PlotSpec) -> str:
    """Write the chart to spec.output_path and return the path written.

    Vector output (SVG) unless the path suffix or the raster flag asks for
    a raster format.
    """
    fig, _ax = build_figure(spec)
    try:
        suffix = Path(spec.output_path).suffix.lower().lstrip(".")
        if spec.raster:
            fmt = "png"
        elif suffix in ("svg", "pdf", "png"):
            fmt = suffix
        else:
            fmt = "svg"
        fig.savefig(spec.output_path, format=fmt, dpi=150)
    finally:
        plt.close(fig)
    return spec.output_path
