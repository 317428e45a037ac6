"""Chart rendering for ddrand sweep CSVs (log-log error curves)."""

from .data import HEADER, Row, curve_label, fit_slope, mean_curves, read_rows
from .render import PlotSpec, build_figure, render

__version__ = "0.1.0"

__all__ = [
    "HEADER",
    "PlotSpec",
    "Row",
    "build_figure",
    "curve_label",
    "fit_slope",
    "mean_curves",
    "read_rows",
    "render",
    "__version__",
]
