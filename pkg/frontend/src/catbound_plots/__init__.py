"""catbound-plots: standalone renderer turning catbound benchmark CSVs into
the bound-vs-true scatter figure and the relative-error power-law figure."""

from .render import (CSV_HEADER, METHOD_COLORS, PlotSpec, RenderResult, main,
                     read_rows, render_bounds_figure, render_error_figure,
                     through_origin_loglog)

__version__ = "0.1.0"

__all__ = [
    "CSV_HEADER",
    "METHOD_COLORS",
    "PlotSpec",
    "RenderResult",
    "main",
    "read_rows",
    "render_bounds_figure",
    "render_error_figure",
    "through_origin_loglog",
]
