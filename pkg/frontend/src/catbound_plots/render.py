"""Render benchmark CSVs into the two standard figures.

Input is the harness CSV schema

    shape,true,star,bistar,vvv,nnn,www,s/t,w/t

and the renderer is deliberately decoupled from the library that produces
it: it reads CSVs, nothing else.

* bounds figure: log-log scatter of each method's bound against the exact
  count, one color per method (blue, cyan, green, yellow, red from the
  loosest to the tightest method), with the identity line y = x for
  reference.
* error figure: log-log scatter of the tightest method's relative error
  (w/t) against the loosest's (s/t), with an optional through-origin trend
  line fitted as ln y = slope * ln x and annotated with slope and R^2.

The trend fit recomputes the harness's through-origin formula
(slope = sum(lx*ly)/sum(lx^2), R^2 uncentered) so the annotation agrees
with the producer's reported regression on identical input.

Rows that cannot be drawn on log axes (missing or zero true count, missing
ratios) are dropped with a warning.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

__all__ = [
    "CSV_HEADER",
    "METHOD_COLORS",
    "PlotSpec",
    "RenderResult",
    "read_rows",
    "through_origin_loglog",
    "render_bounds_figure",
    "render_error_figure",
    "main",
]

CSV_HEADER = ("shape", "true", "star", "bistar", "vvv", "nnn", "www", "s/t", "w/t")

# loosest -> tightest method, cold -> warm colors
METHOD_COLORS = (
    ("star", "blue"),
    ("bistar", "cyan"),
    ("vvv", "green"),
    ("nnn", "yellow"),
    ("www", "red"),
)


@dataclass
class PlotSpec:
    """What to render: input CSVs, output image path, options.

    ``series`` restricts the bounds figure to a subset of the five methods;
    ``trend`` toggles the fitted line on the error figure.  Log-log axes
    always; the output format follows the file extension (SVG/PDF vector,
    PNG raster).
    """

    csv_paths: tuple[str | Path, ...]
    out_path: str | Path
    series: tuple[str, ...] | None = None
    trend: bool = True

    def __post_init__(self):
        if isinstance(self.csv_paths, (str, Path)):
            self.csv_paths = (self.csv_paths,)
        self.csv_paths = tuple(self.csv_paths)
        if not self.csv_paths:
            raise ValueError("need at least one input CSV")
        known = tuple(name for name, _ in METHOD_COLORS)
        if self.series is not None:
            bad = set(self.series) - set(known)
            if bad:
                raise ValueError(f"unknown series {sorted(bad)}; expected {known}")


@dataclass
class RenderResult:
    path: Path
    points_drawn: int
    rows_dropped: int
    slope: float | None = None
    r_squared: float | None = None
    annotations: list[str] = field(default_factory=list)


def _parse(value: str) -> float | None:
    return float(value) if value else None


def read_rows(paths) -> list[dict]:
    """Read one or more harness CSVs into dicts with float/None values."""
    rows: list[dict] = []
    for path in paths:
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = tuple(next(reader))
            if header != CSV_HEADER:
                raise ValueError(f"{path}: unexpected header {header!r}")
            for rec in reader:
                if not rec:
                    continue
                row = {"shape": rec[0]}
                for name, cell in zip(CSV_HEADER[1:], rec[1:]):
                    row[name] = _parse(cell)
                rows.append(row)
    return rows


def through_origin_loglog(points) -> tuple[float, float]:
    """Slope and R^2 of ln y = slope * ln x (no intercept; uncentered R^2).

    Same formula the harness reports, so annotations match its output.
    """
    pts = [(float(x), float(y)) for x, y in points]
    if len(pts) < 2:
        raise ValueError("regression needs at least 2 points")
    if any(x <= 0 or y <= 0 for x, y in pts):
        raise ValueError("through-origin log-log fit needs positive data")
    lx = [math.log(x) for x, _ in pts]
    ly = [math.log(y) for _, y in pts]
    sxx = sum(a * a for a in lx)
    if sxx == 0:
        raise ValueError("all x equal 1; slope undefined")
    slope = sum(a * b for a, b in zip(lx, ly)) / sxx
    ss_res = sum((b - slope * a) ** 2 for a, b in zip(lx, ly))
    ss_tot = sum(b * b for b in ly)
    r_squared = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    return slope, r_squared


def _finish(fig, ax, spec: PlotSpec) -> Path:
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.grid(True, which="major", alpha=0.3)
    out = Path(spec.out_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out, bbox_inches="tight")
    plt.close(fig)
    return out


def render_bounds_figure(spec: PlotSpec) -> RenderResult:
    """Scatter every method's bound against the exact count."""
    rows = read_rows(spec.csv_paths)
    selected = spec.series or tuple(name for name, _ in METHOD_COLORS)
    colors = dict(METHOD_COLORS)
    fig, ax = plt.subplots(figsize=(6.4, 5.6))
    drawn = 0
    dropped = 0
    usable = []
    for row in rows:
        if row["true"] is None or row["true"] <= 0:
            dropped += 1
            continue
        usable.append(row)
    if dropped:
        warnings.warn(f"dropped {dropped} row(s) without a positive exact count")
    for method in selected:
        xs, ys = [], []
        for row in usable:
            bound = row[method]
            if bound is None or bound <= 0:
                continue
            xs.append(row["true"])
            ys.append(bound)
        ax.scatter(xs, ys, s=18, color=colors[method], label=method,
                   edgecolors="none", alpha=0.85)
        drawn += len(xs)
    if usable:
        lo = min(r["true"] for r in usable)
        hi = max(r["true"] for r in usable)
        ax.plot([lo, hi], [lo, hi], color="0.4", linewidth=0.8,
                linestyle="--", label="y = x")
    ax.set_xlabel("exact count")
    ax.set_ylabel("upper bound")
    ax.legend(loc="upper left", fontsize=8)
    path = _finish(fig, ax, spec)
    return RenderResult(path, drawn, dropped)


def render_error_figure(spec: PlotSpec) -> RenderResult:
    """Scatter w/t against s/t with an optional through-origin trend line."""
    rows = read_rows(spec.csv_paths)
    points = []
    dropped = 0
    for row in rows:
        st, wt = row["s/t"], row["w/t"]
        if st is None or wt is None or st <= 0 or wt <= 0:
            dropped += 1
            continue
        points.append((st, wt))
    if dropped:
        warnings.warn(f"dropped {dropped} row(s) without positive error ratios")
    fig, ax = plt.subplots(figsize=(6.4, 5.6))
    ax.scatter([x for x, _ in points], [y for _, y in points], s=20,
               color="red", edgecolors="none", alpha=0.85)
    slope = r_squared = None
    annotations = []
    if spec.trend:
        if len(points) >= 2:
            slope, r_squared = through_origin_loglog(points)
            lo = min(x for x, _ in points)
            hi = max(x for x, _ in points)
            ax.plot([lo, hi], [lo ** slope, hi ** slope], color="0.3",
                    linewidth=1.0)
            annotations = [f"slope={slope:.6g}", f"R2={r_squared:.6g}"]
            ax.text(0.04, 0.93, "\n".join(annotations), transform=ax.transAxes,
                    fontsize=9, verticalalignment="top")
        else:
            warnings.warn("fewer than 2 usable points; trend line skipped")
    ax.set_xlabel("relative error of the loosest method (s/t)")
    ax.set_ylabel("relative error of the tightest method (w/t)")
    path = _finish(fig, ax, spec)
    return RenderResult(path, len(points), dropped, slope, r_squared, annotations)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="catbound-render",
        description="Render benchmark CSVs into bound/error figures",
    )
    parser.add_argument("--in", dest="inputs", nargs="+", required=True,
                        metavar="CSV", help="input CSV file(s)")
    parser.add_argument("--kind", choices=("bounds", "errors"), required=True)
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--series", nargs="+", default=None,
                        help="bounds figure: subset of methods to draw")
    parser.add_argument("--no-trend", action="store_true",
                        help="errors figure: skip the fitted line")
    args = parser.parse_args(argv)
    spec = PlotSpec(tuple(args.inputs), args.out,
                    series=tuple(args.series) if args.series else None,
                    trend=not args.no_trend)
    try:
        if args.kind == "bounds":
            result = render_bounds_figure(spec)
        else:
            result = render_error_figure(spec)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {result.path} ({result.points_drawn} points)")
    if result.slope is not None:
        print(f"trend: slope={result.slope:.6g} r_squared={result.r_squared:.6g}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
