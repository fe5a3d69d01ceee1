"""Benchmark harness: true counts vs the five nested bound methods.

For each host graph and each query pattern the harness records the exact
homomorphism count plus the five method bounds (star, bistar, vvv, nnn,
www — each method's statistic menu extends the previous one, so the bounds
are non-increasing left to right).  Per-dataset results go to CSV files
with the fixed header

    shape,true,star,bistar,vvv,nnn,www,s/t,w/t

where s/t and w/t are the relative errors of the loosest and tightest
method.  A geometric-mean table over all datasets lands in _average.csv,
and the tightening trend is summarized by a through-origin log-log
regression of w/t against s/t.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

from .entropy_lp import METHODS, bound_for_pattern, compute_stat_records, method_stat_keys
from .graph import Graph, load_edge_list
from .homcount import BudgetExceededError, DEFAULT_BUDGET, catalog, count_homs

__all__ = [
    "BenchRow",
    "RegressionResult",
    "ManifestResult",
    "CSV_HEADER",
    "run_methods",
    "geometric_mean",
    "loglog_regress",
    "write_csv",
    "read_csv",
    "run_manifest",
]

CSV_HEADER = ("shape", "true", "star", "bistar", "vvv", "nnn", "www", "s/t", "w/t")


@dataclass(frozen=True)
class BenchRow:
    """One (pattern, dataset) benchmark record.

    ``true`` is None when the exact count exceeded the oracle budget; such
    rows (and rows with true = 0) are excluded from ratios, averages and
    regressions because relative error is undefined for them.
    """

    shape: str
    true: int | float | None
    star: float
    bistar: float
    vvv: float
    nnn: float
    www: float
    s_over_t: float | None
    w_over_t: float | None

    def bounds(self) -> tuple[float, float, float, float, float]:
        return (self.star, self.bistar, self.vvv, self.nnn, self.www)


@dataclass(frozen=True)
class RegressionResult:
    slope: float
    r_squared: float
    point_count: int


def run_methods(g: Graph, patterns=None, budget: int = DEFAULT_BUDGET) -> list[BenchRow]:
    """One BenchRow per pattern on one host graph.

    All statistics are computed once (the menus are nested, so the widest
    menu is computed and the methods use prefixes of it).
    """
    if patterns is None:
        patterns = catalog()
    if g.directed_edge_count == 0:
        raise ValueError("host graph has no edges; nothing to bound")
    full_records = compute_stat_records(g, method_stat_keys(METHODS[-1]))
    prefix = {m: len(method_stat_keys(m)) for m in METHODS}
    rows = []
    for pattern in patterns:
        try:
            true_count: int | None = count_homs(pattern, g, budget=budget)
        except BudgetExceededError:
            true_count = None
        bounds = {}
        for method in METHODS:
            report = bound_for_pattern(
                g, pattern, method, records=full_records[: prefix[method]]
            )
            bounds[method] = report.bound
        if true_count is not None and true_count >= 1:
            s_over_t = bounds["star"] / true_count
            w_over_t = bounds["www"] / true_count
        else:
            s_over_t = w_over_t = None
        rows.append(BenchRow(pattern.name, true_count, bounds["star"],
                             bounds["bistar"], bounds["vvv"], bounds["nnn"],
                             bounds["www"], s_over_t, w_over_t))
    return rows


def _geomean(values) -> float:
    logs = [math.log(v) for v in values]
    return math.exp(sum(logs) / len(logs))


def geometric_mean(rows_per_dataset) -> list[BenchRow]:
    """Per-shape geometric mean over datasets.

    Only datasets where the shape's true count is available and >= 1
    contribute; shapes with no contributing dataset are dropped.  Every
    dataset must cover the same shapes in the same order.
    """
    rows_per_dataset = [list(rows) for rows in rows_per_dataset]
    if not rows_per_dataset:
        return []
    shapes = [r.shape for r in rows_per_dataset[0]]
    for rows in rows_per_dataset[1:]:
        if [r.shape for r in rows] != shapes:
            raise ValueError("datasets cover different shape sets")
    out = []
    for i, shape in enumerate(shapes):
        group = [rows[i] for rows in rows_per_dataset
                 if rows[i].true is not None and rows[i].true >= 1]
        if not group:
            continue
        out.append(BenchRow(
            shape=shape,
            true=_geomean([r.true for r in group]),
            star=_geomean([r.star for r in group]),
            bistar=_geomean([r.bistar for r in group]),
            vvv=_geomean([r.vvv for r in group]),
            nnn=_geomean([r.nnn for r in group]),
            www=_geomean([r.www for r in group]),
            s_over_t=_geomean([r.s_over_t for r in group]),
            w_over_t=_geomean([r.w_over_t for r in group]),
        ))
    return out


def loglog_regress(points, through_origin: bool = True) -> RegressionResult:
    """Least squares on (ln x, ln y) pairs.

    With ``through_origin`` the model is ln y = slope * ln x (no intercept)
    and R^2 is the uncentered 1 - SS_res / sum(ln y)^2, the usual definition
    for a no-intercept fit; otherwise an intercept is fitted and the
    centered R^2 is reported (the intercept itself is not part of the
    result).
    """
    pts = [(float(x), float(y)) for x, y in points]
    if len(pts) < 2:
        raise ValueError("regression needs at least 2 points")
    if any(x <= 0 or y <= 0 for x, y in pts):
        raise ValueError("log-log regression needs strictly positive data")
    lx = [math.log(x) for x, _ in pts]
    ly = [math.log(y) for _, y in pts]
    n = len(pts)
    if through_origin:
        sxx = sum(a * a for a in lx)
        if sxx == 0:
            raise ValueError("all x equal 1; through-origin slope undefined")
        slope = sum(a * b for a, b in zip(lx, ly)) / sxx
        ss_res = sum((b - slope * a) ** 2 for a, b in zip(lx, ly))
        ss_tot = sum(b * b for b in ly)
    else:
        mx = sum(lx) / n
        my = sum(ly) / n
        sxx = sum((a - mx) ** 2 for a in lx)
        if sxx == 0:
            raise ValueError("all x identical; slope undefined")
        slope = sum((a - mx) * (b - my) for a, b in zip(lx, ly)) / sxx
        intercept = my - slope * mx
        ss_res = sum((b - slope * a - intercept) ** 2 for a, b in zip(lx, ly))
        ss_tot = sum((b - my) ** 2 for b in ly)
    r_squared = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    return RegressionResult(slope=slope, r_squared=r_squared, point_count=n)


def _format_number(x: int | float | None) -> str:
    if x is None:
        return ""
    if isinstance(x, int):
        return str(x)
    return f"{x:.6g}"


def write_csv(rows, destination) -> None:
    """Write rows in catalog order with the fixed header; 6 significant
    digits for non-integer values, blank cells for unavailable ones."""
    own = isinstance(destination, (str, Path))
    fh = open(destination, "w", newline="") if own else destination
    try:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for row in rows:
            writer.writerow([
                row.shape,
                _format_number(row.true),
                _format_number(row.star),
                _format_number(row.bistar),
                _format_number(row.vvv),
                _format_number(row.nnn),
                _format_number(row.www),
                _format_number(row.s_over_t),
                _format_number(row.w_over_t),
            ])
    finally:
        if own:
            fh.close()


def read_csv(source) -> list[BenchRow]:
    own = isinstance(source, (str, Path))
    fh = open(source, "r", newline="") if own else source
    try:
        reader = csv.reader(fh)
        header = tuple(next(reader))
        if header != CSV_HEADER:
            raise ValueError(f"unexpected CSV header {header!r}")
        rows = []
        for rec in reader:
            if not rec:
                continue
            shape, true_s, star_s, bistar_s, vvv_s, nnn_s, www_s, st_s, wt_s = rec

            def num(s: str) -> float | None:
                return float(s) if s else None

            true_val: int | float | None = None
            if true_s:
                f = float(true_s)
                true_val = int(f) if f.is_integer() else f
            rows.append(BenchRow(shape, true_val, float(star_s), float(bistar_s),
                                 float(vvv_s), float(nnn_s), float(www_s),
                                 num(st_s), num(wt_s)))
        return rows
    finally:
        if own:
            fh.close()


@dataclass
class ManifestResult:
    dataset_names: list[str]
    dataset_rows: list[list[BenchRow]]
    average: list[BenchRow]
    regression: RegressionResult | None


def run_manifest(manifest_path, out_dir, budget: int = DEFAULT_BUDGET,
                 patterns=None) -> ManifestResult:
    """Run the full protocol over a manifest (one edge-list path per line).

    Writes ``<out_dir>/<dataset>.csv`` per dataset plus ``_average.csv``,
    and fits the through-origin regression of w/t on s/t over the averaged
    rows.  Relative manifest entries resolve against the manifest location.
    """
    manifest_path = Path(manifest_path)
    base = manifest_path.parent
    entries = []
    for line in manifest_path.read_text().splitlines():
        text = line.strip()
        if text and not text.startswith("#"):
            path = Path(text)
            entries.append(path if path.is_absolute() else base / path)
    if not entries:
        raise ValueError(f"manifest {manifest_path} lists no datasets")

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    names = []
    per_dataset = []
    for path in entries:
        g = load_edge_list(path)
        rows = run_methods(g, patterns=patterns, budget=budget)
        name = path.stem
        names.append(name)
        per_dataset.append(rows)
        write_csv(rows, out / f"{name}.csv")
    average = geometric_mean(per_dataset)
    write_csv(average, out / "_average.csv")

    points = [(r.s_over_t, r.w_over_t) for r in average
              if r.s_over_t and r.w_over_t]
    regression = loglog_regress(points) if len(points) >= 2 else None
    return ManifestResult(names, per_dataset, average, regression)
