"""Command-line front end.

Subcommands:
    stats    print statistics of an edge-list graph
    bound    upper-bound the hom/join count of a pattern on a host graph
    count    exact homomorphism count (backtracking oracle)
    bench    run the full benchmark protocol over a dataset manifest
    catalog  list the built-in query patterns

Numbers print with 6 significant digits; log values are printed alongside
raw values so very large statistics stay readable.  The oracle step budget
can be overridden with --budget or the CATBOUND_BUDGET environment
variable.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path

from . import bench as bench_mod
from . import entropy_lp
from .graph import GraphParseError, load_edge_list
from .homcount import (BudgetExceededError, DEFAULT_BUDGET, Pattern, catalog,
                       count_homs, pattern_by_name)
from .stats import StatKey, StatKind, compute_stat

BUDGET_ENV = "CATBOUND_BUDGET"


def _fmt(x: float) -> str:
    if isinstance(x, int):
        return str(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.6g}"


def _parse_params(text: str, arity: int, flag: str) -> tuple[float, ...]:
    parts = [p for p in text.replace(",", " ").split() if p]
    if len(parts) != arity:
        raise ValueError(f"{flag} expects {arity} comma-separated parameters")
    return tuple(float(p) for p in parts)


def _default_budget(args) -> int:
    if args.budget is not None:
        return args.budget
    env = os.environ.get(BUDGET_ENV)
    if env:
        return int(env)
    return DEFAULT_BUDGET


def _load_pattern(args) -> Pattern:
    if args.shape:
        return pattern_by_name(args.shape)
    if args.pattern:
        return Pattern.from_edge_list(args.pattern, name=Path(args.pattern).stem)
    raise ValueError("need --shape NAME or --pattern EDGELIST")


def cmd_stats(args) -> int:
    g = load_edge_list(args.graph)
    keys: list[StatKey] = []
    if args.domain_size:
        keys.append(StatKey(StatKind.DOMAIN_SIZE))
    if args.edge_count:
        keys.append(StatKey(StatKind.EDGE_COUNT))
    if args.max_degree:
        keys.append(StatKey(StatKind.MAX_DEGREE))
    for text in args.star or ():
        keys.append(StatKey(StatKind.STAR, _parse_params(text, 1, "--star")))
    for text in args.bistar or ():
        keys.append(StatKey(StatKind.BISTAR, _parse_params(text, 2, "--bistar")))
    for text in args.catv or ():
        keys.append(StatKey(StatKind.CAT_V, _parse_params(text, 3, "--catv")))
    for text in args.catn or ():
        keys.append(StatKey(StatKind.CAT_N, _parse_params(text, 4, "--catn")))
    for text in args.catw or ():
        keys.append(StatKey(StatKind.CAT_W, _parse_params(text, 5, "--catw")))
    if not keys:
        keys = list(entropy_lp.method_stat_keys("www"))
    for key in keys:
        rec = compute_stat(g, key)
        raw = "overflow" if math.isinf(rec.raw_value) else _fmt(rec.raw_value)
        print(f"{key.describe()} value={raw} log={_fmt(rec.log_value)}")
    return 0


def cmd_bound(args) -> int:
    g = load_edge_list(args.graph)
    pattern = _load_pattern(args)
    if args.method == "edges":
        # row counts only: reproduces the classic fractional-cover bound
        records = entropy_lp.compute_stat_records(
            g, (StatKey(StatKind.EDGE_COUNT),))
        report = entropy_lp.bound_for_pattern(g, pattern, records=records)
    else:
        report = entropy_lp.bound_for_pattern(g, pattern, method=args.method)
    print(f"pattern={pattern.name} method={args.method} status={report.status}")
    print(f"log_bound={_fmt(report.log_bound)} bound={_fmt(report.bound)}")
    if args.certificate and report.status == "optimal":
        names = tuple(f"X{i}" for i in range(len(pattern.degrees())))
        for weight, text in report.certificate(names):
            print(f"  weight={_fmt(weight)}  {text}")
        recombined = sum(
            w * c.rhs for w, c in zip(report.dual_weights, report.constraints)
        )
        print(f"  certificate recombines to {_fmt(recombined)}")
    return 0


def cmd_count(args) -> int:
    g = load_edge_list(args.graph)
    pattern = _load_pattern(args)
    value = count_homs(pattern, g, budget=_default_budget(args))
    print(f"hom({pattern.name}) = {value}")
    return 0


def cmd_bench(args) -> int:
    result = bench_mod.run_manifest(args.manifest, args.out,
                                    budget=_default_budget(args))
    for name, rows in zip(result.dataset_names, result.dataset_rows):
        usable = sum(1 for r in rows if r.true is not None and r.true >= 1)
        print(f"dataset {name}: {len(rows)} shapes, {usable} with true >= 1")
    print(f"wrote {len(result.dataset_names)} dataset CSV(s) and _average.csv "
          f"to {args.out}")
    if result.regression is None:
        print("regression: not enough usable points")
    else:
        reg = result.regression
        print(f"regression log(w/t) = slope * log(s/t): slope={_fmt(reg.slope)} "
              f"r_squared={_fmt(reg.r_squared)} points={reg.point_count}")
    return 0


def cmd_catalog(args) -> int:
    for p in catalog():
        edges = " ".join(f"{u}-{v}" for u, v in p.edges)
        print(f"{p.name} vertices={p.vertex_count} edges={edges}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="catbound",
        description="Join-size upper bounds from linear-time degree statistics",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_stats = sub.add_parser("stats", help="print statistics of a graph")
    p_stats.add_argument("graph", help="edge-list file")
    p_stats.add_argument("--domain-size", action="store_true")
    p_stats.add_argument("--edge-count", action="store_true")
    p_stats.add_argument("--max-degree", action="store_true")
    p_stats.add_argument("--star", action="append", metavar="P")
    p_stats.add_argument("--bistar", action="append", metavar="P,Q")
    p_stats.add_argument("--catv", action="append", metavar="P,Q,R")
    p_stats.add_argument("--catn", action="append", metavar="P,Q,R,S")
    p_stats.add_argument("--catw", action="append", metavar="P,Q,R,S,T")
    p_stats.set_defaults(func=cmd_stats)

    p_bound = sub.add_parser("bound", help="LP upper bound for a pattern")
    p_bound.add_argument("graph")
    p_bound.add_argument("--shape", help="catalog pattern name")
    p_bound.add_argument("--pattern", help="pattern edge-list file")
    p_bound.add_argument("--method", choices=("edges",) + entropy_lp.METHODS,
                         default="www",
                         help="statistic menu; 'edges' uses row counts only")
    p_bound.add_argument("--certificate", action="store_true",
                         help="print the dual certificate")
    p_bound.set_defaults(func=cmd_bound)

    p_count = sub.add_parser("count", help="exact homomorphism count")
    p_count.add_argument("graph")
    p_count.add_argument("--shape")
    p_count.add_argument("--pattern")
    p_count.add_argument("--budget", type=int, default=None,
                         help=f"oracle step budget (default {DEFAULT_BUDGET})")
    p_count.set_defaults(func=cmd_count)

    p_bench = sub.add_parser("bench", help="run the benchmark protocol")
    p_bench.add_argument("manifest", help="text file, one dataset path per line")
    p_bench.add_argument("--out", required=True, help="output directory for CSVs")
    p_bench.add_argument("--budget", type=int, default=None)
    p_bench.set_defaults(func=cmd_bench)

    p_cat = sub.add_parser("catalog", help="list built-in patterns")
    p_cat.set_defaults(func=cmd_catalog)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GraphParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
