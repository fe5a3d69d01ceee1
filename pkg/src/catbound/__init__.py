"""catbound: provable join-size upper bounds from linear-time degree
statistics of a relation (star norms, bi-star moments, caterpillar
moments), an entropy-lattice LP that assembles them into bounds with dual
certificates, an exact homomorphism-counting oracle, and a benchmark
harness comparing the five nested bound methods against ground truth."""

from .graph import (Graph, GraphParseError, degree_of, dump_edge_list,
                    from_edge_pairs, load_edge_list)
from .stats import (Orientation, StatKey, StatKind, StatRecord, bistar_moment,
                    cat_n, cat_v, cat_w, compute_stat, max_degree, star_norm)
from .homcount import (BudgetExceededError, DEFAULT_BUDGET, Pattern, catalog,
                       catalog_names, count_homs, pattern_by_name)
from .simplex import DenseLP, SolveResult, solve
from .entropy_lp import (METHODS, Atom, BoundReport, EntropyLP, LinearConstraint,
                         Query, SubsetLattice, bound_for_pattern, build_lp,
                         compute_stat_records, emit_stat_constraint,
                         method_stat_keys, minimize_over_generator_cone,
                         query_from_pattern, shannon_generators, solve_bound,
                         stat_constraint_coeffs, subset_index,
                         verify_entropy_feasibility)
from .bench import (BenchRow, ManifestResult, RegressionResult, geometric_mean,
                    loglog_regress, read_csv, run_manifest, run_methods,
                    write_csv)

__version__ = "0.1.0"

__all__ = [
    "Graph", "GraphParseError", "degree_of", "dump_edge_list",
    "from_edge_pairs", "load_edge_list",
    "Orientation", "StatKey", "StatKind", "StatRecord", "bistar_moment",
    "cat_n", "cat_v", "cat_w", "compute_stat", "max_degree", "star_norm",
    "BudgetExceededError", "DEFAULT_BUDGET", "Pattern", "catalog",
    "catalog_names", "count_homs", "pattern_by_name",
    "DenseLP", "SolveResult", "solve",
    "METHODS", "Atom", "BoundReport", "EntropyLP", "LinearConstraint",
    "Query", "SubsetLattice", "bound_for_pattern", "build_lp",
    "compute_stat_records", "emit_stat_constraint", "method_stat_keys",
    "minimize_over_generator_cone", "query_from_pattern", "shannon_generators",
    "solve_bound", "stat_constraint_coeffs", "subset_index",
    "verify_entropy_feasibility",
    "BenchRow", "ManifestResult", "RegressionResult", "geometric_mean",
    "loglog_regress", "read_csv", "run_manifest", "run_methods", "write_csv",
]
