"""Entropy-lattice linear programs that turn statistics into join bounds.

The size of a join equals exp(H) where H is the joint entropy of a
uniformly random result row.  Writing h(S) for the entropy of the subset S
of query variables, every valid bound is the optimum of a linear program
over the 2^n - 1 nonempty-subset coordinates:

    maximize  h(all variables)
    s.t.      elemental monotonicity and submodularity inequalities,
              one statistic constraint per (atom, statistic, orientation).

A statistic constraint for an atom (X, Y) lives on the three coordinates
h(X), h(Y), h(XY).  It is derived from the conditional-entropy form of the
statistic's bound by expanding h(Y|X) = h(XY) - h(X),
I(X;Y) = h(X) + h(Y) - h(XY), h(X|Y) = h(XY) - h(Y):

    domain size      h(X) <= ln |A|
    row count        h(XY) <= ln |R|
    max degree       h(XY) - h(X) <= ln max_deg
    star(p)          p h(XY) + (1-p) h(X) <= ln star_norm(p)
    bistar(p,q)      (p+q-1) h(XY) + (1-p) h(X) + (1-q) h(Y) <= ln mom(p,q)
    cat_v(p,q,r)     (p+q+r+2) h(XY) - (p+r) h(X) - (q+1) h(Y) <= ln V
    cat_n(p,q,r,s)   (p+q+r+s+3) h(XY) - (p+r+1) h(X) - (q+s+1) h(Y) <= ln N
    cat_w(p,q,r,s,t) (p+q+r+s+t+4) h(XY) - (p+r+t+1) h(X) - (q+s+2) h(Y) <= ln W

The transposed orientation swaps the h(X) and h(Y) coefficients.  Any
feasible dual assignment of nonnegative weights to the constraints is a
certificate that the exponentiated optimum really is an upper bound.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

import numpy as np

from . import simplex
from .graph import Graph
from .homcount import Pattern
from .stats import Orientation, StatKey, StatKind, StatRecord, compute_stat

__all__ = [
    "MAX_VARIABLES",
    "METHODS",
    "SubsetLattice",
    "Atom",
    "Query",
    "LinearConstraint",
    "EntropyLP",
    "BoundReport",
    "subset_index",
    "shannon_generators",
    "stat_constraint_coeffs",
    "emit_stat_constraint",
    "build_lp",
    "solve_bound",
    "verify_entropy_feasibility",
    "method_stat_keys",
    "compute_stat_records",
    "query_from_pattern",
    "bound_for_pattern",
    "minimize_over_generator_cone",
]

MAX_VARIABLES = 12

METHODS = ("star", "bistar", "vvv", "nnn", "www")


@dataclass(frozen=True)
class SubsetLattice:
    """Bijection between nonempty variable subsets (bitmasks) and the dense
    coordinate indices of the LP; h(empty set) = 0 is structural and never
    gets a coordinate."""

    n: int

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VARIABLES:
            raise ValueError(f"variable count must be in [1, {MAX_VARIABLES}]")

    @property
    def size(self) -> int:
        return (1 << self.n) - 1

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def index(self, mask: int) -> int:
        if not 0 < mask <= self.full_mask:
            raise ValueError(f"subset mask {mask:#b} outside the lattice")
        return mask - 1

    def mask(self, index: int) -> int:
        if not 0 <= index < self.size:
            raise ValueError("coordinate index out of range")
        return index + 1

    def mask_of(self, variables) -> int:
        m = 0
        for v in variables:
            if not 0 <= v < self.n:
                raise ValueError(f"variable index {v} out of range")
            m |= 1 << v
        return m


def subset_index(n: int) -> SubsetLattice:
    return SubsetLattice(n)


@dataclass(frozen=True)
class Atom:
    """One relational atom: relation name plus the ordered variable pair."""

    relation: str
    x: int
    y: int


@dataclass(frozen=True)
class Query:
    """Named variables and the atoms joining them."""

    variables: tuple[str, ...]
    atoms: tuple[Atom, ...]

    def __post_init__(self):
        n = len(self.variables)
        if not 1 <= n <= MAX_VARIABLES:
            raise ValueError(f"queries support 1..{MAX_VARIABLES} variables")
        used = set()
        for atom in self.atoms:
            if atom.x == atom.y:
                raise ValueError("atom variables must be distinct")
            if not (0 <= atom.x < n and 0 <= atom.y < n):
                raise ValueError("atom variable index out of range")
            used.update((atom.x, atom.y))
        if self.atoms and used != set(range(n)):
            raise ValueError("every variable must occur in at least one atom")


def query_from_pattern(pattern: Pattern, relation: str = "R") -> Query:
    """One variable per pattern vertex, one atom per pattern edge."""
    variables = tuple(f"X{i}" for i in range(pattern.vertex_count))
    atoms = tuple(Atom(relation, u, v) for u, v in pattern.edges)
    return Query(variables, atoms)


@dataclass(frozen=True)
class LinearConstraint:
    """sum(coeffs[mask] * h(mask)) <= rhs, coefficients keyed by subset mask.

    Generator inequalities (>= 0 forms) are stored negated so everything is
    a <= row.  ``provenance`` says where the row came from.
    """

    coeffs: tuple[tuple[int, float], ...]
    rhs: float
    provenance: str
    key: StatKey | None = None
    atom_index: int | None = None

    @staticmethod
    def make(coeffs: dict[int, float], rhs: float, provenance: str,
             key: StatKey | None = None, atom_index: int | None = None) -> "LinearConstraint":
        items = tuple(sorted((m, c) for m, c in coeffs.items() if c != 0.0))
        for mask, _ in items:
            if mask <= 0:
                raise ValueError("constraint touches the empty subset")
        return LinearConstraint(items, rhs, provenance, key, atom_index)

    @property
    def is_generator(self) -> bool:
        return self.provenance.startswith(("mono", "subm"))

    def evaluate(self, h_of_mask) -> float:
        return sum(c * h_of_mask(m) for m, c in self.coeffs)

    def describe(self, variables: tuple[str, ...] | None = None) -> str:
        def name(mask: int) -> str:
            if variables is None:
                return f"h[{mask:b}]"
            inner = ",".join(v for i, v in enumerate(variables) if mask >> i & 1)
            return f"h({inner})"

        terms = " + ".join(f"{c:g}*{name(m)}" for m, c in self.coeffs)
        return f"{terms} <= {self.rhs:g}   [{self.provenance}]"


def shannon_generators(n: int) -> list[LinearConstraint]:
    """Elemental inequalities spanning all Shannon-type inequalities:

    (a) h(S + y) - h(S) >= 0        for every y and S not containing y,
    (b) h(S+y) + h(S+z) - h(S+y+z) - h(S) >= 0   for every pair {y, z}.

    Counts are n 2^(n-1) and C(n,2) 2^(n-2); stored in <= form.
    """
    lattice = SubsetLattice(n)
    out: list[LinearConstraint] = []
    for y in range(n):
        ybit = 1 << y
        rest = [i for i in range(n) if i != y]
        for sub in range(1 << (n - 1)):
            smask = 0
            for pos, i in enumerate(rest):
                if sub >> pos & 1:
                    smask |= 1 << i
            coeffs = {smask | ybit: -1.0}
            if smask:
                coeffs[smask] = coeffs.get(smask, 0.0) + 1.0
            out.append(LinearConstraint.make(
                coeffs, 0.0, f"mono(+{y}|{smask:#x})"))
    for y, z in combinations(range(n), 2):
        ybit, zbit = 1 << y, 1 << z
        rest = [i for i in range(n) if i not in (y, z)]
        for sub in range(1 << (n - 2)) if n >= 2 else []:
            smask = 0
            for pos, i in enumerate(rest):
                if sub >> pos & 1:
                    smask |= 1 << i
            coeffs = {
                smask | ybit | zbit: 1.0,
                smask | ybit: -1.0,
                smask | zbit: -1.0,
            }
            if smask:
                coeffs[smask] = coeffs.get(smask, 0.0) + 1.0
            out.append(LinearConstraint.make(
                coeffs, 0.0, f"subm({y},{z}|{smask:#x})"))
    return out


@lru_cache(maxsize=None)
def _generators_cached(n: int) -> tuple[LinearConstraint, ...]:
    return tuple(shannon_generators(n))


def stat_constraint_coeffs(key: StatKey) -> tuple[float, float, float]:
    """Coefficients (on h(XY), h(X), h(Y)) of the constraint for ``key`` on
    an atom (X, Y); transposed orientation swaps the last two."""
    kind, params = key.kind, key.params
    if kind is StatKind.DOMAIN_SIZE:
        trio = (0.0, 1.0, 0.0)
    elif kind is StatKind.EDGE_COUNT:
        trio = (1.0, 0.0, 0.0)
    elif kind is StatKind.MAX_DEGREE:
        trio = (1.0, -1.0, 0.0)
    elif kind is StatKind.STAR:
        (p,) = params
        trio = (p, 1.0 - p, 0.0)
    elif kind is StatKind.BISTAR:
        p, q = params
        trio = (p + q - 1.0, 1.0 - p, 1.0 - q)
    elif kind is StatKind.CAT_V:
        p, q, r = params
        trio = (p + q + r + 2.0, -(p + r), -(q + 1.0))
    elif kind is StatKind.CAT_N:
        p, q, r, s = params
        trio = (p + q + r + s + 3.0, -(p + r + 1.0), -(q + s + 1.0))
    elif kind is StatKind.CAT_W:
        p, q, r, s, t = params
        trio = (p + q + r + s + t + 4.0, -(p + r + t + 1.0), -(q + s + 2.0))
    else:  # pragma: no cover
        raise ValueError(f"no constraint form for {kind}")
    if key.orientation is Orientation.TRANSPOSED:
        return (trio[0], trio[2], trio[1])
    return trio


def emit_stat_constraint(atom_vars: tuple[int, int], record: StatRecord,
                         atom_index: int | None = None,
                         lattice: SubsetLattice | None = None) -> LinearConstraint:
    """Constraint of ``record`` on the atom with variable indices (x, y)."""
    x, y = atom_vars
    if x == y:
        raise ValueError("atom variables must be distinct")
    if lattice is not None:
        lattice.mask_of((x, y))
    if record.log_value == -math.inf:
        raise ValueError(
            f"statistic {record.key.describe()} has log -inf (empty relation); "
            "no usable constraint"
        )
    c_xy, c_x, c_y = stat_constraint_coeffs(record.key)
    coeffs = {
        (1 << x) | (1 << y): c_xy,
        1 << x: c_x,
        1 << y: c_y,
    }
    return LinearConstraint.make(
        coeffs, record.log_value,
        f"stat({record.key.describe()}@atom{atom_index if atom_index is not None else '?'})",
        key=record.key, atom_index=atom_index,
    )


@dataclass
class EntropyLP:
    lattice: SubsetLattice
    variables: tuple[str, ...]
    constraints: list[LinearConstraint]
    objective_mask: int

    @property
    def stat_constraints(self) -> list[LinearConstraint]:
        return [c for c in self.constraints if not c.is_generator]


def build_lp(query: Query, stat_sets, both_orientations: bool = True,
             dedup: bool = True) -> EntropyLP:
    """Assemble the bound LP for a query.

    ``stat_sets`` gives, per atom (aligned with ``query.atoms``), the
    StatRecords to constrain that atom with.  Each record is emitted in its
    own orientation and (by default) the transposed one, which is valid here
    because relations are symmetrized on load; duplicate rows arising from
    that symmetry are removed when ``dedup`` is set.
    """
    n = len(query.variables)
    lattice = SubsetLattice(n)
    stat_sets = list(stat_sets)
    if len(stat_sets) != len(query.atoms):
        raise ValueError("need one statistic set per atom")
    constraints = list(_generators_cached(n))

    # pre-expand each distinct record set into (coeff trio, rhs, label)
    # templates; atoms usually share one set, so expand per object identity
    templates: dict[int, list[tuple[tuple[float, float, float], float, str, StatKey]]] = {}
    by_identity: dict[int, list] = {}
    for i, records in enumerate(stat_sets):
        cached = by_identity.get(id(records))
        if cached is not None:
            templates[i] = cached
            continue
        expanded = []
        for record in records:
            variants = [record.key]
            if both_orientations:
                variants.append(record.key.transposed())
            for key in variants:
                if record.log_value == -math.inf:
                    raise ValueError(
                        f"statistic {key.describe()} has log -inf (empty "
                        "relation); no usable constraint"
                    )
                expanded.append((stat_constraint_coeffs(key), record.log_value,
                                 key.describe(), key))
        if not expanded:
            warnings.warn(f"atom {i} has no statistics; the LP may be unbounded")
        by_identity[id(records)] = expanded
        templates[i] = expanded

    best: dict[tuple, int] = {}  # coefficient signature -> constraint index
    for i, atom in enumerate(query.atoms):
        x, y = atom.x, atom.y
        xy_mask = (1 << x) | (1 << y)
        for trio, rhs, label, key in templates[i]:
            con = LinearConstraint.make(
                {xy_mask: trio[0], 1 << x: trio[1], 1 << y: trio[2]},
                rhs, f"stat({label}@atom{i})", key=key, atom_index=i,
            )
            if dedup:
                prev = best.get(con.coeffs)
                if prev is not None:
                    # identical row pattern: keep the tighter right-hand side
                    if rhs < constraints[prev].rhs:
                        constraints[prev] = con
                    continue
                best[con.coeffs] = len(constraints)
            constraints.append(con)
    return EntropyLP(lattice, query.variables, constraints, lattice.full_mask)


@dataclass
class BoundReport:
    """LP outcome: log-domain optimum, exponentiated bound, dual certificate
    weights aligned with ``constraints``."""

    status: str
    log_bound: float
    bound: float
    dual_weights: np.ndarray
    constraints: list[LinearConstraint] = field(default_factory=list)

    def certificate(self, variables: tuple[str, ...] | None = None,
                    min_weight: float = 1e-12) -> list[tuple[float, str]]:
        out = []
        for w, con in zip(self.dual_weights, self.constraints):
            if w > min_weight:
                out.append((float(w), con.describe(variables)))
        return out


def solve_bound(lp: EntropyLP) -> BoundReport:
    """Maximize h(all variables) over the assembled constraints."""
    size = lp.lattice.size
    m = len(lp.constraints)
    rows = np.zeros((m, size))
    rhs = np.zeros(m)
    for i, con in enumerate(lp.constraints):
        for mask, coef in con.coeffs:
            rows[i, lp.lattice.index(mask)] = coef
        rhs[i] = con.rhs
    objective = np.zeros(size)
    objective[lp.lattice.index(lp.objective_mask)] = 1.0
    result = simplex.solve(simplex.DenseLP(objective, rows, rhs))
    if result.status == simplex.INFEASIBLE:
        raise RuntimeError(
            "entropy LP reported infeasible; h = 0 should always be feasible"
        )
    if result.status == simplex.UNBOUNDED:
        return BoundReport(simplex.UNBOUNDED, math.inf, math.inf,
                           np.full(m, np.nan), lp.constraints)
    log_bound = result.optimum
    try:
        bound = math.exp(log_bound)
    except OverflowError:
        bound = math.inf
    return BoundReport(simplex.OPTIMAL, log_bound, bound, result.dual,
                       lp.constraints)


# ---------------------------------------------------------------------------
# statistic menus for the five benchmark methods (cumulative)

_STAR_GRID = (0.0, 1.0, 2.0, 3.0, 4.0, 5.0)
_BISTAR_GRID = tuple(
    (float(p), float(q)) for p in range(2, 6) for q in range(2, 6)
)
_CAT_GRID = (1.0, 2.0, 3.0)


@lru_cache(maxsize=None)
def method_stat_keys(method: str) -> tuple[StatKey, ...]:
    """Statistic menu of a benchmark method; each method extends the last.

    star    domain size, row count, max degree, star(p) for p = 0..5
    bistar  + bistar(p, q) for p, q in 2..5
    vvv     + cat_v(p, 0, p) for p = 1..3
    nnn     + cat_n(p, 0, 0, p) for p = 1..3
    www     + cat_w(p, 0, 0, 0, p) for p = 1..3
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    keys: list[StatKey] = [
        StatKey(StatKind.DOMAIN_SIZE),
        StatKey(StatKind.EDGE_COUNT),
        StatKey(StatKind.MAX_DEGREE),
    ]
    keys.extend(StatKey(StatKind.STAR, (p,)) for p in _STAR_GRID)
    level = METHODS.index(method)
    if level >= 1:
        keys.extend(StatKey(StatKind.BISTAR, pq) for pq in _BISTAR_GRID)
    if level >= 2:
        keys.extend(StatKey(StatKind.CAT_V, (p, 0.0, p)) for p in _CAT_GRID)
    if level >= 3:
        keys.extend(StatKey(StatKind.CAT_N, (p, 0.0, 0.0, p)) for p in _CAT_GRID)
    if level >= 4:
        keys.extend(StatKey(StatKind.CAT_W, (p, 0.0, 0.0, 0.0, p)) for p in _CAT_GRID)
    return tuple(keys)


def compute_stat_records(g: Graph, keys) -> tuple[StatRecord, ...]:
    return tuple(compute_stat(g, key) for key in keys)


def bound_for_pattern(g: Graph, pattern: Pattern, method: str = "www",
                      records: tuple[StatRecord, ...] | None = None) -> BoundReport:
    """Upper bound on hom(pattern -> g) using one method's statistic menu."""
    if records is None:
        records = compute_stat_records(g, method_stat_keys(method))
    query = query_from_pattern(pattern)
    lp = build_lp(query, [records] * len(query.atoms))
    return solve_bound(lp)


# ---------------------------------------------------------------------------
# ground-truth checks

def verify_entropy_feasibility(g: Graph, pmf: dict[tuple[int, int], float],
                               keys=None, tol: float = 1e-9) -> bool:
    """Check every emitted statistic constraint at the true entropy vector
    of an explicit distribution on the directed rows of ``g``.

    The pmf must be supported on rows of the relation and sum to 1.  For
    each statistic key (both orientations), the constraint evaluated at
    (h(X), h(Y), h(XY)) must hold up to ``tol``; returns True iff all do.
    """
    total = 0.0
    px: dict[int, float] = {}
    py: dict[int, float] = {}
    nbr = g.neighbor_sets()
    for (u, v), prob in pmf.items():
        if prob < 0:
            raise ValueError("pmf has a negative probability")
        if not (0 <= u < g.vertex_count) or v not in nbr[u]:
            raise ValueError(f"pmf support ({u},{v}) is not a row of the relation")
        total += prob
        px[u] = px.get(u, 0.0) + prob
        py[v] = py.get(v, 0.0) + prob
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"pmf sums to {total}, expected 1")

    def entropy(values) -> float:
        return -sum(p * math.log(p) for p in values if p > 0)

    h_xy = entropy(pmf.values())
    h_x = entropy(px.values())
    h_y = entropy(py.values())

    if keys is None:
        keys = method_stat_keys("www")
    for key in keys:
        record = compute_stat(g, key)
        for rec in (record,
                    StatRecord(record.key.transposed(), record.log_value,
                               record.raw_value)):
            c_xy, c_x, c_y = stat_constraint_coeffs(rec.key)
            lhs = c_xy * h_xy + c_x * h_x + c_y * h_y
            if lhs > rec.log_value + tol:
                return False
    return True


def minimize_over_generator_cone(n: int, coeffs: dict[int, float]) -> float:
    """Minimum of a linear form over the generator cone intersected with the
    unit box 0 <= h(S) <= 1.

    A nonnegative minimum certifies that the form is implied by the
    elemental generators (used to validate the generator families against
    the broader monotonicity/subadditivity/submodularity inequalities).
    """
    lattice = SubsetLattice(n)
    gens = shannon_generators(n)
    size = lattice.size
    rows = np.zeros((len(gens) + size, size))
    rhs = np.zeros(len(gens) + size)
    for i, con in enumerate(gens):
        for mask, coef in con.coeffs:
            rows[i, lattice.index(mask)] = coef
    for j in range(size):
        rows[len(gens) + j, j] = 1.0
        rhs[len(gens) + j] = 1.0
    objective = np.zeros(size)
    for mask, coef in coeffs.items():
        if mask == 0:
            continue
        objective[lattice.index(mask)] -= coef
    result = simplex.solve(simplex.DenseLP(objective, rows, rhs))
    if result.status != simplex.OPTIMAL:
        raise RuntimeError(f"auxiliary LP ended with status {result.status}")
    return -result.optimum
