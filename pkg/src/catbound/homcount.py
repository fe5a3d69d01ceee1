"""Exact homomorphism counting and the built-in query-pattern catalog.

A homomorphism from a pattern H into a host graph G is a (not necessarily
injective) map of vertices that sends every pattern edge to a host edge.
For a symmetric host relation, each homomorphism is exactly one row of the
join whose atoms are the pattern's edges, so these counts are the ground
truth the upper bounds are benchmarked against.

Counting is done by backtracking over a connected ordering of the pattern
core (non-leaf vertices), extending partial maps only over adjacency lists
of already-placed neighbors.  Degree-1 pattern vertices never constrain
anything beyond their single neighbor, so each contributes a multiplicative
factor d(image of neighbor) and is never placed explicitly.

The catalog holds all connected simple graphs on 3, 4, and 5 vertices up to
isomorphism: 2 + 6 + 21 = 29 patterns with short conventional names
(path/cycle/clique names, complement-style names like ``P2uP3c`` for the
complement of P2 + P3 + isolated vertices).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .graph import Graph, load_edge_list

__all__ = [
    "Pattern",
    "BudgetExceededError",
    "DEFAULT_BUDGET",
    "catalog",
    "catalog_names",
    "pattern_by_name",
    "count_homs",
]

DEFAULT_BUDGET = 10 ** 9


class BudgetExceededError(RuntimeError):
    """The backtracking workload crossed the configured step budget."""


@dataclass(frozen=True)
class Pattern:
    """A small connected simple graph used as a query shape."""

    name: str
    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        norm = tuple(sorted((min(u, v), max(u, v)) for u, v in self.edges))
        object.__setattr__(self, "edges", norm)
        if self.vertex_count < 1:
            raise ValueError("pattern needs at least one vertex")
        seen = set()
        for u, v in norm:
            if u == v:
                raise ValueError(f"pattern {self.name!r} has a self-loop at {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"pattern {self.name!r} edge ({u},{v}) out of range")
            if (u, v) in seen:
                raise ValueError(f"pattern {self.name!r} has duplicate edge ({u},{v})")
            seen.add((u, v))
        if not self._connected():
            raise ValueError(f"pattern {self.name!r} is not connected")

    def _connected(self) -> bool:
        if self.vertex_count == 1:
            return True
        adj = self.adjacency()
        seen = {0}
        stack = [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.vertex_count

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def degrees(self) -> list[int]:
        deg = [0] * self.vertex_count
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def relabeled(self, perm: list[int], name: str | None = None) -> "Pattern":
        """Apply a vertex permutation (perm[old] = new)."""
        return Pattern(
            name or self.name,
            self.vertex_count,
            tuple((perm[u], perm[v]) for u, v in self.edges),
        )

    @classmethod
    def from_edge_list(cls, source, name: str = "query") -> "Pattern":
        g = load_edge_list(source)
        edges = []
        for u in range(g.vertex_count):
            for v in g.neighbors(u).tolist():
                if u < v:
                    edges.append((u, v))
        return cls(name, g.vertex_count, tuple(edges))


# ---------------------------------------------------------------------------
# catalog: connected simple graphs on 3..5 vertices, in the fixed icon order

_CATALOG_SPEC: tuple[tuple[str, int, tuple[tuple[int, int], ...]], ...] = (
    # 3 vertices
    ("path3", 3, ((0, 1), (0, 2))),
    ("K3", 3, ((0, 1), (0, 2), (1, 2))),
    # 4 vertices
    ("claw", 4, ((0, 1), (0, 2), (0, 3))),
    ("path4", 4, ((0, 1), (1, 2), (2, 3))),
    ("pan3", 4, ((1, 3), (1, 2), (2, 3), (0, 3))),
    ("cycle4", 4, ((0, 1), (1, 2), (2, 3), (0, 3))),
    ("fan2", 4, ((0, 1), (1, 2), (2, 3), (0, 3), (0, 2))),
    ("K4", 4, ((0, 1), (1, 2), (2, 3), (0, 3), (0, 2), (1, 3))),
    # 5 vertices
    ("K14", 5, ((0, 1), (0, 2), (0, 3), (0, 4))),
    ("chair", 5, ((1, 2), (2, 3), (3, 4), (0, 2))),
    ("path5", 5, ((3, 4), (0, 4), (0, 1), (1, 2))),
    ("cricket", 5, ((2, 3), (0, 3), (0, 2), (0, 1), (0, 4))),
    ("pan4", 5, ((3, 4), (0, 4), (0, 1), (1, 2), (1, 3))),
    ("bull", 5, ((3, 4), (0, 4), (0, 1), (1, 2), (1, 4))),
    ("pan4c", 5, ((3, 4), (0, 4), (0, 1), (1, 2), (0, 3))),
    ("cycle5", 5, ((0, 1), (1, 2), (2, 3), (3, 4), (0, 4))),
    ("dart", 5, ((3, 4), (0, 4), (0, 1), (1, 2), (1, 4), (2, 4))),
    ("K23", 5, ((3, 4), (0, 4), (0, 1), (1, 2), (1, 3), (2, 4))),
    ("butterfly", 5, ((3, 4), (0, 4), (0, 1), (1, 2), (0, 2), (0, 3))),
    ("house", 5, ((0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (1, 4))),
    ("kite", 5, ((3, 4), (0, 4), (0, 1), (1, 2), (0, 2), (2, 4))),
    ("K3u2K1c", 5, ((3, 4), (0, 4), (0, 1), (1, 2), (2, 4), (1, 3), (1, 4))),
    ("fan3", 5, ((0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (0, 2), (0, 3))),
    ("clawuK1c", 5, ((3, 4), (0, 4), (0, 1), (1, 2), (0, 3), (1, 3), (1, 4))),
    ("P2uP3c", 5, ((0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (1, 3), (2, 4))),
    ("P3u2K1c", 5, ((0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (2, 4), (1, 4), (1, 3))),
    ("wheel4", 5, ((0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (1, 4))),
    ("K5_e", 5, ((1, 2), (2, 3), (3, 4), (0, 4), (0, 1), (1, 3), (0, 3), (0, 2), (2, 4))),
    ("K5", 5, tuple((u, v) for u in range(5) for v in range(u + 1, 5))),
)


@lru_cache(maxsize=1)
def catalog() -> tuple[Pattern, ...]:
    """All connected simple graphs on 3-5 vertices, pairwise non-isomorphic."""
    return tuple(Pattern(name, n, edges) for name, n, edges in _CATALOG_SPEC)


def catalog_names() -> tuple[str, ...]:
    return tuple(p.name for p in catalog())


def pattern_by_name(name: str) -> Pattern:
    for p in catalog():
        if p.name == name:
            return p
    raise ValueError(f"unknown catalog pattern {name!r}")


# ---------------------------------------------------------------------------
# counting

def _core_order(pattern: Pattern) -> tuple[list[int], list[int]]:
    """BFS order of the non-leaf core from a max-degree vertex, plus the
    per-core-vertex count of attached pattern leaves."""
    deg = pattern.degrees()
    adj = pattern.adjacency()
    core = [v for v in range(pattern.vertex_count) if deg[v] >= 2]
    leaf_mult = [0] * pattern.vertex_count
    for v in range(pattern.vertex_count):
        if deg[v] == 1:
            leaf_mult[adj[v][0]] += 1
    if not core:
        return [], leaf_mult
    start = max(core, key=lambda v: deg[v])
    order = [start]
    seen = {start}
    queue = [start]
    while queue:
        v = queue.pop(0)
        for w in adj[v]:
            if w not in seen and deg[w] >= 2:
                seen.add(w)
                order.append(w)
                queue.append(w)
    return order, leaf_mult


def count_homs(pattern: Pattern, g: Graph, budget: int = DEFAULT_BUDGET) -> int:
    """Exact number of homomorphisms from ``pattern`` into ``g``.

    Raises BudgetExceededError once the number of examined candidate
    extensions crosses ``budget`` (keeps the oracle desk-scale).
    """
    n = g.vertex_count
    if n == 0 or pattern.vertex_count == 0:
        return 0
    if pattern.vertex_count == 1:
        return n
    if not pattern.edges:
        raise ValueError("disconnected pattern")  # unreachable; kept for safety

    core, leaf_mult = _core_order(pattern)
    degs = g.degrees.tolist()

    if not core:
        # single-edge pattern: both endpoints are leaves
        return g.directed_edge_count

    adj = pattern.adjacency()
    core_pos = {v: i for i, v in enumerate(core)}
    # for each core vertex, the core neighbors already placed when it is reached
    placed_nbrs = [
        [core_pos[w] for w in adj[v] if w in core_pos and core_pos[w] < i]
        for i, v in enumerate(core)
    ]
    nbr_sets = g.neighbor_sets()
    steps = 0
    total = 0
    k = len(core)
    images = [0] * k

    def candidates(i: int) -> list[int] | range:
        anchors = placed_nbrs[i]
        if not anchors:
            return range(n)
        sets = sorted((nbr_sets[images[j]] for j in anchors), key=len)
        base = sets[0]
        for other in sets[1:]:
            base = base & other
        return list(base)

    def extend(i: int, factor: int) -> None:
        nonlocal steps, total
        cands = candidates(i)
        steps += len(cands) if not isinstance(cands, range) else n
        if steps > budget:
            raise BudgetExceededError(
                f"homomorphism count for {pattern.name!r} exceeded {budget} steps"
            )
        mult = leaf_mult[core[i]]
        if i == k - 1:
            if mult == 0:
                total += factor * len(cands)
            else:
                total += factor * sum(degs[x] ** mult for x in cands)
            return
        for x in cands:
            images[i] = x
            f = factor if mult == 0 else factor * degs[x] ** mult
            extend(i + 1, f)

    extend(0, 1)
    return total
