"""Shared test utilities: random hosts and independent brute-force oracles.

The oracles here deliberately mirror the *defining sums* (explicit loops
over spine tuples, explicit enumeration of vertex maps) rather than the
message-passing implementations they check.
"""

import itertools
import random

from catbound.graph import Graph, from_edge_pairs
from catbound.homcount import Pattern


def random_graph(rng: random.Random, max_vertices: int = 12,
                 max_edges: int = 30, min_edges: int = 1) -> Graph:
    """Random host with loops/duplicates injected (ingestion must drop them)."""
    nv = rng.randrange(2, max_vertices + 1)
    m = rng.randrange(min_edges, max_edges + 1)
    pairs = [(rng.randrange(nv), rng.randrange(nv)) for _ in range(m)]
    return from_edge_pairs(pairs, vertex_count=nv)


def adjacency_lists(g: Graph) -> list[list[int]]:
    return [g.neighbors(v).tolist() for v in range(g.vertex_count)]


# --- defining-sum oracles (exact integers for integer exponents) ---------

def brute_star(g: Graph, p: int) -> int:
    degs = g.degrees.tolist()
    return sum(d ** p for d in degs)


def brute_bistar(g: Graph, p: int, q: int) -> int:
    adj = adjacency_lists(g)
    degs = g.degrees.tolist()
    total = 0
    for a in range(g.vertex_count):
        for b in adj[a]:
            total += degs[a] ** (p - 1) * degs[b] ** (q - 1)
    return total


def brute_cat_v(g: Graph, p: int, q: int, r: int) -> int:
    adj = adjacency_lists(g)
    degs = g.degrees.tolist()
    total = 0
    for b in range(g.vertex_count):
        for a in adj[b]:
            for c in adj[b]:
                total += degs[a] ** p * degs[b] ** q * degs[c] ** r
    return total


def brute_cat_n(g: Graph, p: int, q: int, r: int, s: int) -> int:
    adj = adjacency_lists(g)
    degs = g.degrees.tolist()
    total = 0
    for b in range(g.vertex_count):
        for a in adj[b]:
            for c in adj[b]:
                for d in adj[c]:
                    total += (degs[a] ** p * degs[b] ** q
                              * degs[c] ** r * degs[d] ** s)
    return total


def brute_cat_w(g: Graph, p: int, q: int, r: int, s: int, t: int) -> int:
    adj = adjacency_lists(g)
    degs = g.degrees.tolist()
    total = 0
    for b in range(g.vertex_count):
        for a in adj[b]:
            for c in adj[b]:
                for d in adj[c]:
                    for e in adj[d]:
                        total += (degs[a] ** p * degs[b] ** q * degs[c] ** r
                                  * degs[d] ** s * degs[e] ** t)
    return total


def brute_count_homs(pattern: Pattern, g: Graph) -> int:
    """Enumerate all |V(g)|^|V(h)| maps and keep the edge-preserving ones."""
    nbr = [set(g.neighbors(v).tolist()) for v in range(g.vertex_count)]
    count = 0
    for assignment in itertools.product(range(g.vertex_count),
                                        repeat=pattern.vertex_count):
        if all(assignment[v] in nbr[assignment[u]] for u, v in pattern.edges):
            count += 1
    return count


def random_pmf(rng: random.Random, g: Graph) -> dict[tuple[int, int], float]:
    edges = [(u, int(v)) for u in range(g.vertex_count)
             for v in g.neighbors(u)]
    weights = [rng.random() for _ in edges]
    total = sum(weights)
    return {e: w / total for e, w in zip(edges, weights)}


def canonical_form(vertex_count: int, edges) -> tuple:
    """Minimum edge tuple over all vertex permutations (small graphs only)."""
    best = None
    for perm in itertools.permutations(range(vertex_count)):
        relabeled = tuple(sorted(
            (min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in edges
        ))
        if best is None or relabeled < best:
            best = relabeled
    return (vertex_count, best)
