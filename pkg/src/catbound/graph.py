"""Symmetric binary relations backed by edge lists.

A relation R(A, B) is stored as a simple undirected graph viewed as a
symmetric directed edge set: every undirected edge {u, v} contributes the
two directed rows (u, v) and (v, u).  All degree statistics downstream are
computed against this symmetric view, so ``directed_edge_count`` is the
row count |R| and ``degree(v)`` is both the out- and in-degree of v.

Ingestion policy: input edges are symmetrized, self-loops are dropped and
duplicate edges are collapsed.  Vertex tokens may be arbitrary strings and
are interned to dense integer ids in first-seen order.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

__all__ = [
    "Graph",
    "GraphParseError",
    "load_edge_list",
    "degree_of",
    "dump_edge_list",
]

COMMENT_PREFIX = "#"


class GraphParseError(ValueError):
    """Malformed edge-list input; carries the 1-based line number."""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable symmetric relation in CSR-style adjacency form.

    ``indices[indptr[v]:indptr[v+1]]`` is the sorted neighbor list of v.
    ``edge_src``/``edge_dst`` enumerate all directed rows (u, v); they are
    what the linear-time statistic passes iterate over.
    """

    vertex_count: int
    directed_edge_count: int
    indptr: np.ndarray
    indices: np.ndarray
    degrees: np.ndarray
    labels: tuple[str, ...] | None = None
    _neighbor_sets: list | None = field(default=None, repr=False, compare=False)
    _edge_src: np.ndarray | None = field(default=None, repr=False, compare=False)

    @property
    def edge_src(self) -> np.ndarray:
        if self._edge_src is None:
            src = np.repeat(np.arange(self.vertex_count, dtype=np.int64), self.degrees)
            object.__setattr__(self, "_edge_src", src)
        return self._edge_src

    @property
    def edge_dst(self) -> np.ndarray:
        return self.indices

    def neighbors(self, v: int) -> np.ndarray:
        if not 0 <= v < self.vertex_count:
            raise ValueError(f"vertex id {v} out of range [0, {self.vertex_count})")
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def neighbor_sets(self) -> list[set[int]]:
        """Per-vertex neighbor sets, built once and cached (used by the
        homomorphism oracle's backtracking)."""
        if self._neighbor_sets is None:
            sets = [
                set(self.indices[self.indptr[v]:self.indptr[v + 1]].tolist())
                for v in range(self.vertex_count)
            ]
            object.__setattr__(self, "_neighbor_sets", sets)
        return self._neighbor_sets

    def undirected_edges(self) -> Iterator[tuple[int, int]]:
        """Yield each undirected edge once as (u, v) with u < v, sorted."""
        for u in range(self.vertex_count):
            for v in self.neighbors(u).tolist():
                if u < v:
                    yield (u, v)

    def label_of(self, v: int) -> str:
        if self.labels is not None:
            return self.labels[v]
        return str(v)

    def validate(self) -> None:
        """Check the structural invariants; raises AssertionError on breakage."""
        assert self.indptr.shape == (self.vertex_count + 1,)
        assert self.indptr[0] == 0 and self.indptr[-1] == self.directed_edge_count
        assert np.array_equal(np.diff(self.indptr), self.degrees)
        assert int(self.degrees.sum()) == self.directed_edge_count
        pairs = set()
        for u in range(self.vertex_count):
            nbrs = self.neighbors(u)
            assert np.all(np.diff(nbrs) > 0), f"adjacency of {u} not sorted/deduped"
            assert u not in nbrs, f"self-loop at {u}"
            pairs.update((u, int(v)) for v in nbrs)
        assert all((v, u) in pairs for (u, v) in pairs), "adjacency not symmetric"


def from_edge_pairs(
    pairs: Iterable[tuple[int, int]],
    vertex_count: int | None = None,
    labels: tuple[str, ...] | None = None,
) -> Graph:
    """Build a Graph from integer vertex pairs.

    Symmetrizes, drops self-loops and duplicates.  ``vertex_count`` may be
    given to keep trailing isolated vertices; otherwise it is 1 + max id.
    """
    arr = np.asarray(list(pairs) if not isinstance(pairs, np.ndarray) else pairs, dtype=np.int64)
    if arr.size == 0:
        n = int(vertex_count or 0)
        return Graph(
            vertex_count=n,
            directed_edge_count=0,
            indptr=np.zeros(n + 1, dtype=np.int64),
            indices=np.empty(0, dtype=np.int64),
            degrees=np.zeros(n, dtype=np.int64),
            labels=labels,
        )
    arr = arr.reshape(-1, 2)
    if arr.min() < 0:
        raise ValueError("negative vertex id")
    n = int(arr.max()) + 1
    if vertex_count is not None:
        if vertex_count < n:
            raise ValueError("vertex_count smaller than largest vertex id + 1")
        n = int(vertex_count)
    keep = arr[:, 0] != arr[:, 1]
    arr = arr[keep]
    # Encode both orientations and dedupe in one pass.
    both = np.concatenate([arr, arr[:, ::-1]])
    codes = both[:, 0] * np.int64(n) + both[:, 1]
    codes = np.unique(codes)
    src = codes // n
    dst = codes % n
    degrees = np.bincount(src, minlength=n).astype(np.int64)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(degrees, out=indptr[1:])
    # codes are sorted, so dst is already grouped by src and sorted within.
    return Graph(
        vertex_count=n,
        directed_edge_count=int(codes.size),
        indptr=indptr,
        indices=dst.astype(np.int64),
        degrees=degrees,
        labels=labels,
    )


def _iter_lines(source) -> Iterator[str]:
    if isinstance(source, (str, Path)):
        with open(source, "rb") as fh:
            yield from io.TextIOWrapper(fh, encoding="utf-8")
    elif isinstance(source, bytes):
        yield from io.StringIO(source.decode("utf-8"))
    elif hasattr(source, "read"):
        data = source.read()
        if isinstance(data, bytes):
            data = data.decode("utf-8")
        yield from io.StringIO(data)
    else:
        yield from source


def load_edge_list(source) -> Graph:
    """Parse a whitespace-separated edge list into a Graph.

    One edge per line as two tokens; ``#``-prefixed lines and blank lines
    are skipped.  Tokens are interned to dense integer ids in first-seen
    order.  Raises GraphParseError on lines with a token count other than 2.
    """
    intern: dict[str, int] = {}
    pairs: list[tuple[int, int]] = []
    for line_number, line in enumerate(_iter_lines(source), start=1):
        text = line.strip()
        if not text or text.startswith(COMMENT_PREFIX):
            continue
        tokens = text.split()
        if len(tokens) != 2:
            raise GraphParseError(
                f"expected 2 vertex tokens, found {len(tokens)}", line_number
            )
        ids = []
        for tok in tokens:
            idx = intern.get(tok)
            if idx is None:
                idx = len(intern)
                intern[tok] = idx
            ids.append(idx)
        pairs.append((ids[0], ids[1]))
    labels = tuple(intern)
    return from_edge_pairs(pairs, vertex_count=len(intern), labels=labels or None)


def degree_of(g: Graph, v: int) -> int:
    """Number of neighbors of v; raises ValueError for out-of-range ids."""
    if not 0 <= v < g.vertex_count:
        raise ValueError(f"vertex id {v} out of range [0, {g.vertex_count})")
    return int(g.degrees[v])


def dump_edge_list(g: Graph) -> str:
    """Canonical text form: one 'v v' anchor line per vertex in id order,
    then one 'u v' line per undirected edge with u < v, sorted.

    The anchor lines pin the token-interning order and keep isolated
    vertices, so reloading a dump reproduces the Graph exactly (the loader
    drops them as self-loops after interning).
    """
    lines = [f"{v} {v}" for v in range(g.vertex_count)]
    for u in range(g.vertex_count):
        for v in g.neighbors(u).tolist():
            if u < v:
                lines.append(f"{u} {v}")
    return "\n".join(lines) + ("\n" if lines else "")
