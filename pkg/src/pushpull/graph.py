"""Immutable undirected graphs in CSR form, plus the generators used here.

Vertices are dense integers ``0..n-1``.  Graphs are simple (no self loops,
no parallel edges), undirected and connected; every constructor enforces
this.  The CSR layout keeps per-trial sampling cheap and lets the arrays
be shared, read-only, across many simulation trials.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    DisconnectedError,
    DuplicateEdgeError,
    OutOfRangeError,
    ParameterOutOfRangeError,
    SelfLoopError,
)


class Graph:
    """Simple connected undirected graph.

    ``indices[indptr[u]:indptr[u+1]]`` is the sorted neighbour list of
    ``u``.  Every undirected edge occupies two positions in ``indices``,
    one per direction; several routines index per-direction data by that
    position.  Instances are immutable and the backing arrays are marked
    read-only.
    """

    __slots__ = ("n", "indptr", "indices", "degrees", "_tails", "_rev")

    def __init__(self, n: int, indptr: np.ndarray, indices: np.ndarray):
        self.n = int(n)
        self.indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        self.indices = np.ascontiguousarray(indices, dtype=np.int64)
        self.degrees = np.diff(self.indptr)
        for arr in (self.indptr, self.indices, self.degrees):
            arr.setflags(write=False)
        self._tails = None
        self._rev = None

    @property
    def num_edges(self) -> int:
        return self.indices.shape[0] // 2

    @property
    def num_positions(self) -> int:
        """Number of directed adjacency positions (twice the edge count)."""
        return self.indices.shape[0]

    def neighbors(self, u: int) -> np.ndarray:
        return self.indices[self.indptr[u] : self.indptr[u + 1]]

    def adjacency_lists(self) -> list[list[int]]:
        return [self.neighbors(u).tolist() for u in range(self.n)]

    @property
    def tails(self) -> np.ndarray:
        """tails[p] is the vertex whose row contains position p."""
        if self._tails is None:
            t = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
            t.setflags(write=False)
            self._tails = t
        return self._tails

    @property
    def reverse_positions(self) -> np.ndarray:
        """Position of (v, u) for each position holding (u, v)."""
        if self._rev is None:
            keys = self.tails * self.n + self.indices
            rev = np.searchsorted(keys, self.indices * self.n + self.tails)
            rev = rev.astype(np.int64)
            rev.setflags(write=False)
            self._rev = rev
        return self._rev

    def edge_position(self, u: int, v: int) -> int:
        """Position of the directed pair (u, v); raises if not adjacent."""
        lo, hi = self.indptr[u], self.indptr[u + 1]
        p = lo + np.searchsorted(self.indices[lo:hi], v)
        if p == hi or self.indices[p] != v:
            raise OutOfRangeError(f"vertices {u} and {v} are not adjacent")
        return int(p)

    def has_edge(self, u: int, v: int) -> bool:
        lo, hi = self.indptr[u], self.indptr[u + 1]
        p = lo + np.searchsorted(self.indices[lo:hi], v)
        return bool(p < hi and self.indices[p] == v)

    def edges(self) -> np.ndarray:
        """Array of shape (num_edges, 2) with each edge listed once, u < v."""
        mask = self.tails < self.indices
        return np.column_stack((self.tails[mask], self.indices[mask]))

    def check_vertex(self, u: int) -> int:
        u = int(u)
        if not 0 <= u < self.n:
            raise OutOfRangeError(f"vertex {u} outside 0..{self.n - 1}")
        return u

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"


def build_from_edge_list(n: int, edges) -> Graph:
    """Build a graph from an iterable of (u, v) pairs.

    Validates endpoint range, self loops, duplicate edges (in either
    orientation) and connectivity; raises the matching error otherwise.
    """
    n = int(n)
    if n < 1:
        raise ParameterOutOfRangeError(f"need at least one vertex, got n={n}")
    arr = np.asarray(list(edges), dtype=np.int64)
    if arr.size == 0:
        arr = arr.reshape(0, 2)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("edges must be pairs of vertex ids")
    if arr.size and (arr.min() < 0 or arr.max() >= n):
        bad = arr[((arr < 0) | (arr >= n)).any(axis=1)][0]
        raise OutOfRangeError(f"edge {tuple(bad)} has endpoint outside 0..{n - 1}")
    if arr.size and (arr[:, 0] == arr[:, 1]).any():
        v = arr[arr[:, 0] == arr[:, 1]][0, 0]
        raise SelfLoopError(f"self loop at vertex {v}")
    canon = np.sort(arr, axis=1)
    order = np.lexsort((canon[:, 1], canon[:, 0]))
    canon = canon[order]
    if len(canon) > 1:
        dup = (canon[1:] == canon[:-1]).all(axis=1)
        if dup.any():
            u, v = canon[1:][dup][0]
            raise DuplicateEdgeError(f"edge ({u}, {v}) listed more than once")

    tails = np.concatenate((arr[:, 0], arr[:, 1]))
    heads = np.concatenate((arr[:, 1], arr[:, 0]))
    order = np.lexsort((heads, tails))
    indices = heads[order]
    counts = np.bincount(tails, minlength=n)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    g = Graph(n, indptr, indices)

    dist = bfs_distances(g, 0)
    if (dist < 0).any():
        v = int(np.flatnonzero(dist < 0)[0])
        raise DisconnectedError(f"vertex {v} not reachable from vertex 0")
    return g


def bfs_distances(g: Graph, s: int) -> np.ndarray:
    """Hop distances from s; -1 marks unreachable vertices."""
    s = g.check_vertex(s)
    dist = np.full(g.n, -1, dtype=np.int64)
    dist[s] = 0
    frontier = np.array([s], dtype=np.int64)
    d = 0
    while frontier.size:
        d += 1
        starts = g.indptr[frontier]
        lengths = g.degrees[frontier]
        take = np.repeat(starts + lengths - lengths.cumsum(), lengths) + np.arange(
            lengths.sum()
        )
        nbrs = g.indices[take]
        nbrs = nbrs[dist[nbrs] < 0]
        if nbrs.size == 0:
            break
        frontier = np.unique(nbrs)
        dist[frontier] = d
    return dist


def string_of_diamonds(m: int, k: int, l: int) -> Graph:
    """String of m diamonds of width k with l pendant leaves on the last hub.

    Hub vertices ``0..m`` come first; each consecutive hub pair is joined
    through k internally disjoint two-edge paths whose middle vertices
    follow, grouped diamond by diamond; the l leaves hang directly off
    hub m and come last.  Total: ``m*(k+1) + l + 1`` vertices,
    ``2*k*m + l`` edges.
    """
    m, k, l = int(m), int(k), int(l)
    if m < 1:
        raise ParameterOutOfRangeError(f"need m >= 1 diamonds, got {m}")
    if k < 2:
        raise ParameterOutOfRangeError(f"need width k >= 2, got {k}")
    if l < 0:
        raise ParameterOutOfRangeError(f"need leaf count l >= 0, got {l}")
    hub = np.repeat(np.arange(m, dtype=np.int64), k)
    mids = m + 1 + np.arange(m * k, dtype=np.int64)
    left = np.column_stack((hub, mids))
    right = np.column_stack((mids, hub + 1))
    parts = [left, right]
    if l > 0:
        leaves = m + 1 + m * k + np.arange(l, dtype=np.int64)
        parts.append(np.column_stack((np.full(l, m, dtype=np.int64), leaves)))
    edges = np.concatenate(parts)
    return build_from_edge_list(m * (k + 1) + l + 1, edges)


def star(n: int) -> Graph:
    """Star on n vertices; vertex 0 is the centre."""
    n = int(n)
    if n < 2:
        raise ParameterOutOfRangeError(f"star needs n >= 2, got {n}")
    leaves = np.arange(1, n, dtype=np.int64)
    return build_from_edge_list(n, np.column_stack((np.zeros(n - 1, np.int64), leaves)))


def path_graph(n: int) -> Graph:
    n = int(n)
    if n < 2:
        raise ParameterOutOfRangeError(f"path needs n >= 2, got {n}")
    v = np.arange(n, dtype=np.int64)
    return build_from_edge_list(n, np.column_stack((v[:-1], v[1:])))


def cycle_graph(n: int) -> Graph:
    n = int(n)
    if n < 3:
        raise ParameterOutOfRangeError(f"cycle needs n >= 3, got {n}")
    v = np.arange(n, dtype=np.int64)
    return build_from_edge_list(n, np.column_stack((v, np.roll(v, -1))))


def complete_graph(n: int) -> Graph:
    n = int(n)
    if n < 2:
        raise ParameterOutOfRangeError(f"complete graph needs n >= 2, got {n}")
    u, v = np.triu_indices(n, k=1)
    return build_from_edge_list(n, np.column_stack((u, v)).astype(np.int64))


def write_edge_list(g: Graph, path) -> None:
    """Write the plain text edge-list format: 'n m' then one 'u v' per line."""
    with open(path, "w") as fh:
        fh.write(f"{g.n} {g.num_edges}\n")
        for u, v in g.edges():
            fh.write(f"{u} {v}\n")


def read_edge_list(path) -> Graph:
    """Parse the edge-list format written by :func:`write_edge_list`.

    Blank lines and lines starting with '#' are ignored.  Raises
    ValueError with a line number on malformed input, and the usual
    graph errors on invalid edge sets.
    """
    rows = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"{path}: line {lineno}: expected two integers")
            try:
                rows.append((int(parts[0]), int(parts[1])))
            except ValueError:
                raise ValueError(
                    f"{path}: line {lineno}: expected two integers"
                ) from None
    if not rows:
        raise ValueError(f"{path}: missing 'n m' header line")
    n, m = rows[0]
    edges = rows[1:]
    if len(edges) != m:
        raise ValueError(f"{path}: header promises {m} edges, found {len(edges)}")
    return build_from_edge_list(n, edges)
