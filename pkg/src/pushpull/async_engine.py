"""Asynchronous push&pull via two independent constructions.

The event-driven engine gives every vertex a rate-1 Poisson clock; on
each ring the vertex calls a uniformly random neighbour and the rumour
crosses the call in whichever direction applies.  The percolation form
instead samples one exponential weight per ordered adjacent pair and
reads the spread time off shortest paths under the per-edge minimum of
the two directed weights.  Both are exact samplers of the same spread
time law, which the tests exploit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from heapq import heappop, heappush

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import dijkstra

from .errors import OutOfRangeError, RuntimeCapError
from .graph import Graph

DEFAULT_EVENT_CAP = 10**9


@dataclass
class AsyncOutcome:
    """Result of one asynchronous run.

    ``informed_time[v]`` is the clock time at which v learnt the rumour
    (0.0 for the start vertex); ``parent[v]`` is the vertex it learnt it
    from, -1 for the start vertex.
    """

    informed_time: np.ndarray
    parent: np.ndarray

    @property
    def spread_time(self) -> float:
        return float(self.informed_time.max())


class _DrawBuffer:
    """Chunked draws from a Generator, consumed one scalar at a time."""

    def __init__(self, rng: np.random.Generator, size: int = 4096):
        self._rng = rng
        self._size = size
        self._exp = rng.standard_exponential(size)
        self._uni = rng.random(size)
        self._i_exp = 0
        self._i_uni = 0

    def exponential(self) -> float:
        if self._i_exp == self._size:
            self._exp = self._rng.standard_exponential(self._size)
            self._i_exp = 0
        x = self._exp[self._i_exp]
        self._i_exp += 1
        return x

    def uniform(self) -> float:
        if self._i_uni == self._size:
            self._uni = self._rng.random(self._size)
            self._i_uni = 0
        x = self._uni[self._i_uni]
        self._i_uni += 1
        return x


def run_async_event_driven(
    g: Graph,
    s: int,
    rng: np.random.Generator,
    max_events: int = DEFAULT_EVENT_CAP,
) -> AsyncOutcome:
    """Simulate the asynchronous protocol event by event.

    Rings of uninformed vertices are real events too: such a vertex can
    pull the rumour in, and its clock keeps running either way.
    """
    s = g.check_vertex(s)
    n = g.n
    informed_time = np.full(n, np.inf)
    parent = np.full(n, -1, dtype=np.int64)
    informed_time[s] = 0.0
    if n == 1:
        return AsyncOutcome(informed_time, parent)

    indptr, indices, degrees = g.indptr, g.indices, g.degrees
    informed = np.zeros(n, dtype=bool)
    informed[s] = True
    draws = _DrawBuffer(rng, size=min(4096, max(64, 2 * n)))
    first = rng.standard_exponential(n)
    heap = [(first[v], v) for v in range(n)]
    heap.sort()
    count = 1
    events = 0
    while count < n:
        events += 1
        if events > max_events:
            raise RuntimeCapError(f"exceeded {max_events} events on n={n} graph")
        t, x = heappop(heap)
        heappush(heap, (t + draws.exponential(), x))
        y = indices[indptr[x] + int(draws.uniform() * degrees[x])]
        if informed[x]:
            if not informed[y]:
                informed[y] = True
                informed_time[y] = t
                parent[y] = x
                count += 1
        elif informed[y]:
            informed[x] = True
            informed_time[x] = t
            parent[x] = y
            count += 1
    return AsyncOutcome(informed_time, parent)


@dataclass
class DirectedEdgeWeights:
    """One positive weight per ordered adjacent pair, stored per CSR position."""

    graph: Graph
    y: np.ndarray
    _sym: np.ndarray | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.y = np.ascontiguousarray(self.y, dtype=np.float64)
        self.y.setflags(write=False)

    def value(self, u: int, v: int) -> float:
        return float(self.y[self.graph.edge_position(u, v)])

    def symmetric_min(self) -> np.ndarray:
        """Per-position minimum of the two directions, the travel weight."""
        if self._sym is None:
            sym = np.minimum(self.y, self.y[self.graph.reverse_positions])
            sym.setflags(write=False)
            self._sym = sym
        return self._sym

    @classmethod
    def from_pairs(cls, g: Graph, pairs: dict) -> "DirectedEdgeWeights":
        """Build weights from {(u, v): w}; both directions must be given."""
        y = np.full(g.num_positions, np.nan)
        for (u, v), w in pairs.items():
            if w <= 0:
                raise OutOfRangeError(f"weight for ({u}, {v}) must be positive")
            y[g.edge_position(u, v)] = w
        if np.isnan(y).any():
            raise OutOfRangeError("missing weight for some ordered pair")
        return cls(g, y)


def sample_edge_weights(g: Graph, rng: np.random.Generator) -> DirectedEdgeWeights:
    """Draw Y[u, v] ~ Exponential with mean deg(u), independently per pair."""
    u = rng.random(g.num_positions)
    y = -g.degrees[g.tails].astype(np.float64) * np.log1p(-u)
    return DirectedEdgeWeights(g, y)


def fpp_informed_times(g: Graph, s: int, weights: DirectedEdgeWeights) -> np.ndarray:
    """Shortest-path times from s under the symmetric-minimum weights."""
    s = g.check_vertex(s)
    if g.n == 1:
        return np.zeros(1)
    mat = sp.csr_matrix(
        (weights.symmetric_min(), g.indices, g.indptr), shape=(g.n, g.n)
    )
    return dijkstra(mat, indices=s)


def fpp_spread_time(g: Graph, s: int, weights: DirectedEdgeWeights) -> float:
    """max over v of the min over s-v paths of summed travel weights."""
    return float(fpp_informed_times(g, s, weights).max())


def fpp_spread_time_hop_limited(
    g: Graph, s: int, weights: DirectedEdgeWeights, hops: int
) -> float:
    """Like :func:`fpp_spread_time` but paths may use at most ``hops`` edges.

    Returns inf when some vertex is farther than ``hops`` away.  With
    ``hops >= n - 1`` the restriction is vacuous and the result equals
    the unrestricted spread time exactly.
    """
    s = g.check_vertex(s)
    if hops < 0:
        raise OutOfRangeError(f"hop budget must be nonnegative, got {hops}")
    if g.n == 1:
        return 0.0
    w = weights.symmetric_min()
    tails, heads = g.tails, g.indices
    dist = np.full(g.n, np.inf)
    dist[s] = 0.0
    for _ in range(hops):
        reach = np.isfinite(dist[tails])
        if not reach.any():
            break
        cand = dist[tails[reach]] + w[reach]
        nxt = dist.copy()
        np.minimum.at(nxt, heads[reach], cand)
        if (nxt == dist).all():
            break
        dist = nxt
    return float(dist.max())
