"""Synchronous push&pull via two independent constructions.

The round-based engine plays the protocol definition directly: in each
round every vertex calls a uniformly random neighbour, and the informed
set computed from the round-start state is applied at the round's end,
so a vertex informed in round r first acts in round r+1.

The clock-based engine drives the same rounds off a bank of per-pair
clocks: each ordered adjacent pair (u, v) owns a clock that starts when
u or v first learns the rumour, and in every round u advances all of
its running clocks by one exponential tick of local time until exactly
one of them rings, the ring belonging to the neighbour u calls.  Per
round this is one exponential local-time increment and one uniform
winner per vertex, which compounds the per-pair geometric ring counts
and exponential waiting times the coupling analysis wants; the engine
records both per pair.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import dijkstra

from . import _round_kernel
from .errors import RuntimeCapError
from .graph import Graph

DEFAULT_ROUND_CAP = 10**9


@dataclass
class SyncOutcome:
    """Result of one synchronous run.

    ``informed_round[v]`` is the round at which v learnt the rumour (0
    for the start vertex); ``parent[v]`` the vertex it learnt it from,
    -1 for the start vertex.
    """

    informed_round: np.ndarray
    parent: np.ndarray

    @property
    def spread_time(self) -> int:
        return int(self.informed_round.max())


@dataclass
class CouplingTrace:
    """Per-ordered-pair clock records from a clock-based run.

    For each CSR position p holding the pair (u, v): ``q[p]`` is the
    round at which the pair's clock started (the first round by whose
    end u or v was informed; 0 for pairs at the start vertex), ``T[p]``
    the number of rounds strictly after that until u next calls v, and
    ``X[p]`` the local time u spent over those rounds.
    """

    graph: Graph
    q: np.ndarray
    T: np.ndarray
    X: np.ndarray

    def t(self, u: int, v: int) -> int:
        return int(self.T[self.graph.edge_position(u, v)])

    def x(self, u: int, v: int) -> float:
        return float(self.X[self.graph.edge_position(u, v)])


def run_sync_round_based(
    g: Graph,
    s: int,
    rng: np.random.Generator,
    max_rounds: int = DEFAULT_ROUND_CAP,
) -> SyncOutcome:
    """Simulate the synchronous protocol round by round."""
    s = g.check_vertex(s)
    seed = int(rng.integers(0, 2**32))
    informed_round, parent, spread = _round_kernel.simulate(
        g.indptr, g.indices, g.degrees, s, seed, max_rounds
    )
    if spread < 0:
        raise RuntimeCapError(f"exceeded {max_rounds} rounds on n={g.n} graph")
    return SyncOutcome(informed_round, parent)


def run_sync_clock_based(
    g: Graph,
    s: int,
    rng: np.random.Generator,
    record_trace: bool = True,
    max_rounds: int = DEFAULT_ROUND_CAP,
) -> tuple[SyncOutcome, CouplingTrace | None]:
    """Simulate synchronous rounds from the per-pair clock bank.

    With ``record_trace`` the run continues past full informedness
    until every started clock has rung once, so that every pair carries
    a (T, X) record; the spread time is unaffected.
    """
    s = g.check_vertex(s)
    n = g.n
    indptr, indices, degrees = g.indptr, g.indices, g.degrees
    rev = g.reverse_positions
    npos = g.num_positions
    vertex_ids = np.arange(n)

    informed = np.zeros(n, dtype=bool)
    informed_round = np.full(n, -1, dtype=np.int64)
    parent = np.full(n, -1, dtype=np.int64)
    informed[s] = True
    informed_round[s] = 0

    local_time = np.zeros(n)
    q = np.full(npos, -1, dtype=np.int64)
    alpha = np.zeros(npos)
    T = np.zeros(npos, dtype=np.int64)
    X = np.zeros(npos)
    running = np.zeros(npos, dtype=bool)
    pending = 0

    def start_clocks(v: int, r: int):
        nonlocal pending
        for p in range(indptr[v], indptr[v + 1]):
            for pos in (p, rev[p]):
                if not running[pos]:
                    running[pos] = True
                    q[pos] = r
                    alpha[pos] = local_time[g.tails[pos]]
                    pending += 1

    start_clocks(s, 0)
    count = 1
    r = 0
    spread = 0 if n == 1 else None
    while count < n or (record_trace and pending > 0):
        r += 1
        if r > max_rounds:
            raise RuntimeCapError(f"exceeded {max_rounds} rounds on n={g.n} graph")
        local_time += rng.standard_exponential(n)
        winner_pos = indptr[:-1] + (rng.random(n) * degrees).astype(np.int64)
        calls = indices[winner_pos]

        if record_trace and pending > 0:
            hit = running[winner_pos] & (T[winner_pos] == 0)
            pos_hit = winner_pos[hit]
            T[pos_hit] = r - q[pos_hit]
            X[pos_hit] = local_time[hit] - alpha[pos_hit]
            pending -= int(hit.sum())

        pushes = informed & ~informed[calls]
        pulls = ~informed & informed[calls]
        marked: list[int] = []
        for x in np.flatnonzero(pulls):
            if informed_round[x] < 0:
                informed_round[x] = r
                parent[x] = calls[x]
                marked.append(int(x))
        for x in np.flatnonzero(pushes):
            y = calls[x]
            if informed_round[y] < 0:
                informed_round[y] = r
                parent[y] = int(x)
                marked.append(int(y))
        for v in marked:
            informed[v] = True
            count += 1
            start_clocks(v, r)
        if count == n and spread is None:
            spread = r

    outcome = SyncOutcome(informed_round, parent)
    if not record_trace:
        return outcome, None
    assert (T >= 1).all() and (X > 0).all() and (q >= 0).all()
    return outcome, CouplingTrace(g, q, T, X)


def check_T_X_coupling(trace: CouplingTrace, c_log: float, c_x: float, n: int) -> bool:
    """Does T <= c_log * log(n) + c_x * X hold for every recorded pair?"""
    bound = c_log * np.log(n) + c_x * trace.X
    return bool((trace.T <= bound).all())


def check_S_maxmin_bound(g: Graph, s: int, outcome: SyncOutcome, trace: CouplingTrace) -> bool:
    """Pathwise spread-time certificate from the clock records.

    The spread time never exceeds the largest, over target vertices, of
    the cheapest path from s when each edge costs the smaller of its two
    directed ring counts.
    """
    s = g.check_vertex(s)
    if g.n == 1:
        return outcome.spread_time == 0
    wmin = np.minimum(trace.T, trace.T[g.reverse_positions]).astype(np.float64)
    mat = sp.csr_matrix((wmin, g.indices, g.indptr), shape=(g.n, g.n))
    dist = dijkstra(mat, indices=s)
    return bool(outcome.spread_time <= dist.max())
