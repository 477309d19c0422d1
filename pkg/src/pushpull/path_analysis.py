"""Degree-weighted path counting behind the spread-time tail bounds.

A path of length L is traversed by the rumour only if calls happen
along its edges in order; the chance of that is controlled by the
degree product Q(path).  Summing Q over all simple paths of a given
length, via a decomposition of the degree sequence into unimodal
segments, gives the closed-form bound these routines expose and the
tests certify.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import CapExceededError, OutOfRangeError, ParameterOutOfRangeError
from .graph import Graph

DEFAULT_WORK_CAP = 10**7


@dataclass(frozen=True)
class SimplePath:
    """A simple path as the tuple of its vertices, in traversal order."""

    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        """Number of edges."""
        return len(self.vertices) - 1


def make_simple_path(g: Graph, vertices: Sequence[int]) -> SimplePath:
    """Validate vertex distinctness and adjacency, then wrap."""
    vs = tuple(int(v) for v in vertices)
    if not vs:
        raise ParameterOutOfRangeError("a path needs at least one vertex")
    for v in vs:
        g.check_vertex(v)
    if len(set(vs)) != len(vs):
        raise ParameterOutOfRangeError(f"vertices repeat in {vs}")
    for a, b in zip(vs, vs[1:]):
        if not g.has_edge(a, b):
            raise OutOfRangeError(f"vertices {a} and {b} are not adjacent")
    return SimplePath(vs)


def degree_sequence(g: Graph, path: SimplePath) -> tuple[int, ...]:
    return tuple(int(g.degrees[v]) for v in path.vertices)


def enumerate_simple_paths(
    g: Graph, length: int, cap: int = DEFAULT_WORK_CAP
) -> Iterator[SimplePath]:
    """Yield every simple path with exactly ``length`` edges.

    A path and its reversal are distinct.  Raises CapExceededError as
    soon as more than ``cap`` paths would be produced; consumers never
    see a silently truncated enumeration.
    """
    if not 1 <= length < g.n:
        raise ParameterOutOfRangeError(
            f"path length must lie in 1..{g.n - 1}, got {length}"
        )
    on_path = bytearray(g.n)
    stack: list[int] = []
    produced = 0

    def extend(v: int, remaining: int) -> Iterator[SimplePath]:
        nonlocal produced
        stack.append(v)
        on_path[v] = 1
        if remaining == 0:
            produced += 1
            if produced > cap:
                raise CapExceededError(
                    f"more than {cap} simple paths of length {length}"
                )
            yield SimplePath(tuple(stack))
        else:
            for u in g.neighbors(v):
                if not on_path[u]:
                    yield from extend(int(u), remaining - 1)
        stack.pop()
        on_path[v] = 0

    for start in range(g.n):
        yield from extend(start, length)


def q_value(g: Graph, path: SimplePath) -> float:
    """Product over edges of 1 / min(deg of the two endpoints)."""
    degs = g.degrees
    q = 1.0
    for a, b in zip(path.vertices, path.vertices[1:]):
        q *= 1.0 / min(degs[a], degs[b])
    return q


@dataclass(frozen=True)
class SegmentType:
    """Segment of a degree sequence: centre index and edges either side."""

    center: int
    ell_minus: int
    ell_plus: int


@dataclass(frozen=True)
class SegmentDecomposition:
    segments: tuple[SegmentType, ...]
    has_plateau: bool


def segment_decompose(degrees: Sequence[int]) -> SegmentDecomposition:
    """Split a path's degree sequence into segments between local maxima.

    Within each segment the degrees strictly decrease to the unique
    local minimum (the centre) and then weakly increase.  Comparisons
    against positions outside the sequence hold by convention, so the
    first and last segments may have their centre at the boundary.
    ``has_plateau`` reports whether any two consecutive degrees are
    equal, the case where centres of equal-degree runs sit at the run's
    left end.
    """
    seq = [int(d) for d in degrees]
    last = len(seq) - 1
    if last < 0:
        raise ParameterOutOfRangeError("empty degree sequence")
    if last == 0:
        return SegmentDecomposition((), False)

    def is_max(i: int) -> bool:
        left = i == 0 or seq[i - 1] <= seq[i]
        right = i == last or seq[i] > seq[i + 1]
        return left and right

    def is_min(i: int) -> bool:
        left = i == 0 or seq[i - 1] > seq[i]
        right = i == last or seq[i] <= seq[i + 1]
        return left and right

    boundaries = sorted({0, last} | {i for i in range(last + 1) if is_max(i)})
    segments = []
    for a, b in zip(boundaries, boundaries[1:]):
        centres = [i for i in range(a, b + 1) if is_min(i)]
        if len(centres) != 1:
            raise AssertionError(
                f"segment {seq[a:b + 1]} lacks a unique local minimum"
            )
        c = centres[0]
        segments.append(SegmentType(center=c, ell_minus=c - a, ell_plus=b - c))
    plateau = any(x == y for x, y in zip(seq, seq[1:]))
    return SegmentDecomposition(tuple(segments), plateau)


def walk_sum(
    g: Graph, x: int, ell_minus: int, ell_plus: int, cap: int = DEFAULT_WORK_CAP
) -> float:
    """Sum, over walks with their ``ell_minus``-th vertex at x, of the
    degree-reciprocal product that dominates segment Q values.

    Each walk has ``ell_minus + ell_plus`` edges; the product collects
    1/deg of every vertex except the walk's two endpoints, counting the
    pivot x twice when both sides are nonempty.  The choices of
    neighbour cancel the reciprocals exactly, so the sum telescopes to
    1 whatever the graph or the type.
    """
    g.check_vertex(x)
    if ell_minus < 0 or ell_plus < 0:
        raise ParameterOutOfRangeError("walk half-lengths must be nonnegative")

    def side(steps: int) -> list[float]:
        # product over a walk from x of 1/deg of each vertex it leaves
        layer = [(x, 1.0)]
        count = 1
        for _ in range(steps):
            nxt = []
            for v, prod in layer:
                w = prod / g.degrees[v]
                for u in g.neighbors(v):
                    nxt.append((int(u), w))
            count = len(nxt)
            if count > cap:
                raise CapExceededError(f"more than {cap} walks on one side")
            layer = nxt
        return [p for _, p in layer]

    back = side(ell_minus)
    fwd = side(ell_plus)
    if len(back) * len(fwd) > cap:
        raise CapExceededError(f"more than {cap} walk combinations")
    return math.fsum(b * f for b in back for f in fwd)


@dataclass(frozen=True)
class QLengthSum:
    length: int
    num_paths: int
    q_sum: float
    bound: float

    @property
    def holds(self) -> bool:
        return self.q_sum <= self.bound


def sum_q_over_length(g: Graph, length: int, cap: int = DEFAULT_WORK_CAP) -> QLengthSum:
    """Sum Q over all simple paths of ``length`` edges, with its bound.

    The bound is (8 e n / L)^(L/2 + 1); the sum never exceeds it.
    """
    count = 0

    def values():
        nonlocal count
        for path in enumerate_simple_paths(g, length, cap):
            count += 1
            yield q_value(g, path)

    total = math.fsum(values())
    bound = (8.0 * math.e * g.n / length) ** (length / 2.0 + 1.0)
    return QLengthSum(length, count, total, bound)


def traversal_probability_bound(
    g: Graph, path: SimplePath, t: float
) -> tuple[float, float]:
    """Both forms of the bound on the rumour crossing ``path`` by time t.

    Returns ``(exact_form, dominating_form)``: the simplex-volume
    expression t^L/L! times the product of summed rate reciprocals, and
    its cleaner majorant (2 e t / L)^L * Q(path).  The first never
    exceeds the second for t > 0.
    """
    if t < 0:
        raise ParameterOutOfRangeError(f"time must be nonnegative, got {t}")
    L = path.length
    if L < 1:
        raise ParameterOutOfRangeError("path must have at least one edge")
    degs = g.degrees
    rate_prod = 1.0
    for a, b in zip(path.vertices, path.vertices[1:]):
        rate_prod *= 1.0 / degs[a] + 1.0 / degs[b]
    exact = t**L / math.factorial(L) * rate_prod
    dominating = (2.0 * math.e * t / L) ** L * q_value(g, path)
    return exact, dominating
