from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pushpull import graph
from pushpull.errors import (
    DisconnectedError,
    DuplicateEdgeError,
    OutOfRangeError,
    ParameterOutOfRangeError,
    SelfLoopError,
)


def validate_graph(g: graph.Graph):
    """Check the structural invariants every constructor must deliver."""
    assert g.indptr.shape == (g.n + 1,)
    assert g.indptr[0] == 0 and g.indptr[-1] == g.indices.shape[0]
    assert g.indices.shape[0] == 2 * g.num_edges
    for u in range(g.n):
        nbrs = g.neighbors(u)
        assert (np.diff(nbrs) > 0).all(), "neighbour lists sorted, no duplicates"
        assert u not in nbrs, "no self loops"
        for v in nbrs:
            assert u in g.neighbors(v), "adjacency symmetric"
    if g.n > 1:
        assert (graph.bfs_distances(g, 0) >= 0).all(), "connected"
    rev = g.reverse_positions
    tails = g.tails
    assert (tails[rev] == g.indices).all()
    assert (g.indices[rev] == tails).all()
    assert (rev[rev] == np.arange(g.num_positions)).all()


def test_build_k2():
    g = graph.build_from_edge_list(2, [(0, 1)])
    assert g.n == 2 and g.num_edges == 1
    assert g.degrees.tolist() == [1, 1]
    validate_graph(g)


def test_build_rejects_duplicate_edge():
    with pytest.raises(DuplicateEdgeError):
        graph.build_from_edge_list(3, [(0, 1), (1, 2), (1, 0)])


def test_build_rejects_self_loop():
    with pytest.raises(SelfLoopError):
        graph.build_from_edge_list(2, [(0, 1), (1, 1)])


def test_build_rejects_out_of_range():
    with pytest.raises(OutOfRangeError):
        graph.build_from_edge_list(2, [(0, 2)])
    with pytest.raises(OutOfRangeError):
        graph.build_from_edge_list(2, [(-1, 0)])


def test_build_rejects_disconnected():
    with pytest.raises(DisconnectedError):
        graph.build_from_edge_list(4, [(0, 1), (2, 3)])


def test_build_single_vertex():
    g = graph.build_from_edge_list(1, [])
    assert g.n == 1 and g.num_edges == 0


def test_arrays_read_only():
    g = graph.cycle_graph(5)
    for arr in (g.indptr, g.indices, g.degrees, g.tails, g.reverse_positions):
        with pytest.raises(ValueError):
            arr[0] = 99


def test_diamonds_worked_example():
    g = graph.string_of_diamonds(3, 4, 5)
    assert g.n == 21
    assert g.num_edges == 29
    validate_graph(g)


def test_diamonds_single_is_four_cycle():
    g = graph.string_of_diamonds(1, 2, 0)
    assert g.n == 4 and g.num_edges == 4
    assert g.degrees.tolist() == [2, 2, 2, 2]


def test_diamonds_with_leaf_degrees():
    g = graph.string_of_diamonds(2, 2, 3)
    assert g.n == 10 and g.num_edges == 11
    # the last hub carries its k diamond edges plus all l leaves
    assert g.degrees[2] == 2 + 3
    assert g.degrees[0] == 2 and g.degrees[1] == 4
    assert (g.degrees[-3:] == 1).all()
    for leaf in (7, 8, 9):
        assert g.has_edge(2, leaf)


def test_diamonds_count_sweep():
    for m in range(1, 7):
        for k in range(2, 7):
            for l in range(0, 5):
                g = graph.string_of_diamonds(m, k, l)
                assert g.n == m * (k + 1) + l + 1
                assert g.num_edges == 2 * k * m + l
                assert (g.degrees >= 1).all()


def test_diamonds_structure_spot_check():
    validate_graph(graph.string_of_diamonds(2, 5, 3))
    validate_graph(graph.string_of_diamonds(4, 2, 1))


def test_diamonds_rejects_bad_parameters():
    with pytest.raises(ParameterOutOfRangeError):
        graph.string_of_diamonds(0, 2, 0)
    with pytest.raises(ParameterOutOfRangeError):
        graph.string_of_diamonds(1, 1, 0)
    with pytest.raises(ParameterOutOfRangeError):
        graph.string_of_diamonds(1, 2, -1)


def test_generator_zoo():
    s = graph.star(6)
    assert s.degrees.tolist() == [5, 1, 1, 1, 1, 1]
    p = graph.path_graph(4)
    assert p.degrees.tolist() == [1, 2, 2, 1]
    c = graph.cycle_graph(5)
    assert (c.degrees == 2).all()
    k = graph.complete_graph(4)
    assert (k.degrees == 3).all() and k.num_edges == 6
    for g in (s, p, c, k):
        validate_graph(g)
    with pytest.raises(ParameterOutOfRangeError):
        graph.star(1)
    with pytest.raises(ParameterOutOfRangeError):
        graph.cycle_graph(2)


def test_bfs_distances_diamonds():
    g = graph.string_of_diamonds(3, 4, 0)
    dist = graph.bfs_distances(g, 0)
    # hubs sit at even distances 0, 2, 4, 6 from the first hub
    for i in range(4):
        assert dist[i] == 2 * i
    assert dist.max() == 6


def test_bfs_distances_star_and_path():
    g = graph.star(7)
    assert graph.bfs_distances(g, 0).max() == 1
    assert graph.bfs_distances(g, 3).max() == 2
    p = graph.path_graph(5)
    assert graph.bfs_distances(p, 0).tolist() == [0, 1, 2, 3, 4]


def test_edge_position_and_reverse():
    g = graph.string_of_diamonds(2, 3, 1)
    p = g.edge_position(0, 3)
    assert g.tails[p] == 0 and g.indices[p] == 3
    q = g.reverse_positions[p]
    assert g.tails[q] == 3 and g.indices[q] == 0
    with pytest.raises(OutOfRangeError):
        g.edge_position(0, 1)  # hubs are never adjacent


def test_edge_list_roundtrip(tmp_path):
    g = graph.string_of_diamonds(2, 3, 2)
    path = tmp_path / "g.txt"
    graph.write_edge_list(g, path)
    h = graph.read_edge_list(path)
    assert h.n == g.n
    assert (h.indptr == g.indptr).all()
    assert (h.indices == g.indices).all()


def test_edge_list_parse_errors(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("3 2\n0 1\n1 two\n")
    with pytest.raises(ValueError, match="line 3"):
        graph.read_edge_list(bad)
    short = tmp_path / "short.txt"
    short.write_text("3 2\n0 1\n")
    with pytest.raises(ValueError, match="promises 2 edges"):
        graph.read_edge_list(short)
    empty = tmp_path / "empty.txt"
    empty.write_text("# nothing\n")
    with pytest.raises(ValueError, match="header"):
        graph.read_edge_list(empty)


def test_edge_list_comments_and_blanks(tmp_path):
    f = tmp_path / "g.txt"
    f.write_text("# a triangle\n3 3\n\n0 1  # first\n1 2\n0 2\n")
    g = graph.read_edge_list(f)
    assert g.n == 3 and g.num_edges == 3


@st.composite
def connected_edge_sets(draw):
    """Random connected simple graphs: a random tree plus extra edges."""
    n = draw(st.integers(min_value=2, max_value=12))
    edges = set()
    for v in range(1, n):
        u = draw(st.integers(min_value=0, max_value=v - 1))
        edges.add((u, v))
    extra = draw(
        st.lists(
            st.tuples(
                st.integers(min_value=0, max_value=n - 1),
                st.integers(min_value=0, max_value=n - 1),
            ),
            max_size=10,
        )
    )
    for u, v in extra:
        if u != v:
            edges.add((min(u, v), max(u, v)))
    return n, sorted(edges)


@given(connected_edge_sets())
def test_builder_invariants_on_random_graphs(case):
    n, edges = case
    g = graph.build_from_edge_list(n, edges)
    assert g.n == n and g.num_edges == len(edges)
    validate_graph(g)
    assert sorted(map(tuple, g.edges().tolist())) == edges


@given(connected_edge_sets(), st.data())
def test_bfs_matches_dijkstra_on_unit_weights(case, data):
    n, edges = case
    g = graph.build_from_edge_list(n, edges)
    s = data.draw(st.integers(min_value=0, max_value=n - 1))
    dist = graph.bfs_distances(g, s)
    import scipy.sparse as sp
    import scipy.sparse.csgraph as csgraph

    mat = sp.csr_matrix(
        (np.ones(g.num_positions), g.indices, g.indptr), shape=(n, n)
    )
    ref = csgraph.dijkstra(mat, indices=s)
    assert (dist == ref.astype(np.int64)).all()
