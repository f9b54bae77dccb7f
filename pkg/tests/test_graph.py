import itertools

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from resolvekit.graph import (Graph, GraphError, INF, complete_graph, cycle_graph, diameter,
                              format_pace_gr, is_connected, parse_graph, path_graph, star_graph,
                              simplicial_vertices, twin_classes)
from resolvekit.graph import INF as SENTINEL


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [e for e, keep in zip(pairs, mask) if keep])


def test_p3_distances():
    dm = path_graph(3).dm
    assert dm[0, 2] == 2 and dm.diameter == 2


def test_k4_distances():
    dm = complete_graph(4).dm
    assert all(dm[u, v] == 1 for u in range(4) for v in range(4) if u != v)
    assert dm.diameter == 1


def test_disconnected_sentinel():
    dm = Graph(4, [(0, 1), (2, 3)]).dm
    assert dm[0, 2] == SENTINEL == INF
    with pytest.raises(GraphError, match="infinite diameter"):
        diameter(dm)


def test_is_connected_examples():
    assert is_connected(path_graph(4))
    assert not is_connected(Graph(2))
    assert is_connected(cycle_graph(6))


def test_twin_classes_star():
    false_cls, true_cls = twin_classes(star_graph(3))
    assert [1, 2, 3] in false_cls
    assert all(len(c) == 1 for c in true_cls)


def test_twin_classes_triangle():
    _, true_cls = twin_classes(complete_graph(3))
    assert true_cls == [[0, 1, 2]]


def test_twin_classes_p4_singletons():
    # DERIVED: compare every pair of neighborhoods directly
    g = path_graph(4)
    for u, v in itertools.combinations(range(4), 2):
        assert set(g.adj[u]) != set(g.adj[v])
        assert set(g.adj[u]) | {u} != set(g.adj[v]) | {v}
    false_cls, true_cls = twin_classes(g)
    assert all(len(c) == 1 for c in false_cls + true_cls)


def test_simplicial_examples():
    assert simplicial_vertices(path_graph(4)) == [0, 3]
    assert simplicial_vertices(cycle_graph(4)) == []
    assert simplicial_vertices(complete_graph(4)) == [0, 1, 2, 3]


def test_diameter_examples():
    assert cycle_graph(6).dm.diameter == 3
    assert complete_graph(4).dm.diameter == 1
    assert path_graph(5).dm.diameter == 4


def test_rejects_self_loop_and_range():
    with pytest.raises(GraphError):
        Graph(2, [(0, 0)])
    with pytest.raises(GraphError):
        Graph(2, [(0, 2)])


def test_parallel_edges_merge():
    g = Graph(2, [(0, 1), (1, 0)])
    assert g.edge_count == 1 and g.adj == ((1,), (0,))


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=50))
def test_bfs_matches_floyd_warshall(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    fw = nx.floyd_warshall(h)
    rows = g.dm.rows
    for u in range(g.n):
        for v in range(g.n):
            want = fw[u][v]
            assert rows[u][v] == (INF if want == float("inf") else want)


@settings(max_examples=100, deadline=None)
@given(graphs())
def test_distance_matrix_axioms(g):
    rows = g.dm.rows
    for u in range(g.n):
        assert rows[u][u] == 0
        for v in range(g.n):
            assert rows[u][v] == rows[v][u]
            assert (rows[u][v] == 1) == g.has_edge(u, v)
    finite = [(u, v) for u in range(g.n) for v in range(g.n) if rows[u][v] != INF]
    for (u, v), w in itertools.product(finite, range(g.n)):
        if rows[v][w] != INF:
            assert rows[u][w] <= rows[u][v] + rows[v][w]


@settings(max_examples=100, deadline=None)
@given(graphs())
def test_adjacency_canonical(g):
    for u in range(g.n):
        assert list(g.adj[u]) == sorted(set(g.adj[u]))
        assert u not in g.adj[u]
        for v in g.adj[u]:
            assert u in g.adj[v]


@settings(max_examples=100, deadline=None)
@given(graphs())
def test_twins_have_equal_distances(g):
    rows = g.dm.rows
    false_cls, true_cls = twin_classes(g)
    for cls in false_cls + true_cls:
        for u, v in itertools.combinations(cls, 2):
            for w in range(g.n):
                if w not in (u, v):
                    assert rows[u][w] == rows[v][w]


@settings(max_examples=100, deadline=None)
@given(graphs())
def test_twin_classes_partition(g):
    for classes, closed in zip(twin_classes(g), (False, True)):
        assert sorted(v for c in classes for v in c) == list(range(g.n))
        for c in classes:
            key = {frozenset(g.adj[u]) | ({u} if closed else set()) for u in c}
            assert len(key) == 1


@settings(max_examples=100, deadline=None)
@given(graphs())
def test_simplicial_contains_pendants(g):
    simp = set(simplicial_vertices(g))
    assert {v for v in range(g.n) if g.degree(v) == 1} <= simp
    for v in range(g.n):
        nb = g.adj[v]
        clique = all(g.has_edge(a, b) for a, b in itertools.combinations(nb, 2))
        assert (v in simp) == clique


@settings(max_examples=50, deadline=None)
@given(graphs())
def test_gr_round_trip(g):
    text = format_pace_gr(g)
    assert parse_graph(text) == g
    assert format_pace_gr(parse_graph("c comment\n" + text.replace(" ", "   "))) == text


def test_parse_dimacs_edge_format():
    g = parse_graph("c x\np edge 3 2\ne 1 2\ne 2 3\n")
    assert g == path_graph(3)


def test_parse_errors_carry_line_numbers():
    with pytest.raises(GraphError, match="line 2"):
        parse_graph("p tw 2 1\n1 3\n")
    with pytest.raises(GraphError, match="missing header"):
        parse_graph("")
