import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from corpus import connected_upto, random_connected
from resolvekit.graph import Graph, GraphError, complete_graph, cycle_graph, path_graph, star_graph
from resolvekit.oracles import brute_smd, is_strong_resolving_set
from resolvekit.smd import is_maximally_distant, mmd_pairs, smd_solve, strong_resolving_graph
from resolvekit.vc import exact_vc


def test_maximally_distant_examples():
    p3 = path_graph(3)
    assert is_maximally_distant(p3, None, 0, 2)
    assert not is_maximally_distant(p3, None, 1, 0)
    assert is_maximally_distant(cycle_graph(4), None, 0, 2)
    with pytest.raises(GraphError):
        is_maximally_distant(p3, None, 1, 1)


def test_srg_examples():
    assert strong_resolving_graph(path_graph(3)).edges() == [(0, 2)]
    assert strong_resolving_graph(star_graph(3)).edges() == [(1, 2), (1, 3), (2, 3)]
    assert strong_resolving_graph(cycle_graph(4)).edges() == [(0, 2), (1, 3)]


def test_srg_rejects():
    with pytest.raises(GraphError):
        strong_resolving_graph(Graph(2))
    with pytest.raises(GraphError):
        strong_resolving_graph(Graph(1))


def test_smd_solve_examples():
    for g, want in ((star_graph(3), 2), (path_graph(5), 1), (complete_graph(4), 3)):
        rep = smd_solve(g)
        assert rep.optimum == want == brute_smd(g).optimum
        assert is_strong_resolving_set(g, None, rep.witness)


def test_smd_solve_kernel_route():
    # K_{15,15}: large 2-approximate cover and big twin classes
    g = Graph(30, [(a, b) for a in range(15) for b in range(15, 30)])
    rep = smd_solve(g, threshold=4)
    assert rep.method == "smd-vc+kernel"
    assert rep.optimum == len(exact_vc(strong_resolving_graph(g)))
    assert is_strong_resolving_set(g, None, rep.witness)


def test_mmd_matches_definition():
    for g in connected_upto(6, min_n=2):
        for u, v in itertools.combinations(range(g.n), 2):
            both = is_maximally_distant(g, None, u, v) and is_maximally_distant(g, None, v, u)
            assert ((u, v) in set(mmd_pairs(g))) == both


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 12), st.integers(0, 10**6))
def test_pendants_clique_and_neighbors_isolated(n, seed):
    g = random_connected(random.Random(seed), n)
    sr = strong_resolving_graph(g)
    Z = [v for v in range(n) if g.degree(v) == 1]
    for a, b in itertools.combinations(Z, 2):
        assert sr.has_edge(a, b)
    for z in Z:
        for w in g.adj[z]:
            assert sr.degree(w) == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 12), st.integers(0, 10**6))
def test_mmd_symmetric(n, seed):
    g = random_connected(random.Random(seed), n)
    for u, v in mmd_pairs(g):
        assert u < v
        assert is_maximally_distant(g, None, u, v) and is_maximally_distant(g, None, v, u)


def test_smd_solve_matches_brute_small():
    for g in connected_upto(7):
        assert smd_solve(g).optimum == brute_smd(g).optimum
