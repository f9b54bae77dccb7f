import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from corpus import connected_upto, random_connected
from resolvekit.graph import complete_graph, cycle_graph, path_graph, star_graph
from resolvekit.treedecomp import (TDError, TreeDecomposition, best_td, check_nice, exact_order,
                                   format_td, heuristic_td, load_td, make_nice, parse_td,
                                   td_from_order, validate_td)


def elimination_width(g, order):
    nb = [set(a) for a in g.adj]
    pos = {v: i for i, v in enumerate(order)}
    width = 0
    for v in order:
        later = {w for w in nb[v] if pos[w] > pos[v]}
        width = max(width, len(later))
        for a, b in itertools.combinations(later, 2):
            nb[a].add(b)
            nb[b].add(a)
    return width


def ref_treewidth(g):
    return min(elimination_width(g, p) for p in itertools.permutations(range(g.n)))


def test_validate_examples():
    p3 = path_graph(3)
    td = TreeDecomposition([(0, 1), (1, 2)], [(0, 1)])
    assert validate_td(p3, td) == (True, None) and td.width == 1
    ok, msg = validate_td(p3, TreeDecomposition([(0,), (2,)], [(0, 1)]))
    assert not ok and "vertex 1" in msg
    ok, msg = validate_td(p3, TreeDecomposition([(0, 1), (2,)], [(0, 1)]))
    assert not ok and "edge (1,2)" in msg
    k3 = TreeDecomposition([(0, 1, 2)], [])
    assert validate_td(complete_graph(3), k3)[0] and k3.width == 2


def test_validate_subtree_condition():
    p3 = path_graph(3)
    td = TreeDecomposition([(0, 1), (2,), (1, 2)], [(0, 1), (1, 2)])
    ok, msg = validate_td(p3, td)
    assert not ok and "not connected" in msg


def test_heuristic_examples():
    assert heuristic_td(star_graph(5)).width == 1
    assert heuristic_td(path_graph(7)).width == 1
    assert heuristic_td(complete_graph(5)).width == 4
    assert heuristic_td(cycle_graph(6)).width == 2


def test_make_nice_single_bag():
    ntd = make_nice(complete_graph(3), TreeDecomposition([(0, 1, 2)], []))
    assert [nd.kind for nd in ntd.nodes] == ["leaf", "introduce", "introduce"]
    assert ntd.nodes[ntd.root].bag == (0, 1, 2)


def test_make_nice_p3():
    g = path_graph(3)
    ntd = make_nice(g, TreeDecomposition([(0, 1), (1, 2)], [(0, 1)]))
    assert check_nice(g, ntd) == (True, None)
    assert any(nd.kind == "forget" for nd in ntd.nodes)
    assert not any(nd.kind == "join" for nd in ntd.nodes)


def test_make_nice_rejects_invalid():
    with pytest.raises(TDError):
        make_nice(path_graph(3), TreeDecomposition([(0,), (2,)], [(0, 1)]))


def test_exact_order_matches_permutation_search():
    for g in connected_upto(6):
        res = exact_order(g, max_width=g.n)
        assert res[0] == ref_treewidth(g)
        assert elimination_width(g, res[1]) == res[0]


def test_exact_order_width_cap():
    assert exact_order(complete_graph(5), max_width=3) is None


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 16), st.integers(0, 10**6))
def test_nice_form_properties(n, seed):
    g = random_connected(random.Random(seed), n)
    td = best_td(g)
    assert validate_td(g, td)[0]
    ntd = make_nice(g, td)
    assert check_nice(g, ntd) == (True, None)
    assert ntd.width == td.width
    assert len(ntd.nodes) <= 4 * (td.width + 1) * max(g.n, 1) + len(td.bags)
    for nd in ntd.nodes:
        kids = [ntd.nodes[c] for c in nd.children]
        if nd.kind == "join":
            assert nd.processed == kids[0].processed | kids[1].processed
        if nd.kind == "introduce":
            assert nd.processed - kids[0].processed == {nd.vertex}
        if nd.kind == "leaf":
            assert len(nd.bag) == 1 and nd.processed == set(nd.bag)
    # the root keeps its bag
    assert ntd.nodes[ntd.root].bag in [tuple(b) for b in td.bags]


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 8), st.integers(0, 10**6))
def test_heuristic_is_upper_bound(n, seed):
    g = random_connected(random.Random(seed), n)
    td = heuristic_td(g)
    assert validate_td(g, td)[0]
    assert td.width >= ref_treewidth(g)


def test_td_round_trip(tmp_path):
    rng = random.Random(3)
    for _ in range(3):
        g = random_connected(rng, rng.randint(4, 12))
        td = heuristic_td(g)
        path = tmp_path / "t.td"
        path.write_text(format_td(td, g.n))
        back = load_td(path)
        assert back.bags == td.bags and back.edges == td.edges
        assert format_td(back, g.n) == format_td(td, g.n)


def test_td_parse_errors():
    with pytest.raises(TDError, match="missing header"):
        parse_td("")
    with pytest.raises(TDError, match="line 2"):
        parse_td("s td 1 2 2\nb 1 1 3\n")
    with pytest.raises(TDError, match="line 3"):
        parse_td("s td 1 2 2\nb 1 1 2\n1 2\n")
    with pytest.raises(TDError, match="line 1"):
        parse_td("s td x 2 2\n")


def test_best_td_prefers_user_and_validates():
    g = path_graph(4)
    user = td_from_order(g, [3, 2, 1, 0])
    assert best_td(g, user) is user
    with pytest.raises(TDError):
        best_td(g, TreeDecomposition([(0, 1)], []))
