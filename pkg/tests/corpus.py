"""Graph corpora for the test suite.

Connected graphs up to 7 vertices come from the networkx atlas.  For 8 and
9 vertices every connected graph is grown from the connected graphs one
vertex smaller (a connected graph always has a vertex whose removal keeps
it connected), deduplicated by nauty certificate, and cached as graph6.
"""
import os
import random
from functools import lru_cache

import networkx as nx

from resolvekit.graph import Graph

CACHE = os.path.join(os.path.dirname(__file__), ".corpus_cache")

# OEIS A001349
CONNECTED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117, 9: 261080}


def to_graph(h):
    h = nx.convert_node_labels_to_integers(h)
    return Graph(h.number_of_nodes(), h.edges())


@lru_cache(maxsize=None)
def _atlas():
    out = {}
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        if n >= 1 and nx.is_connected(h):
            out.setdefault(n, []).append(h)
    return out


def _grow(smaller, n):
    import pynauty

    seen = set()
    out = []
    for h in smaller:
        adj = {u: list(h.adj[u]) for u in h}
        for mask in range(1, 1 << (n - 1)):
            nb = [u for u in range(n - 1) if mask >> u & 1]
            d = {u: list(a) for u, a in adj.items()}
            d[n - 1] = nb
            cert = pynauty.certificate(pynauty.Graph(n, adjacency_dict=d))
            if cert not in seen:
                seen.add(cert)
                g2 = nx.Graph(h)
                g2.add_edges_from((n - 1, u) for u in nb)
                out.append(g2)
    return out


@lru_cache(maxsize=None)
def connected_nx(n):
    if n <= 7:
        return list(_atlas()[n])
    path = os.path.join(CACHE, f"connected{n}.g6")
    if os.path.exists(path):
        with open(path, "rb") as fh:
            return [nx.from_graph6_bytes(line.strip()) for line in fh if line.strip()]
    graphs = _grow(connected_nx(n - 1), n)
    os.makedirs(CACHE, exist_ok=True)
    tmp = path + ".tmp"
    with open(tmp, "wb") as fh:
        for h in graphs:
            fh.write(nx.to_graph6_bytes(h, header=False))
    os.replace(tmp, path)
    return graphs


def connected_graphs(n):
    return [to_graph(h) for h in connected_nx(n)]


def iter_connected(n):
    """Like connected_graphs but streamed from the cache without memoizing."""
    if n <= 7:
        yield from connected_graphs(n)
        return
    path = os.path.join(CACHE, f"connected{n}.g6")
    if not os.path.exists(path):
        connected_nx(n)
    with open(path, "rb") as fh:
        for line in fh:
            if line.strip():
                yield to_graph(nx.from_graph6_bytes(line.strip()))


def connected_upto(max_n, min_n=1):
    return [g for n in range(min_n, max_n + 1) for g in connected_graphs(n)]


def random_connected(rng, n, p=None):
    """Random connected graph: a random spanning tree plus G(n, p) edges."""
    p = rng.uniform(0.15, 0.7) if p is None else p
    perm = list(range(n))
    rng.shuffle(perm)
    edges = {(perm[i], perm[rng.randrange(i)]) for i in range(1, n)}
    edges |= {(u, v) for u in range(n) for v in range(u) if rng.random() < p}
    return Graph(n, edges)


def random_corpus(seed, count, sizes):
    rng = random.Random(seed)
    return [random_connected(rng, rng.choice(sizes)) for _ in range(count)]
