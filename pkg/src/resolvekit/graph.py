"""Undirected simple graphs, all-pairs hop distances and twin structure."""
from functools import cached_property

import numpy as np

from ._accel import INF, kernels


class GraphError(ValueError):
    pass


class Graph:
    """Simple undirected graph on vertices 0..n-1.

    Neighbor lists are sorted tuples.  Instances are treated as immutable;
    the distance matrix is computed on first use and cached.
    """

    def __init__(self, n, edges=()):
        if n < 0:
            raise GraphError("negative vertex count")
        nb = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            nb[u].add(v)
            nb[v].add(u)
        self.n = n
        self.adj = tuple(tuple(sorted(s)) for s in nb)
        self.edge_count = sum(len(s) for s in nb) // 2

    @classmethod
    def from_adjacency(cls, adj):
        return cls(len(adj), ((u, v) for u, nb in enumerate(adj) for v in nb if u < v))

    def edges(self):
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def neighbors(self, u):
        return self.adj[u]

    def degree(self, u):
        return len(self.adj[u])

    def has_edge(self, u, v):
        return v in self.nbr_sets[u]

    @cached_property
    def nbr_sets(self):
        return tuple(frozenset(a) for a in self.adj)

    @cached_property
    def dm(self):
        return all_pairs_distances(self)

    def subgraph(self, keep):
        """Induced subgraph on ``keep``; returns (graph, old-id list)."""
        keep = sorted(keep)
        pos = {v: i for i, v in enumerate(keep)}
        edges = [(pos[u], pos[v]) for u, v in self.edges() if u in pos and v in pos]
        return Graph(len(keep), edges), keep

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.edge_count})"


class DistanceMatrix:
    """Dense hop-count matrix; unreachable entries hold INF (65535)."""

    INF = INF

    def __init__(self, dist):
        self.dist = dist
        self.n = dist.shape[0]

    @cached_property
    def rows(self):
        return self.dist.tolist()

    @cached_property
    def connected(self):
        return self.n <= 1 or not bool((self.dist == INF).any())

    @cached_property
    def diameter(self):
        if not self.connected:
            raise GraphError("infinite diameter")
        return int(self.dist.max()) if self.n else 0

    def __getitem__(self, uv):
        return self.rows[uv[0]][uv[1]]


def all_pairs_distances(g):
    indptr = np.zeros(g.n + 1, dtype=np.int64)
    for u in range(g.n):
        indptr[u + 1] = indptr[u] + len(g.adj[u])
    indices = np.fromiter((v for nb in g.adj for v in nb), dtype=np.int64,
                          count=int(indptr[-1]))
    return DistanceMatrix(kernels.bfs_all_pairs(g.n, indptr, indices))


def is_connected(g):
    if g.n < 1:
        raise GraphError("empty graph")
    return g.dm.connected


def diameter(dm):
    return dm.diameter


def require_connected(g):
    if g.n < 1 or not g.dm.connected:
        raise GraphError("graph must be connected")


def twin_classes(g):
    """Return (false_twin_classes, true_twin_classes).

    Each is a list of sorted vertex lists covering V, so singletons are
    included; classes are ordered by their smallest member.
    """
    false_cls = {}
    true_cls = {}
    for u in range(g.n):
        open_nb = g.adj[u]
        closed_nb = tuple(sorted(open_nb + (u,)))
        false_cls.setdefault(open_nb, []).append(u)
        true_cls.setdefault(closed_nb, []).append(u)
    by_min = lambda cs: sorted(cs, key=lambda c: c[0])
    return by_min(false_cls.values()), by_min(true_cls.values())


def nontrivial_twin_classes(g):
    fc, tc = twin_classes(g)
    return [c for c in fc if len(c) > 1] + [c for c in tc if len(c) > 1]


def is_simplicial(g, v):
    nb = g.adj[v]
    sets = g.nbr_sets
    for i, a in enumerate(nb):
        for b in nb[i + 1:]:
            if b not in sets[a]:
                return False
    return True


def simplicial_vertices(g):
    return [v for v in range(g.n) if is_simplicial(g, v)]


# --- file formats -----------------------------------------------------------

def parse_graph(text):
    """Parse PACE ``p tw n m`` or DIMACS ``p edge n m`` text (1-indexed)."""
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tok = line.split()
        if tok[0] == "p":
            if n is not None or len(tok) != 4 or tok[1] not in ("tw", "edge", "col"):
                raise GraphError(f"line {lineno}: bad header {line!r}")
            n = int(tok[2])
            continue
        if n is None:
            raise GraphError(f"line {lineno}: edge before header")
        if tok[0] == "e":
            tok = tok[1:]
        if len(tok) != 2:
            raise GraphError(f"line {lineno}: bad edge line {line!r}")
        u, v = int(tok[0]), int(tok[1])
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphError(f"line {lineno}: vertex out of range")
        if u != v:
            edges.append((u - 1, v - 1))
    if n is None:
        raise GraphError("missing header")
    return Graph(n, edges)


def read_graph(path):
    with open(path) as fh:
        return parse_graph(fh.read())


def format_pace_gr(g):
    out = [f"p tw {g.n} {g.edge_count}"]
    out.extend(f"{u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(out) + "\n"


def write_pace_gr(g, path):
    with open(path, "w") as fh:
        fh.write(format_pace_gr(g))


# --- small named graphs used throughout tests and docs ----------------------

def path_graph(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n):
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(leaves):
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])
