"""Strong resolving graph and strong metric dimension through vertex cover."""
from .graph import Graph, GraphError, require_connected
from .oracles import SolutionReport, is_strong_resolving_set
from .vc import approx_vc_2, exact_vc, kernelize_smd_vc

KERNEL_THRESHOLD = 24


def is_maximally_distant(g, dm, u, v):
    """True iff no neighbor of u is farther from v than u is."""
    if u == v:
        raise GraphError("u and v must differ")
    dm = dm if dm is not None else g.dm
    row = dm.rows[v]
    duv = row[u]
    return all(row[y] <= duv for y in g.adj[u])


def mmd_pairs(g, dm=None):
    dm = dm if dm is not None else g.dm
    rows = dm.rows
    # far[u][v]: u is maximally distant from v
    far = []
    for u in range(g.n):
        nb = g.adj[u]
        far.append([all(rows[v][y] <= rows[v][u] for y in nb) for v in range(g.n)])
    return [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if far[u][v] and far[v][u]]


def strong_resolving_graph(g, dm=None):
    require_connected(g)
    if g.n < 2:
        raise GraphError("need at least two vertices")
    return Graph(g.n, mmd_pairs(g, dm))


def smd_solve(g, threshold=KERNEL_THRESHOLD):
    """smd(G) = vc(G_SR).  When the 2-approximate cover of G is large the
    twin kernel runs first and the deleted twins are added back."""
    require_connected(g)
    if g.n == 1:
        return SolutionReport("smd", 0, [], "smd-vc")
    if len(approx_vc_2(g)) > threshold:
        kr = kernelize_smd_vc(g, g.n)
        if kr.deletions and not kr.no_instance:
            red = kr.graph
            sub = exact_vc(strong_resolving_graph(red))
            S = sorted([kr.kept[v] for v in sub] + [x for x, _, d in kr.log if d])
            if is_strong_resolving_set(g, None, S):
                return SolutionReport("smd", len(S), S, "smd-vc+kernel",
                                      {"kernel_deletions": kr.deletions})
    S = exact_vc(strong_resolving_graph(g))
    assert is_strong_resolving_set(g, None, S)
    return SolutionReport("smd", len(S), S, "smd-vc")
