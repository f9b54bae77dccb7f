"""Vertex covers, the three vertex-cover kernels and the two XP solvers."""
from dataclasses import dataclass, field

from .graph import Graph, is_simplicial, require_connected, twin_classes
from .oracles import SolutionReport, search_min, verify


# --- covers -----------------------------------------------------------------

def approx_vc_2(g, prune=False):
    """Endpoints of a greedy maximal matching (edges in id order).

    With ``prune`` the cover is then made inclusion-minimal by dropping, in
    descending id order, every vertex whose neighbors are all still in the
    cover.  Pruning never grows the set, so the factor-2 bound survives.
    """
    matched = [False] * g.n
    cover = set()
    for u, v in g.edges():
        if not matched[u] and not matched[v]:
            matched[u] = matched[v] = True
            cover.update((u, v))
    if prune:
        for v in sorted(cover, reverse=True):
            if all(w in cover for w in g.adj[v]):
                cover.discard(v)
    return sorted(cover)


def _matching_lb(adj, covered):
    """Size of a greedy maximal matching on the still-uncovered edges."""
    used = set()
    size = 0
    for u in adj:
        if u in covered or u in used:
            continue
        for w in adj[u]:
            if w not in covered and w not in used:
                used.add(u)
                used.add(w)
                size += 1
                break
    return size


def exact_vc(g):
    """Minimum vertex cover; among minimum covers, the lexicographically
    smallest (as sorted tuples).

    Components are solved separately (the union of per-component lex-min
    covers is the global lex-min one) and complete components are answered
    directly.
    """
    cover = []
    for comp in _components(g):
        if len(comp) < 2:
            continue
        if all(len(g.adj[u]) == len(comp) - 1 for u in comp):
            cover += comp[:-1]
            continue
        edges = sum(len(g.adj[u]) for u in comp) // 2
        if 4 * edges > len(comp) * (len(comp) - 1):
            cover += _dense_cover(g, comp)
            continue
        adj = {u: g.adj[u] for u in comp}
        k = _matching_lb(adj, set())
        while True:
            res = _lex_cover(adj, k)
            if res is not None:
                cover += res
                break
            k += 1
    return sorted(cover)


def _dense_cover(g, comp):
    """Cover of a dense component as the complement of a maximum independent
    set.  Vertices are decided in ascending order, excluding first, so the
    first independent set found leaves the lex-min cover."""
    nbr = {u: set(g.adj[u]) for u in comp}

    def clique_bound(P):
        # greedy partition of P into cliques; an independent set takes at
        # most one vertex from each
        parts = []
        for v in P:
            for part in parts:
                if part <= nbr[v]:
                    part.add(v)
                    break
            else:
                parts.append({v})
        return len(parts)

    def search(P, need, chosen):
        if need == 0:
            return chosen
        if len(P) < need or clique_bound(P) < need:
            return None
        v = P[0]
        res = search(P[1:], need, chosen)
        if res is not None:
            return res
        return search([w for w in P[1:] if w not in nbr[v]], need - 1, chosen + [v])

    t = clique_bound(comp)
    while True:
        found = search(comp, t, [])
        if found is not None:
            keep = set(found)
            return [u for u in comp if u not in keep]
        t -= 1


def _components(g):
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp, stack = [s], [s]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        out.append(sorted(comp))
    return out


def _lex_cover(adj, budget):
    """First cover of size <= budget in include-first DFS order.

    The branching vertex is always the smallest one with an uncovered edge.
    All its uncovered neighbors are larger, so covers that take it sort
    before covers that take its neighbors instead; with budget equal to the
    optimum the first hit is therefore the lex-smallest minimum cover.
    """
    order = sorted(adj)
    chosen = set()

    def has_open_edge(v):
        return v not in chosen and any(w not in chosen for w in adj[v])

    def rec(start, left):
        i = start
        while i < len(order) and not has_open_edge(order[i]):
            i += 1
        if i == len(order):
            return True
        if left <= 0 or _matching_lb(adj, chosen) > left:
            return False
        v = order[i]
        chosen.add(v)
        if rec(i + 1, left - 1):
            return True
        chosen.discard(v)
        nbrs = [w for w in adj[v] if w not in chosen]
        if len(nbrs) <= left:
            chosen.update(nbrs)
            if rec(i + 1, left - len(nbrs)):
                return True
            chosen.difference_update(nbrs)
        return False

    if rec(0, budget):
        return set(chosen)
    return None


def is_vertex_cover(g, X):
    X = set(X)
    return all(u in X or v in X for u, v in g.edges())


# --- kernels ----------------------------------------------------------------

@dataclass
class KernelResult:
    graph: Graph
    k: int
    log: list = field(default_factory=list)  # (original vertex, rule, budget delta)
    kept: list = field(default_factory=list)  # reduced id -> original id
    cover: list = field(default_factory=list)  # cover used, original ids
    no_instance: bool = False

    @property
    def deletions(self):
        return sum(1 for _, _, d in self.log if d)


def _no_instance(k, log, cover):
    return KernelResult(Graph(1), -1, log, [0], cover, True)


def _finish(g, k, deleted, log, cover):
    keep = [v for v in range(g.n) if v not in deleted]
    sub, kept = g.subgraph(keep)
    return KernelResult(sub, k, log, kept, cover)


def _twin_rule_kernel(g, k, rule):
    require_connected(g)
    cover = approx_vc_2(g, prune=True)
    in_cover = set(cover)
    groups = {}
    for v in range(g.n):
        if v not in in_cover:
            groups.setdefault(g.adj[v], []).append(v)
    deleted = set()
    log = []
    # Sweep classes by smallest member; each application removes the
    # highest-id member while three remain.
    for nb in sorted(groups, key=lambda key: groups[key][0]):
        members = list(groups[nb])
        while len(members) >= 3:
            x = members.pop()
            deleted.add(x)
            log.append((x, rule, -1))
            k -= 1
            if k < 0:
                return _no_instance(k, log, cover)
    if k < 0:
        return _no_instance(k, log, cover)
    return _finish(g, k, deleted, log, cover)


def kernelize_md_vc(g, k):
    return _twin_rule_kernel(g, k, "md-twins")


def kernelize_smd_vc(g, k):
    return _twin_rule_kernel(g, k, "smd-twins")


def kernelize_gs_vc(g, k):
    """Simplicial-twin rule to fixpoint, then the six-false-twins rule,
    repeated until neither applies."""
    require_connected(g)
    cover = approx_vc_2(g, prune=True)
    log = []
    if k < 0:
        return _no_instance(k, log, cover)
    cur = g
    ids = list(range(g.n))
    while True:
        changed = False
        while True:
            x = _simplicial_twin_victim(cur)
            if x is None:
                break
            log.append((ids[x], "gs-simplicial", -1))
            k -= 1
            if k < 0:
                return _no_instance(k, log, cover)
            cur, ids = _drop(cur, ids, x)
            changed = True
        x = _open_twin_victim(cur)
        if x is not None:
            log.append((ids[x], "gs-open-twins", 0))
            cur, ids = _drop(cur, ids, x)
            changed = True
        if not changed:
            break
    return KernelResult(cur, k, log, ids, cover)


def _drop(g, ids, x):
    sub, kept = g.subgraph([v for v in range(g.n) if v != x])
    return sub, [ids[v] for v in kept]


def _simplicial_twin_victim(g):
    false_cls, true_cls = twin_classes(g)
    best = None
    for cls in false_cls + true_cls:
        simp = [v for v in cls if is_simplicial(g, v)]
        if len(simp) >= 3:
            cand = simp[-1]
            if best is None or simp[0] < best[0]:
                best = (simp[0], cand)
    return None if best is None else best[1]


def _open_twin_victim(g):
    false_cls, true_cls = twin_classes(g)
    in_true = {v for c in true_cls if len(c) > 1 for v in c}
    for cls in false_cls:
        pool = [v for v in cls if v not in in_true and not is_simplicial(g, v)]
        if len(pool) >= 6:
            return pool[-1]
    return None


# --- XP algorithms ------------------------------------------------------------

def _budget(g, k):
    return g.n if k is None else k


def xp_md_vc(g, k=None, deadline=None):
    """Exact cover X; the forced set F holds all but the lowest member of
    every false-twin class inside I = V - X; then subsets A of
    X + (I - F) with |A| <= |X| are tried by increasing size."""
    require_connected(g)
    k = _budget(g, k)
    X = exact_vc(g)
    in_x = set(X)
    groups = {}
    for v in range(g.n):
        if v not in in_x:
            groups.setdefault(g.adj[v], []).append(v)
    F = sorted(v for cls in groups.values() for v in cls[1:])
    extra = {"cover": X, "forced": F}
    if k - len(F) < 0:
        return SolutionReport("md", None, [], "xp-vc", extra)
    pool = [v for v in range(g.n) if v not in set(F)]
    S = search_min(g, "md", F, pool, hi=min(k, len(F) + len(X)), deadline=deadline)
    if S is None:
        return SolutionReport("md", None, [], "xp-vc", extra)
    assert verify("md", g, S)
    return SolutionReport("md", len(S), S, "xp-vc", extra)


def xp_gs_vc(g, k=None, deadline=None):
    """Simplicial vertices are forced; extra sets S' of size <= |X| drawn
    from the remaining vertices are tried by increasing size."""
    require_connected(g)
    k = _budget(g, k)
    X = exact_vc(g)
    forced = [v for v in range(g.n) if is_simplicial(g, v)]
    extra = {"cover": X, "forced": forced}
    if len(forced) > k:
        return SolutionReport("gs", None, [], "xp-vc", extra)
    S = search_min(g, "gs", forced, range(g.n), hi=min(k, len(forced) + len(X)),
                   deadline=deadline)
    if S is None:
        return SolutionReport("gs", None, [], "xp-vc", extra)
    assert verify("gs", g, S)
    return SolutionReport("gs", len(S), S, "xp-vc", extra)
