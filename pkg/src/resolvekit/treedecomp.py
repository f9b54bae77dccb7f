"""Tree decompositions: PACE td I/O, validation, construction, nice form."""
from dataclasses import dataclass, field
from itertools import combinations


class TDError(ValueError):
    pass


@dataclass
class TreeDecomposition:
    bags: list  # list of sorted vertex tuples
    edges: list  # pairs of bag indices

    @property
    def width(self):
        return max((len(b) for b in self.bags), default=0) - 1


@dataclass
class NiceNode:
    kind: str  # leaf | introduce | forget | join
    bag: tuple
    vertex: int | None = None
    children: list = field(default_factory=list)
    processed: frozenset = frozenset()


@dataclass
class NiceTreeDecomposition:
    nodes: list  # children always precede parents
    root: int

    @property
    def width(self):
        return max(len(nd.bag) for nd in self.nodes) - 1

    def postorder(self):
        return range(len(self.nodes))


# --- validation -------------------------------------------------------------

def validate_td(g, td):
    """Return (ok, message); message names the first violated condition."""
    nb = len(td.bags)
    if nb == 0:
        return (g.n == 0, None if g.n == 0 else "no bags")
    for i, j in td.edges:
        if not (0 <= i < nb and 0 <= j < nb) or i == j:
            return False, f"bad tree edge ({i},{j})"
    # the bag graph must be a tree
    if len(td.edges) != nb - 1 or not _tree_connected(nb, td.edges):
        return False, "bag graph is not a tree"
    where = {}
    for i, bag in enumerate(td.bags):
        for v in bag:
            if not 0 <= v < g.n:
                return False, f"bag {i} holds unknown vertex {v}"
            where.setdefault(v, set()).add(i)
    for v in range(g.n):
        if v not in where:
            return False, f"vertex {v} in no bag"
    bag_sets = [set(b) for b in td.bags]
    for u, v in g.edges():
        if not (where[u] & where[v]):
            return False, f"edge ({u},{v}) in no bag"
    for v, occ in where.items():
        sub = [(i, j) for i, j in td.edges if i in occ and j in occ]
        if not _tree_connected(len(occ), sub, nodes=occ):
            return False, f"bags holding vertex {v} are not connected"
    del bag_sets
    return True, None


def _tree_connected(count, edges, nodes=None):
    nodes = set(range(count)) if nodes is None else set(nodes)
    if not nodes:
        return True
    adj = {x: [] for x in nodes}
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
    start = next(iter(nodes))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen == nodes


# --- construction -----------------------------------------------------------

def td_from_order(g, order):
    """Decomposition induced by eliminating vertices in ``order``."""
    pos = {v: i for i, v in enumerate(order)}
    nb = [set(a) for a in g.adj]
    bags = []
    for v in order:
        later = {w for w in nb[v] if pos[w] > pos[v]}
        bags.append(tuple(sorted(later | {v})))
        for a, b in combinations(later, 2):
            nb[a].add(b)
            nb[b].add(a)
    # bag of v hangs below the bag of its earliest-eliminated later neighbor
    edges = []
    for i, v in enumerate(order):
        later = [w for w in bags[i] if w != v]
        if later:
            parent = min(pos[w] for w in later)
            edges.append((i, parent))
    # join remaining roots (one per component) into a single tree
    has_parent = {i for i, _ in edges}
    roots = [i for i in range(len(order)) if i not in has_parent]
    for a, b in zip(roots, roots[1:]):
        edges.append((a, b))
    return TreeDecomposition(bags, edges)


def min_fill_order(g):
    nb = [set(a) for a in g.adj]
    alive = set(range(g.n))
    order = []
    while alive:
        best = None
        for v in sorted(alive):
            ns = nb[v] & alive
            fill = sum(1 for a, b in combinations(sorted(ns), 2) if b not in nb[a])
            key = (fill, len(ns), v)
            if best is None or key < best:
                best = key
        v = best[2]
        ns = nb[v] & alive
        for a, b in combinations(ns, 2):
            nb[a].add(b)
            nb[b].add(a)
        alive.discard(v)
        order.append(v)
    return order


def heuristic_td(g):
    return td_from_order(g, min_fill_order(g))


def exact_order(g, max_width=3):
    """Elimination order of minimum width by subset DP (small n only).

    This is the classical recurrence TW(S) = min over v in S of
    max(TW(S - v), |Q(S - v, v)|), Q being the vertices outside S + v
    reachable from v through S.  Returns (width, order), or None when the
    optimum exceeds ``max_width``.
    """
    n = g.n
    if n == 0:
        return 0, []
    nbm = [sum(1 << w for w in g.adj[v]) for v in range(n)]
    full = (1 << n) - 1

    def q_size(S, v):
        # vertices not in S and != v reachable from v via paths inside S
        seen = 1 << v
        frontier = 1 << v
        reach = 0
        while frontier:
            x = (frontier & -frontier).bit_length() - 1
            frontier &= frontier - 1
            out = nbm[x] & ~seen
            seen |= out
            reach |= out & ~S
            frontier |= out & S
        return bin(reach).count("1")

    INFW = n + 1
    tw = {0: -1}
    choice = {}
    for size in range(1, n + 1):
        for combo in combinations(range(n), size):
            S = sum(1 << v for v in combo)
            best = INFW
            arg = None
            for v in combo:
                rest = S & ~(1 << v)
                prev = tw.get(rest, INFW)
                if prev > max_width:
                    continue
                val = max(prev, q_size(rest, v))
                if val < best:
                    best, arg = val, v
            if best <= max_width:
                tw[S] = best
                choice[S] = arg
    if full not in tw:
        return None
    order = []
    S = full
    while S:
        v = choice[S]
        order.append(v)
        S &= ~(1 << v)
    order.reverse()
    return tw[full], order


def best_td(g, td=None, exact_n=12, exact_width=3):
    """User decomposition if given, else exact (width <= 3, n <= 12), else
    min-fill."""
    if td is not None:
        ok, msg = validate_td(g, td)
        if not ok:
            raise TDError(msg)
        return td
    if g.n <= exact_n:
        res = exact_order(g, exact_width)
        if res is not None:
            return td_from_order(g, res[1])
    return heuristic_td(g)


# --- nice form --------------------------------------------------------------

def choose_root(td):
    """Neighbor of the lowest-index leaf bag (bag 0 for a single bag)."""
    if len(td.bags) == 1:
        return 0
    deg = [0] * len(td.bags)
    for i, j in td.edges:
        deg[i] += 1
        deg[j] += 1
    leaf = min(i for i, d in enumerate(deg) if d == 1)
    for i, j in td.edges:
        if i == leaf:
            return j
        if j == leaf:
            return i
    return 0


def make_nice(g, td, root=None):
    ok, msg = validate_td(g, td)
    if not ok:
        raise TDError(msg)
    root = choose_root(td) if root is None else root
    adj = {i: [] for i in range(len(td.bags))}
    for i, j in td.edges:
        adj[i].append(j)
        adj[j].append(i)
    nodes = []

    def add(kind, bag, vertex=None, children=()):
        children = list(children)
        proc = set(bag)
        for c in children:
            proc |= nodes[c].processed
        nodes.append(NiceNode(kind, tuple(sorted(bag)), vertex, children, frozenset(proc)))
        return len(nodes) - 1

    def chain_from_leaf(bag):
        bag = sorted(bag)
        cur = add("leaf", (bag[0],))
        have = {bag[0]}
        for v in bag[1:]:
            have.add(v)
            cur = add("introduce", have, v, [cur])
        return cur

    def morph(cur, start, target):
        have = set(start)
        for v in sorted(have - set(target)):
            have.discard(v)
            cur = add("forget", have, v, [cur])
        for v in sorted(set(target) - have):
            have.add(v)
            cur = add("introduce", have, v, [cur])
        return cur

    def build(i, parent):
        kids = sorted(j for j in adj[i] if j != parent)
        bag = td.bags[i]
        if not kids:
            return chain_from_leaf(bag)
        subs = [morph(build(j, i), td.bags[j], bag) for j in kids]
        cur = subs[0]
        for other in subs[1:]:
            cur = add("join", bag, None, [cur, other])
        return cur

    import sys
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 10 * len(td.bags) + 100))
    try:
        top = build(root, None)
    finally:
        sys.setrecursionlimit(old)
    return NiceTreeDecomposition(nodes, top)


def check_nice(g, ntd):
    """Structural checks on a nice decomposition; returns (ok, message)."""
    for idx, nd in enumerate(ntd.nodes):
        kids = [ntd.nodes[c] for c in nd.children]
        if any(c >= idx for c in nd.children):
            return False, f"node {idx}: child after parent"
        if nd.kind == "leaf":
            if kids or len(nd.bag) != 1:
                return False, f"node {idx}: bad leaf"
        elif nd.kind == "introduce":
            if len(kids) != 1 or nd.vertex not in nd.bag or \
                    set(kids[0].bag) != set(nd.bag) - {nd.vertex}:
                return False, f"node {idx}: bad introduce"
            if nd.processed != kids[0].processed | {nd.vertex} or nd.vertex in kids[0].processed:
                return False, f"node {idx}: introduce processed set"
        elif nd.kind == "forget":
            if len(kids) != 1 or nd.vertex in nd.bag or \
                    set(nd.bag) != set(kids[0].bag) - {nd.vertex} or nd.vertex not in kids[0].bag:
                return False, f"node {idx}: bad forget"
        elif nd.kind == "join":
            if len(kids) != 2 or kids[0].bag != nd.bag or kids[1].bag != nd.bag:
                return False, f"node {idx}: bad join"
            if nd.processed != kids[0].processed | kids[1].processed:
                return False, f"node {idx}: join processed set"
        else:
            return False, f"node {idx}: unknown kind {nd.kind}"
    if ntd.nodes[ntd.root].processed != frozenset(range(g.n)):
        return False, "root does not cover all vertices"
    # the underlying bags must still form a valid decomposition
    td = TreeDecomposition([nd.bag for nd in ntd.nodes],
                           [(c, i) for i, nd in enumerate(ntd.nodes) for c in nd.children])
    return validate_td(g, td)


# --- PACE td format -----------------------------------------------------------

def parse_td(text):
    header = None
    bags = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tok = line.split()
        if tok[0] == "s":
            if header is not None or len(tok) != 5 or tok[1] != "td":
                raise TDError(f"line {lineno}: malformed header")
            try:
                header = tuple(int(x) for x in tok[2:])
            except ValueError:
                raise TDError(f"line {lineno}: malformed header") from None
            continue
        if header is None:
            raise TDError(f"line {lineno}: content before header")
        nbags, _, n = header
        try:
            vals = [int(x) for x in (tok[1:] if tok[0] == "b" else tok)]
        except ValueError:
            raise TDError(f"line {lineno}: non-integer token") from None
        if tok[0] == "b":
            if not vals:
                raise TDError(f"line {lineno}: bag without id")
            bid, verts = vals[0], vals[1:]
            if not 1 <= bid <= nbags or bid in bags:
                raise TDError(f"line {lineno}: bad bag id {bid}")
            for v in verts:
                if not 1 <= v <= n:
                    raise TDError(f"line {lineno}: vertex {v} out of range")
            bags[bid] = tuple(sorted(v - 1 for v in verts))
        else:
            if len(vals) != 2:
                raise TDError(f"line {lineno}: bad tree edge")
            a, b = vals
            if not (1 <= a <= nbags and 1 <= b <= nbags):
                raise TDError(f"line {lineno}: dangling bag id")
            edges.append((a - 1, b - 1))
    if header is None:
        raise TDError("empty input: missing header")
    nbags = header[0]
    if len(bags) != nbags:
        raise TDError(f"expected {nbags} bags, found {len(bags)}")
    return TreeDecomposition([bags[i + 1] for i in range(nbags)], edges)


def load_td(path):
    with open(path) as fh:
        return parse_td(fh.read())


def format_td(td, n):
    out = [f"s td {len(td.bags)} {td.width + 1} {n}"]
    for i, bag in enumerate(td.bags):
        out.append(" ".join(["b", str(i + 1)] + [str(v + 1) for v in bag]))
    out.extend(f"{i + 1} {j + 1}" for i, j in td.edges)
    return "\n".join(out) + "\n"


def write_td(td, n, path):
    with open(path, "w") as fh:
        fh.write(format_td(td, n))
