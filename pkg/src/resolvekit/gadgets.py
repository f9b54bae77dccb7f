"""Instance generators: partitioned 3-SAT formulas to metric dimension,
geodetic set and strong metric dimension instances.

Every builder works on string-named vertices (``t^alpha_2``,
``bits(C)``...) and converts them to dense ids in insertion order at the
end.  Each returned GadgetGraph carries the budget k and a map from group
name to vertex ids.
"""
import itertools
import math
from dataclasses import dataclass, field

from .graph import Graph
from .sat import PARTS, CnfError, PartitionedCnf, validate_partition


class GadgetError(ValueError):
    pass


def clog2(x):
    """ceil(log2(x)) for integers x >= 1."""
    return (x - 1).bit_length()


@dataclass
class GadgetGraph:
    graph: Graph
    k: int
    groups: dict
    tag: str
    names: list
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self._ids = {nm: i for i, nm in enumerate(self.names)}

    def id_of(self, name):
        return self._ids[name]

    def ids(self, names):
        return sorted(self._ids[nm] for nm in names)

    def group(self, name):
        return self.groups[name]

    def annotation(self):
        """``g <group> v1 v2 ...`` lines with 1-indexed ids."""
        lines = [f"c {self.tag} k={self.k}"]
        for gname in sorted(self.groups):
            members = " ".join(str(v + 1) for v in self.groups[gname])
            lines.append(f"g {gname} {members}".rstrip())
        return "\n".join(lines) + "\n"


class _Builder:
    def __init__(self):
        self.names = []
        self.seen = set()
        self.edges = set()
        self.groups = {}
        self.nullifiers = []  # (members, own gadget vertices, nullifier)
        self.forbidden = set()

    def add(self, name, *groups):
        if name in self.seen:
            raise GadgetError(f"duplicate vertex {name}")
        self.seen.add(name)
        self.names.append(name)
        for gname in groups:
            self.groups.setdefault(gname, []).append(name)
        return name

    def tag(self, gname, names):
        self.groups.setdefault(gname, []).extend(names)

    def join(self, a, b):
        if a == b:
            raise GadgetError(f"self-loop at {a}")
        self.edges.add((a, b) if a < b else (b, a))

    def join_all(self, a, bs):
        for b in bs:
            self.join(a, b)

    def clique(self, vs):
        for a, b in itertools.combinations(vs, 2):
            self.join(a, b)

    def _apply_nullifier_rule(self):
        # every vertex outside X and its gadget that touches X is joined to
        # nullifier(X); the new edges can create new touches, so iterate
        changed = True
        while changed:
            changed = False
            nb = {v: set() for v in self.names}
            for a, b in self.edges:
                nb[a].add(b)
                nb[b].add(a)
            for members, own, nul in self.nullifiers:
                touch = set()
                for x in members:
                    touch |= nb[x]
                for u in touch - members - own:
                    key = (u, nul) if u < nul else (nul, u)
                    if key not in self.edges and (nul, u) not in self.forbidden:
                        self.edges.add(key)
                        changed = True

    def finish(self, k, tag, meta=None):
        self._apply_nullifier_rule()
        ids = {nm: i for i, nm in enumerate(self.names)}
        g = Graph(len(self.names), [(ids[a], ids[b]) for a, b in self.edges])
        groups = {gname: sorted(ids[v] for v in vs) for gname, vs in self.groups.items()}
        return GadgetGraph(g, k, groups, tag, list(self.names), dict(meta or {}))


# --- Sperner codes ---------------------------------------------------------

def sperner_set_rep(ell):
    """(p, {i: p-subset of [2p]}) for i in [ell], with p minimal such that
    ell <= C(2p, p).  Subsets are handed out in colexicographic order."""
    if ell < 1:
        raise GadgetError("ell must be positive")
    p = 1
    while math.comb(2 * p, p) < ell:
        p += 1
    combos = sorted(itertools.combinations(range(1, 2 * p + 1), p), key=lambda s: s[::-1])
    return p, {i: frozenset(s) for i, s in enumerate(combos[:ell], 1)}


def _bin(j, width):
    """Positions (1-indexed, left to right) of the 1 bits of j in ``width`` bits."""
    return [i for i in range(1, width + 1) if (j >> (width - i)) & 1]


# --- metric dimension gadget -------------------------------------------------

def attach_set_identifying_gadget(b, X, label, codes=None, size=None):
    """Bit triples, the star triple and nullifier(X) for the set X.

    ``size`` is the set size fed to the budget formula; it defaults to |X|
    (critical-pair sets pass their pair count).  ``codes`` gives each
    member's binary code, 1..|X| by default; a critical pair shares one code.
    The formula value q = ceil(log2(size + 2)) + 1 counts the star triple,
    so there are q - 1 numbered triples.  Returns the gadget's groups.
    """
    if not X:
        raise GadgetError("set identifying gadget needs a nonempty set")
    size = len(X) if size is None else size
    codes = list(range(1, len(X) + 1)) if codes is None else list(codes)
    q = clog2(size + 2) + 1
    width = q - 1
    if max(codes) >= (1 << width) - 1:
        raise GadgetError("codes collide with the all-ones nullifier code")
    br, bits = f"bit-rep({label})", f"bits({label})"
    ys = []
    for i in [str(i) for i in range(1, width + 1)] + ["*"]:
        y = b.add(f"y({label})_{i}", br)
        ya = b.add(f"y({label})_{i}^a", br, bits)
        yb = b.add(f"y({label})_{i}^b", br, bits)
        b.join(ya, y)
        b.join(y, yb)
        ys.append(y)
    b.clique(ys)
    star = ys[-1]
    b.join_all(star, X)
    for x, c in zip(X, codes):
        for i in _bin(c, width):
            b.join(x, ys[i - 1])
    nul = b.add(f"nullifier({label})", f"nullifier({label})")
    b.join_all(nul, ys)
    own = set(b.groups[br]) | {nul}
    b.nullifiers.append((set(X), own, nul))
    b.tag("gadget+", sorted(own))
    return {"q": q, "bit-rep": b.groups[br], "bits": b.groups[bits], "nullifier": nul,
            "twin_pairs": [(f"y({label})_{i}^a", f"y({label})_{i}^b")
                           for i in [str(i) for i in range(1, width + 1)] + ["*"]]}


def _require_partitioned(pcnf):
    if not isinstance(pcnf, PartitionedCnf):
        raise GadgetError("input must be a partitioned formula (run partition first)")
    try:
        validate_partition(pcnf)
    except CnfError as e:
        raise GadgetError(str(e)) from None
    if pcnf.n_per_part < 1 or not pcnf.clauses:
        raise GadgetError("need at least one variable per part and one clause")


def _md_q(size):
    return clog2(size + 2) + 1


def md_tw_budget(n, m):
    p, _ = sperner_set_rep(2 * n)
    return 3 * (n + _md_q(n) + _md_q(2 * n) + _md_q(2 * p)) + _md_q(2 * m)


def build_md_tw(pcnf):
    """Metric dimension instance of small treewidth and diameter."""
    _require_partitioned(pcnf)
    n, m = pcnf.n_per_part, pcnf.m
    p, rep = sperner_set_rep(2 * n)
    b = _Builder()
    twins = []
    for d in PARTS:
        X = []
        for i in range(1, n + 1):
            X += [b.add(f"x^{d},o_{i}", f"X^{d}"), b.add(f"x^{d},*_{i}", f"X^{d}")]
        A = []
        for i in range(1, n + 1):
            A += [b.add(f"f^{d}_{2 * i - 1}", f"A^{d}"), b.add(f"t^{d}_{2 * i}", f"A^{d}")]
        gx = attach_set_identifying_gadget(b, X, f"X^{d}", codes=[i for i in range(1, n + 1) for _ in (0, 1)], size=n)
        ga = attach_set_identifying_gadget(b, A, f"A^{d}")
        for i in range(1, n + 1):
            b.join(f"x^{d},o_{i}", f"t^{d}_{2 * i}")
            b.join(f"x^{d},o_{i}", f"f^{d}_{2 * i - 1}")
        b.join_all(gx["nullifier"], A)
        b.join_all(ga["nullifier"], X)
        b.join(gx["nullifier"], ga["nullifier"])
        V = [b.add(f"v^{d}_{j}", f"V^{d}") for j in range(1, 2 * p + 1)]
        b.clique(V)
        gv = attach_set_identifying_gadget(b, V, f"V^{d}")
        b.join(gv["nullifier"], ga["nullifier"])
        b.join_all(ga["nullifier"], V)
        for a in A:
            b.forbidden.add((gv["nullifier"], a))
        for j in range(1, 2 * n + 1):
            a = f"t^{d}_{j}" if j % 2 == 0 else f"f^{d}_{j}"
            b.join_all(a, [f"v^{d}_{x}" for x in sorted(rep[j])])
        twins += gx["twin_pairs"] + ga["twin_pairs"] + gv["twin_pairs"]
        b.tag("separator", V)
    C = []
    for q in range(1, m + 1):
        C += [b.add(f"c^o_{q}", "C", "c_q^circ"), b.add(f"c^*_{q}", "C", "c_q^star")]
    gc = attach_set_identifying_gadget(b, C, "C", codes=[q for q in range(1, m + 1) for _ in (0, 1)])
    twins += gc["twin_pairs"]
    for q, clause in enumerate(pcnf.clauses, 1):
        for d in PARTS:
            V = [f"v^{d}_{j}" for j in range(1, 2 * p + 1)]
            b.join_all(f"c^o_{q}", V)
            hit = pcnf.literal_in(clause, d)
            if hit is None:
                b.join_all(f"c^*_{q}", V)
            else:
                i, pos = hit
                code = 2 * i if pos else 2 * i - 1
                b.join_all(f"c^*_{q}", [f"v^{d}_{j}" for j in range(1, 2 * p + 1) if j not in rep[code]])
    for d in PARTS:
        b.join(f"nullifier(V^{d})", gc["nullifier"])
    b.tag("separator", b.groups["gadget+"])
    k = md_tw_budget(n, m)
    gg = b.finish(k, "md-tw", {"n": n, "m": m, "p": p, "twin_pairs": twins})
    gg.meta["diameter"] = gg.graph.dm.diameter
    return gg


def md_vc_budget(s, m):
    return 3 * (s + _md_q(s) + _md_q(s * (1 << s)) + _md_q(3 * s)) + _md_q(2 * m)


def _bucket_shape(pcnf):
    s = math.isqrt(pcnf.n_per_part)
    if s * s < pcnf.n_per_part:
        s += 1
    return s


def _bucket(i, s):
    return (i - 1) // s + 1, (i - 1) % s + 1


def build_md_vc(pcnf):
    """Metric dimension instance with vertex cover O(sqrt n); parts are
    padded with unused variables up to a perfect square."""
    _require_partitioned(pcnf)
    s = _bucket_shape(pcnf)
    m = pcnf.m
    b = _Builder()
    twins = []
    for d in PARTS:
        A = []
        for i in range(1, s + 1):
            A += [b.add(f"a^{d}_{i},{l}", f"A^{d}", f"A_{i}^{d}") for l in range(1, (1 << s) + 1)]
        ga = attach_set_identifying_gadget(b, A, f"A^{d}")
        B = []
        for i in range(1, s + 1):
            B += [b.add(f"b^{d},o_{i}", f"B^{d}"), b.add(f"b^{d},*_{i}", f"B^{d}")]
        gb = attach_set_identifying_gadget(b, B, f"B^{d}", codes=[i for i in range(1, s + 1) for _ in (0, 1)], size=s)
        b.clique(B)
        for i in range(1, s + 1):
            b.join_all(f"b^{d},o_{i}", b.groups[f"A_{i}^{d}"])
        b.join_all(gb["nullifier"], A)
        b.join_all(ga["nullifier"], B)
        b.join(gb["nullifier"], ga["nullifier"])
        T = [b.add(f"t^{d}_{j}", f"T^{d}", f"P^{d}") for j in range(1, s + 1)]
        F = [b.add(f"f^{d}_{j}", f"F^{d}", f"P^{d}") for j in range(1, s + 1)]
        V = [b.add(f"v^{d}_{j}", f"V^{d}", f"P^{d}") for j in range(1, s + 1)]
        P = V + T + F
        gp = attach_set_identifying_gadget(b, P, f"P^{d}")
        b.join_all(ga["nullifier"], P)
        b.join(gp["nullifier"], ga["nullifier"])
        for a in A:
            b.forbidden.add((gp["nullifier"], a))
        b.clique(P)
        for i in range(1, s + 1):
            for l in range(1, (1 << s) + 1):
                a = f"a^{d}_{i},{l}"
                for j in range(1, s + 1):
                    b.join(a, f"t^{d}_{j}" if _bucket_bit(l, j) else f"f^{d}_{j}")
                b.join(a, f"v^{d}_{i}")
        twins += ga["twin_pairs"] + gb["twin_pairs"] + gp["twin_pairs"]
        b.tag("vc-witness", B + P)
    C = []
    for q in range(1, m + 1):
        C += [b.add(f"c^o_{q}", "C", "c_q^circ"), b.add(f"c^*_{q}", "C", "c_q^star")]
    gc = attach_set_identifying_gadget(b, C, "C", codes=[q for q in range(1, m + 1) for _ in (0, 1)])
    twins += gc["twin_pairs"]
    for q, clause in enumerate(pcnf.clauses, 1):
        for d in PARTS:
            hit = pcnf.literal_in(clause, d)
            if hit is None:
                for j in range(1, s + 1):
                    b.join(f"c^o_{q}", f"v^{d}_{j}")
                    b.join(f"c^*_{q}", f"v^{d}_{j}")
                continue
            bi, bj = _bucket(hit[0], s)
            for j in range(1, s + 1):
                if j != bi:
                    b.join(f"c^o_{q}", f"v^{d}_{j}")
                    b.join(f"c^*_{q}", f"v^{d}_{j}")
            b.join(f"c^o_{q}", f"t^{d}_{bj}" if hit[1] else f"f^{d}_{bj}")
    for d in PARTS:
        b.join_all(f"nullifier(P^{d})", C)
        b.join(f"nullifier(P^{d})", gc["nullifier"])
    b.tag("vc-witness", b.groups["gadget+"])
    k = md_vc_budget(s, m)
    gg = b.finish(k, "md-vc", {"n": pcnf.n_per_part, "sqrt_n": s, "m": m, "twin_pairs": twins})
    gg.meta["diameter"] = gg.graph.dm.diameter
    return gg


def _bucket_bit(l, j):
    """Truth value of the j-th bucket variable under assignment vertex l."""
    return bool(((l - 1) >> (j - 1)) & 1)


# --- geodetic set ------------------------------------------------------------

def build_gs_tw(pcnf):
    """Geodetic set instance of diameter at most 5 and small treewidth."""
    _require_partitioned(pcnf)
    n, m = pcnf.n_per_part, pcnf.m
    p, rep = sperner_set_rep(2 * n)
    b = _Builder()
    for nm in ("y_1", "y_2"):
        b.add(nm, "y", "separator")
    for nm in ("z_1", "z_2"):
        b.add(nm, "z")
    for nm in ("g_1", "g_2", "g_3"):
        b.add(nm, "g", "separator")
    b.join("y_1", "z_1")
    b.join("y_2", "z_2")
    b.join("g_1", "y_1")
    b.join("g_1", "y_2")
    for d in PARTS:
        A = []
        for i in range(1, n + 1):
            f = b.add(f"f^{d}_{2 * i - 1}", f"A^{d}")
            t = b.add(f"t^{d}_{2 * i}", f"A^{d}")
            A += [f, t]
            lt = b.add(f"x^{d},<_{i}", f"Q^{d}")
            rt = b.add(f"x^{d},>_{i}", f"Q^{d}")
            ci = b.add(f"x^{d},o_{i}", f"Q^{d}")
            st = b.add(f"x^{d},*_{i}", f"Q^{d}")
            for side in (lt, rt):
                b.join(side, t)
                b.join(side, f)
                b.join(ci, side)
            b.join(st, ci)
            b.join("g_1", ci)
        for y in ("y_1", "y_2", "g_1", "g_2"):
            b.join_all(y, A)
        V = [b.add(f"v^{d}_{j}", f"V^{d}", "separator") for j in range(1, 2 * p + 1)]
        b.clique(V)
        b.join_all("g_1", V)
        for j in range(1, 2 * n + 1):
            a = f"t^{d}_{j}" if j % 2 == 0 else f"f^{d}_{j}"
            b.join_all(a, [f"v^{d}_{x}" for x in sorted(rep[j])])
    for q, clause in enumerate(pcnf.clauses, 1):
        c = b.add(f"c_{q}", "C")
        ca = b.add(f"c^a_{q}", "C^a")
        cb = b.add(f"c^b_{q}", "C^b")
        b.join(c, ca)
        b.join(ca, cb)
        b.join("g_2", c)
        b.join("g_3", ca)
        for d in PARTS:
            hit = pcnf.literal_in(clause, d)
            if hit is None:
                continue
            i, pos = hit
            code = 2 * i if pos else 2 * i - 1
            outside = [f"v^{d}_{j}" for j in range(1, 2 * p + 1) if j not in rep[code]]
            b.join_all(c, outside)
            b.join_all(ca, outside)
    gg = b.finish(6 * n + m + 2, "gs-tw", {"n": n, "m": m, "p": p})
    gg.meta["diameter"] = gg.graph.dm.diameter
    return gg


def build_gs_vc(pcnf):
    """Geodetic set instance with vertex cover O(sqrt n); parts are padded
    with unused variables up to a perfect square."""
    _require_partitioned(pcnf)
    s = _bucket_shape(pcnf)
    b = _Builder()
    U = [b.add(f"u_{i}", "U") for i in range(1, s + 1)]
    b.clique(U)
    for i in range(1, s + 1):
        b.join(f"u_{i}", b.add(f"u'_{i}", "U'"))
    for d in PARTS:
        T = [b.add(f"t^{d}_{j}", f"T^{d}") for j in range(1, s + 1)]
        F = [b.add(f"f^{d}_{j}", f"F^{d}") for j in range(1, s + 1)]
        V = [b.add(f"v^{d}_{j}", f"V^{d}") for j in range(1, s + 1)]
        for i in range(1, s + 1):
            Ai = [b.add(f"w^{d}_{i},{l}", f"A^{d}", f"A_{i}^{d}") for l in range(1, (1 << s) + 1)]
            for j in (1, 2):
                a = b.add(f"a^{d}_{i},{j}", f"B^{d}")
                bb = b.add(f"b^{d}_{i},{j}", f"B^{d}")
                b.join(a, bb)
                b.join_all(a, Ai)
            b.join_all(f"v^{d}_{i}", Ai)
            for l, w in enumerate(Ai, 1):
                for j in range(1, s + 1):
                    b.join(w, f"t^{d}_{j}" if _bucket_bit(l, j) else f"f^{d}_{j}")
            g = b.add(f"g^{d}_{i}", f"g^{d}")
            b.join_all(g, T + F)
            b.join(g, f"a^{d}_{i},1")
            b.join(g, f"a^{d}_{i},2")
            b.join_all(g, U)
        for i in range(1, s + 1):
            for j in range(1, s + 1):
                if i != j:
                    b.join(f"u_{j}", f"v^{d}_{i}")
    for q, clause in enumerate(pcnf.clauses, 1):
        c = b.add(f"c_{q}", "C")
        for d in PARTS:
            hit = pcnf.literal_in(clause, d)
            if hit is None:
                continue
            bi, bj = _bucket(hit[0], s)
            b.join(c, f"u_{bi}")
            b.join(c, f"t^{d}_{bj}" if hit[1] else f"f^{d}_{bj}")
    gg = b.finish(10 * s, "gs-vc", {"n": pcnf.n_per_part, "sqrt_n": s, "m": pcnf.m})
    gg.meta["diameter"] = gg.graph.dm.diameter
    return gg


# --- strong metric dimension -------------------------------------------------

def _require_exact(pcnf):
    _require_partitioned(pcnf)
    if not pcnf.is_exact():
        raise GadgetError("input must be an exact partitioned formula (every clause uses all three parts)")


def _literal_sets(pcnf):
    """Variable-side and clause-side literal vertex names per part."""
    n = pcnf.n_per_part
    sets = {}
    for d in PARTS:
        sets[f"X_T^{d}"] = [f"x^{d}_{i},t" for i in range(1, n + 1)]
        sets[f"X_F^{d}"] = [f"x^{d}_{i},f" for i in range(1, n + 1)]
        sets[f"U_T^{d}"], sets[f"U_F^{d}"] = [], []
    owner = {}
    for q, clause in enumerate(pcnf.clauses, 1):
        for d in PARTS:
            i, pos = pcnf.literal_in(clause, d)
            sign = "t" if pos else "f"
            u = f"x^{d},{q}_{i},{sign}"
            sets[f"U_{sign.upper()}^{d}"].append(u)
            owner[u] = f"x^{d}_{i},{sign}"
    return sets, owner


def build_smd_h(epcnf):
    """The textbook vertex cover graph H: a matching edge per variable, a
    triangle per clause, and an edge from each clause-side literal to the
    same literal on the variable side.  Budget 3n + 2m."""
    _require_exact(epcnf)
    sets, owner = _literal_sets(epcnf)
    b = _Builder()
    for gname, vs in sets.items():
        for v in vs:
            b.add(v, gname, "H")
    for d in PARTS:
        for x, y in zip(sets[f"X_T^{d}"], sets[f"X_F^{d}"]):
            b.join(x, y)
    for q, clause in enumerate(epcnf.clauses, 1):
        tri = [u for u, x in owner.items() if f",{q}_" in u]
        b.clique(tri)
    for u, x in owner.items():
        b.join(u, x)
    return b.finish(3 * epcnf.n_per_part + 2 * epcnf.m, "smd-h", {"n": epcnf.n_per_part, "m": epcnf.m})


def _independent_set_gadget(b, S, label, globals_=True):
    q = clog2(len(S) + 1)
    ys = []
    for ell in range(1, q + 1):
        y = b.add(f"y({label})_{ell}", f"bit-rep({label})")
        ya = b.add(f"y({label})_{ell}^a", f"bits({label})")
        b.join(y, ya)
        ys.append(y)
    for j, x in enumerate(S, 1):
        for ell in _bin(j, q):
            b.join(x, ys[ell - 1])
    glb = glb_br = None
    if globals_:
        glb = _global(b, f"glb({label})", f"pndt({label})", S)
        glb_br = _global(b, f"glb(bit-rep({label}))", f"pndt(bit-rep({label}))", ys)
    return {"bit-rep": ys, "glb": glb, "glb_bitrep": glb_br}


def _global(b, name, pendant, targets):
    gv = b.add(name, "glb")
    b.join(b.add(pendant, "pndt"), gv)
    b.join_all(gv, targets)
    return gv


def _con_port(b, label, A, B, phi, globals_):
    """Portal of 2p vertices with Sperner codes: a_i sees the code of i and
    b sees the complement of the code of phi(b)."""
    p, rep = sperner_set_rep(len(A))
    index = {a: i for i, a in enumerate(A, 1)}
    port = []
    for j in range(1, 2 * p + 1):
        v = b.add(f"port({label})_{j}", f"con-port({label})", "portals")
        b.join(v, b.add(f"port({label})_{j}^a", f"bits(con-port({label}))"))
        b.join_all(v, globals_)
        port.append(v)
    for a in A:
        b.join_all(a, [port[j - 1] for j in rep[index[a]]])
    for x in B:
        code = rep[index[phi[x]]]
        b.join_all(x, [port[j - 1] for j in range(1, 2 * p + 1) if j not in code])
    return port


def build_smd_vc(epcnf):
    """Strong metric dimension instance whose strong resolving graph is H
    plus a clique on the pendant vertices Z and isolated vertices N(Z)."""
    _require_exact(epcnf)
    sets, owner = _literal_sets(epcnf)
    n, m = epcnf.n_per_part, epcnf.m
    b = _Builder()
    for gname, vs in sets.items():
        for v in vs:
            b.add(v, gname, "H")
    gad = {}
    for gname, vs in sets.items():
        if vs:
            # clause-side sets get their global vertices from the portals
            # between the U^delta below, so only X sets get them here
            gad[gname] = _independent_set_gadget(b, vs, gname, globals_=gname.startswith("X"))
    for d in PARTS:
        xt, xf = f"X_T^{d}", f"X_F^{d}"
        b.join(gad[xt]["glb"], gad[xf]["glb"])
        phi = {x: x[:-1] + "t" for x in sets[xf]}
        _con_port(b, f"{xt},{xf}", sets[xt], sets[xf], phi,
                  [gad[xt]["glb"], gad[xt]["glb_bitrep"], gad[xf]["glb"], gad[xf]["glb_bitrep"]])
    useen = set()
    for d, e in zip(PARTS, PARTS[1:] + PARTS[:1]):
        ends = []
        for side in (d, e):
            label = f"U^{side}"
            mark = "glb" if side not in useen else "glb°"
            useen.add(side)
            members = sets[f"U_T^{side}"] + sets[f"U_F^{side}"]
            brs = [y for key in (f"U_T^{side}", f"U_F^{side}") if key in gad for y in gad[key]["bit-rep"]]
            pm = "pndt" if mark == "glb" else "pndt°"
            gv = _global(b, f"{mark}({label})", f"{pm}({label})", members)
            gbr = _global(b, f"{mark}(bit-rep({label}))", f"{pm}(bit-rep({label}))", brs)
            ends.append((sorted(members, key=_clause_of), gv, gbr))
        (A, ga, gabr), (B, gb, gbbr) = ends
        b.join(ga, gb)
        by_clause = {_clause_of(u): u for u in A}
        phi = {x: by_clause[_clause_of(x)] for x in B}
        _con_port(b, f"U^{d},U^{e}", A, B, phi, [ga, gabr, gb, gbbr])
    shortcut = []
    for d in PARTS:
        for sign in ("T", "F"):
            xs, us = f"X_{sign}^{d}", f"U_{sign}^{d}"
            stars = {}
            for key in (xs, us):
                if key not in gad:
                    continue
                gs = _global(b, f"glb*({key})", f"pndt*({key})", sets[key])
                gbr = _global(b, f"glb*(bit-rep({key}))", f"pndt*(bit-rep({key}))", gad[key]["bit-rep"])
                stars[key] = (gs, gbr)
                shortcut.append(gs)
            if us not in gad:
                continue
            phi = {u: owner[u] for u in sets[us]}
            _con_port(b, f"{xs},{us}", sets[xs], sets[us], phi, list(stars[xs] + stars[us]))
    b.clique(shortcut)
    b.tag("S_K", shortcut)
    gg = b.finish(0, "smd-vc", {"n": n, "m": m})
    deg1 = [v for v in range(gg.graph.n) if gg.graph.degree(v) == 1]
    gg.groups["Z"] = deg1
    gg.k = 3 * n + 2 * m + len(deg1) - 1
    return gg


def _clause_of(u):
    return int(u.split(",")[1].split("_")[0])


# --- witnesses ---------------------------------------------------------------

BUILDERS = {"md-tw": build_md_tw, "md-vc": build_md_vc, "gs-tw": build_gs_tw,
            "gs-vc": build_gs_vc, "smd-vc": build_smd_vc}


def witness_from_assignment(construction, pcnf, assignment):
    """The solution prescribed by a satisfying assignment, as sorted ids.

    ``construction`` is a tag from BUILDERS or an already built GadgetGraph.
    """
    if not pcnf.evaluate(assignment):
        raise GadgetError("assignment does not satisfy the formula")
    gg = construction if isinstance(construction, GadgetGraph) else None
    tag = gg.tag if gg is not None else construction
    if tag not in ("md-tw", "md-vc", "gs-tw", "gs-vc"):
        raise GadgetError(f"no witness rule for construction {tag!r}")
    if gg is None:
        gg = BUILDERS[tag](pcnf)

    def value(d, i):
        return bool(assignment.get(pcnf.parts[d][i - 1], False)) if i <= pcnf.n_per_part else False

    names = []
    if tag in ("md-tw", "gs-tw"):
        for d in PARTS:
            for i in range(1, pcnf.n_per_part + 1):
                names.append(f"t^{d}_{2 * i}" if value(d, i) else f"f^{d}_{2 * i - 1}")
        if tag == "md-tw":
            names += [a for a, _ in gg.meta["twin_pairs"]]
        else:
            names += ["z_1", "z_2"]
            names += [f"x^{d},*_{i}" for d in PARTS for i in range(1, pcnf.n_per_part + 1)]
            names += [f"c^b_{q}" for q in range(1, pcnf.m + 1)]
    else:
        s = gg.meta["sqrt_n"]
        for d in PARTS:
            for i in range(1, s + 1):
                l = 1 + sum(1 << (j - 1) for j in range(1, s + 1) if value(d, (i - 1) * s + j))
                names.append(f"a^{d}_{i},{l}" if tag == "md-vc" else f"w^{d}_{i},{l}")
        if tag == "md-vc":
            names += [a for a, _ in gg.meta["twin_pairs"]]
        else:
            names += [f"u'_{i}" for i in range(1, s + 1)]
            names += [f"b^{d}_{i},{j}" for d in PARTS for i in range(1, s + 1) for j in (1, 2)]
    return gg.ids(names)
