"""Metric dimension by dynamic programming over a nice tree decomposition.

Two layers live here.

The solver (`md_dp`) keeps, per node i, a table keyed by the *signature*
of a partial solution S (a subset of the processed vertices V(G_i)):

    sel   S restricted to the bag
    ints  distance vectors of the members of S
    pairs ordered (r, t), r realized inside G_i and t outside, such that S
          resolves every x (vector r, in G_i) from every y (vector t, outside)
    open  unordered vector pairs {r1, r2} for which some pair of distinct
          vertices of G_i with those vectors is not resolved by S

Only resolvable states are kept (an open pair with equal vectors can never
be fixed from outside).  The value stored is the least |S| with that
signature.  A solution exists at the root iff some signature has no open pair.

The second layer evaluates the extended-instance formulation directly:
`emd_leaf_dim`, `emd_join_dim`, `emd_introduce_dim`, `emd_forget_dim`
take an instance (sel, D_int, D_ext, D_pair) and child tables and return the
minimum over compatible child instances.  For each child signature the
largest compatible child instance is formed; every compatibility condition
is monotone in the child's sets, so this loses nothing.  `brute_emd_dim`
solves an instance from scratch for cross-checking.
"""
from dataclasses import dataclass
from itertools import combinations

from ._dpbase import INFTY, DPContext, Deadline, check_lengths, ext, pair_key, trunc, vmin
from .graph import GraphError
from .oracles import SolutionReport, is_resolving_set
from .treedecomp import best_td, make_nice


def resolves_vec(r1, r2, r3):
    """True iff min_l(r1 + r3) != min_l(r2 + r3)."""
    check_lengths(r1, r2, r3)
    return vmin(r1, r3) != vmin(r2, r3)


def _res(a, b, u):
    return vmin(a, u) != vmin(b, u)


def _any_res(a, b, vecs):
    return any(vmin(a, u) != vmin(b, u) for u in vecs)


# --- signature transitions ----------------------------------------------------

def _leaf(ctx, i):
    nd = ctx.nodes[i]
    v = nd.bag[0]
    zero = (0,)
    yield (frozenset(), frozenset(), frozenset(), frozenset()), 0, False
    full = frozenset((zero, t) for t in nd.rout)
    yield (frozenset([v]), frozenset([zero]), full, frozenset()), 1, True


def _introduce(ctx, i, sig, take):
    nd = ctx.nodes[i]
    c = ctx.nodes[nd.children[0]]
    v, pos = nd.vertex, nd.vpos
    dvc = c.vec[v]
    dv = nd.vec[v]
    sel, ints, pairs, opn = sig

    def E(r):
        return ext(r, pos, vmin(r, dvc))

    by_trunc = {}
    for t in nd.rout:
        by_trunc.setdefault(trunc(t, pos), []).append(t)
    ext_in = {r: E(r) for r in c.rin}
    if not take:
        new_ints = frozenset(ext_in[r] for r in ints)
        new_pairs = set()
        for r, tc in pairs:
            for t in by_trunc.get(tc, ()):
                new_pairs.add((ext_in[r], t))
        for tc, ts in by_trunc.items():
            if _any_res(dvc, tc, ints):
                new_pairs.update((dv, t) for t in ts)
        new_open = {pair_key(ext_in[a], ext_in[b]) for a, b in opn}
        for r in c.rin:
            if (r, dvc) not in pairs:
                new_open.add(pair_key(ext_in[r], dv))
        return (sel, new_ints, frozenset(new_pairs), frozenset(new_open))
    new_ints = frozenset(ext_in[r] for r in ints) | {dv}
    new_pairs = {(dv, t) for t in nd.rout}
    for r in c.rin:
        er = ext_in[r]
        for t in nd.rout:
            if er[pos] != t[pos] or (r, trunc(t, pos)) in pairs:
                new_pairs.add((er, t))
    new_open = set()
    for a, b in opn:
        ea, eb = ext_in[a], ext_in[b]
        if ea[pos] == eb[pos]:
            new_open.add(pair_key(ea, eb))
    return (sel | {v}, new_ints, frozenset(new_pairs), frozenset(new_open))


def _forget(ctx, i, sig):
    nd = ctx.nodes[i]
    c = ctx.nodes[nd.children[0]]
    v, pos = nd.vertex, nd.vpos
    sel, ints, pairs, opn = sig
    new_open = set()
    for a, b in opn:
        ta, tb = trunc(a, pos), trunc(b, pos)
        if ta == tb:
            return None
        new_open.add(pair_key(ta, tb))
    pre_in, pre_out = _preimages(c, pos)
    new_pairs = set()
    for r, rs in pre_in.items():
        for t, ts in pre_out.items():
            if all((a, b) in pairs for a in rs for b in ts):
                new_pairs.add((r, t))
    return (sel - {v}, frozenset(trunc(r, pos) for r in ints),
            frozenset(new_pairs), frozenset(new_open))


def _preimages(c, pos):
    pre_in, pre_out = {}, {}
    for r in c.rin:
        pre_in.setdefault(trunc(r, pos), []).append(r)
    for t in c.rout:
        pre_out.setdefault(trunc(t, pos), []).append(t)
    return pre_in, pre_out


def _join(ctx, i, s1, s2):
    nd = ctx.nodes[i]
    c1, c2 = (ctx.nodes[j] for j in nd.children)
    sel, ints1, p1, u1 = s1
    _, ints2, p2, u2 = s2
    new_pairs = set()
    for r in nd.rin:
        for t in nd.rout:
            ok1 = r not in c1.rin or (r, t) in p1 or _any_res(r, t, ints2)
            ok2 = r not in c2.rin or (r, t) in p2 or _any_res(r, t, ints1)
            if ok1 and ok2:
                new_pairs.add((r, t))
    new_open = {p for p in u1 if not _any_res(p[0], p[1], ints2)}
    new_open.update(p for p in u2 if not _any_res(p[0], p[1], ints1))
    for a in c1.rin_nb:
        for b in c2.rin_nb:
            if (a, b) not in p1 and (b, a) not in p2:
                if a == b:
                    return None
                new_open.add(pair_key(a, b))
    return (sel, ints1 | ints2, frozenset(new_pairs), frozenset(new_open))


def build_tables(ctx, deadline=None):
    """Bottom-up signature tables: tables[i][sig] = (size, back-pointer)."""
    deadline = deadline or Deadline()
    tables = []
    for i, nd in enumerate(ctx.nodes):
        deadline.check()
        tab = {}

        def put(sig, size, back):
            if sig is None:
                return
            old = tab.get(sig)
            if old is None or size < old[0]:
                tab[sig] = (size, back)

        if nd.kind == "leaf":
            for sig, size, took in _leaf(ctx, i):
                put(sig, size, ("leaf", took))
        elif nd.kind == "introduce":
            for sig, (size, _) in tables[nd.children[0]].items():
                put(_introduce(ctx, i, sig, False), size, ("intro", sig, False))
                put(_introduce(ctx, i, sig, True), size + 1, ("intro", sig, True))
        elif nd.kind == "forget":
            for sig, (size, _) in tables[nd.children[0]].items():
                put(_forget(ctx, i, sig), size, ("forget", sig))
        else:
            t1, t2 = (tables[j] for j in nd.children)
            by_sel = {}
            for sig, (size, _) in t2.items():
                by_sel.setdefault(sig[0], []).append((sig, size))
            for s1, (z1, _) in t1.items():
                for s2, z2 in by_sel.get(s1[0], ()):
                    put(_join(ctx, i, s1, s2), z1 + z2 - len(s1[0]), ("join", s1, s2))
        tables.append(tab)
    return tables


def reconstruct(ctx, tables, root_sig):
    """Follow back-pointers from the root signature to a vertex set."""
    S = set()
    stack = [(ctx.ntd.root, root_sig)]
    while stack:
        i, sig = stack.pop()
        nd = ctx.nodes[i]
        back = tables[i][sig][1]
        if back[0] == "leaf":
            if back[1]:
                S.add(nd.bag[0])
        elif back[0] == "intro":
            if back[2]:
                S.add(nd.vertex)
            stack.append((nd.children[0], back[1]))
        elif back[0] == "forget":
            stack.append((nd.children[0], back[1]))
        else:
            stack.append((nd.children[0], back[1]))
            stack.append((nd.children[1], back[2]))
    return sorted(S)


def signature_of(ctx, i, S):
    """Signature of S (subset of V(G_i)) computed from distances directly."""
    nd = ctx.nodes[i]
    rows = ctx.dm.rows
    S = sorted(S)
    proc = sorted(nd.proc)
    vec = nd.vec

    def resolved(x, y):
        return any(rows[s][x] != rows[s][y] for s in S)

    bad_pairs = set()
    for x in proc:
        for y in nd.out:
            if not resolved(x, y):
                bad_pairs.add((vec[x], vec[y]))
    pairs = frozenset((r, t) for r in nd.rin for t in nd.rout if (r, t) not in bad_pairs)
    opn = set()
    for x, y in combinations(proc, 2):
        if not resolved(x, y):
            if vec[x] == vec[y]:
                return None
            opn.add(pair_key(vec[x], vec[y]))
    sel = frozenset(s for s in S if s in nd.pos)
    return (sel, frozenset(vec[s] for s in S), pairs, frozenset(opn))


def md_dp(g, ntd=None, td=None, deadline=None):
    """md(G) via the signature tables; the witness is rebuilt and verified."""
    if ntd is None:
        ntd = make_nice(g, best_td(g, td))
    ctx = DPContext(g, ntd)
    if g.n == 1:
        return SolutionReport("md", 0, [], "dp-tw", {"width": 0})
    deadline = deadline if isinstance(deadline, Deadline) else Deadline(deadline)
    tables = build_tables(ctx, deadline)
    root = tables[ntd.root]
    best = None
    for sig, (size, _) in root.items():
        if not sig[3] and (best is None or size < best[0]):
            best = (size, sig)
    if best is None:
        raise GraphError("DP found no resolving set (inconsistent decomposition)")
    S = reconstruct(ctx, tables, best[1])
    if len(S) != best[0] or not is_resolving_set(g, None, S):
        raise AssertionError("reconstructed witness failed verification")
    return SolutionReport("md", best[0], S, "dp-tw",
                          {"width": ntd.width, "states": max(len(t) for t in tables)})


# --- extended instances -------------------------------------------------------

@dataclass(frozen=True)
class EmdInstance:
    node: int
    sel: frozenset
    d_int: frozenset = frozenset()
    d_ext: frozenset = frozenset()
    d_pair: frozenset = frozenset()


def _sizes(table):
    """Accept either {sig: size} or {sig: (size, back)}."""
    for sig, val in table.items():
        yield sig, (val[0] if isinstance(val, tuple) else val)


def solves(sig, sel, d_int, d_ext, d_pair):
    """Does a partial solution with signature ``sig`` solve the instance?"""
    if sig is None or sig[0] != sel:
        return False
    if not d_int <= sig[1] or not d_pair <= sig[2]:
        return False
    return all(_any_res(a, b, d_ext) for a, b in sig[3])


def query(ctx, table, inst):
    """dim(inst) read off a node's signature table."""
    best = INFTY
    for sig, size in _sizes(table):
        if size < best and solves(sig, inst.sel, inst.d_int, inst.d_ext, inst.d_pair):
            best = size
    return best


def emd_leaf_dim(ctx, inst):
    nd = ctx.nodes[inst.node]
    if nd.kind != "leaf":
        raise GraphError("emd_leaf_dim needs a leaf node")
    v = nd.bag[0]
    if not inst.sel and not inst.d_int and not inst.d_pair:
        return 0
    if inst.sel == frozenset([v]) and inst.d_int <= {(0,)}:
        return 1
    return INFTY


def emd_join_dim(ctx, inst, table_left, table_right):
    nd = ctx.nodes[inst.node]
    if nd.kind != "join":
        raise GraphError("emd_join_dim needs a join node")
    c1, c2 = (ctx.nodes[j] for j in nd.children)
    if c1.bag != nd.bag or c2.bag != nd.bag:
        raise GraphError("join children must share the bag")
    left = [(s, z) for s, z in _sizes(table_left) if s[0] == inst.sel]
    right = [(s, z) for s, z in _sizes(table_right) if s[0] == inst.sel]
    best = INFTY
    for s1, z1 in left:
        for s2, z2 in right:
            val = z1 + z2 - len(inst.sel)
            if val >= best:
                continue
            int1, pair1 = s1[1], s1[2]
            int2, pair2 = s2[1], s2[2]
            # largest child Ext allowed by (J2)
            ext1 = (inst.d_ext | int2) & c1.rout
            ext2 = (inst.d_ext | int1) & c2.rout
            if not solves(s1, inst.sel, int1, ext1, pair1):
                continue
            if not solves(s2, inst.sel, int2, ext2, pair2):
                continue
            if not inst.d_int <= int1 | int2:  # (J3)
                continue
            if not _join_pairs_ok(inst, c1, c2, int1, int2, pair1, pair2):  # (J4)
                continue
            if not _join_cross_ok(inst, c1, c2, pair1, pair2):  # (J5)
                continue
            best = val
    return best


def _join_pairs_ok(inst, c1, c2, int1, int2, pair1, pair2):
    for r, t in inst.d_pair:
        side1 = r not in c1.rin or _any_res(r, t, int2) or (r, t) in pair1
        side2 = r not in c2.rin or _any_res(r, t, int1) or (r, t) in pair2
        if not (side1 and side2):
            return False
    return True


def _join_cross_ok(inst, c1, c2, pair1, pair2):
    # Cross pairs range over vertices off the bag: pairs touching the bag
    # lie inside one child and are left to that child's instance.
    for a in c1.rin_nb:
        for b in c2.rin_nb:
            if (a, b) in pair1 or (b, a) in pair2 or _any_res(a, b, inst.d_ext):
                continue
            return False
    return True


def emd_introduce_dim(ctx, inst, child_table, v=None):
    nd = ctx.nodes[inst.node]
    if nd.kind != "introduce":
        raise GraphError("emd_introduce_dim needs an introduce node")
    if v is not None and v != nd.vertex:
        raise GraphError(f"node introduces {nd.vertex}, not {v}")
    v, pos = nd.vertex, nd.vpos
    c = ctx.nodes[nd.children[0]]
    dvc, dv = c.vec[v], nd.vec[v]
    ext_down = frozenset(trunc(t, pos) for t in inst.d_ext)
    best = INFTY
    if v not in inst.sel:
        # type 1
        for sig, z in _sizes(child_table):
            if z >= best or sig[0] != inst.sel:  # (I1)
                continue
            int1, pair1 = sig[1], sig[2]
            if not solves(sig, inst.sel, int1, ext_down, pair1):
                continue
            if not all(r[pos] == vmin(trunc(r, pos), dvc) and trunc(r, pos) in int1
                       for r in inst.d_int):  # (I3)
                continue
            if not all(_in_p1(r, t, pos, pair1) or (r == dv and _any_res(dvc, trunc(t, pos), int1))
                       for r, t in inst.d_pair):  # (I4)
                continue
            if not _intro_i5(inst, nd, c, v, pos, dv, pair1):  # (I5)
                continue
            best = z
    else:
        # type 2
        sel1 = inst.sel - {v}
        ext1 = ext_down | {dvc}
        for sig, z in _sizes(child_table):
            if z + 1 >= best or sig[0] != sel1:  # (I'1)
                continue
            int1, pair1 = sig[1], sig[2]
            if not solves(sig, sel1, int1, ext1, pair1):
                continue
            if not all(r[pos] == vmin(trunc(r, pos), dvc) and trunc(r, pos) in int1
                       for r in inst.d_int if r != dv):  # (I'3)
                continue
            if not all(_in_p1(r, t, pos, pair1) or r[pos] != t[pos]
                       for r, t in inst.d_pair):  # (I'4)
                continue
            best = z + 1
    return best


def _in_p1(r, t, pos, pair1):
    return r[pos] >= 1 and (trunc(r, pos), trunc(t, pos)) in pair1


def _intro_i5(inst, nd, c, v, pos, dv, pair1):
    dvc = c.vec[v]
    for x in c.proc:
        r = nd.vec[x]
        if _any_res(r, dv, inst.d_ext):
            continue
        if (trunc(r, pos), dvc) not in pair1:
            return False
    return True


def emd_forget_dim(ctx, inst, child_table, v=None):
    nd = ctx.nodes[inst.node]
    if nd.kind != "forget":
        raise GraphError("emd_forget_dim needs a forget node")
    if v is not None and v != nd.vertex:
        raise GraphError(f"node forgets {nd.vertex}, not {v}")
    v, pos = nd.vertex, nd.vpos
    c = ctx.nodes[nd.children[0]]
    if v in inst.sel:
        return INFTY
    ext1 = frozenset(r for r in c.rout if trunc(r, pos) in inst.d_ext)  # (F2) at its largest
    best = INFTY
    for sig, z in _sizes(child_table):
        if z >= best or sig[0] - {v} != inst.sel:  # (F1)
            continue
        int1, pair1 = sig[1], sig[2]
        if not solves(sig, sig[0], int1, ext1, pair1):
            continue
        if not all(any(trunc(t, pos) == r for t in int1) for r in inst.d_int):  # (F3)
            continue
        if not _forget_f4(inst, nd, c, pair1):  # (F4)
            continue
        best = z
    return best


def _forget_f4(inst, nd, c, pair1):
    pre_x, pre_y = {}, {}
    for x in nd.proc:
        pre_x.setdefault(nd.vec[x], set()).add(c.vec[x])
    for y in nd.out:
        pre_y.setdefault(nd.vec[y], set()).add(c.vec[y])
    for r, t in inst.d_pair:
        for a in pre_x.get(r, ()):
            for b in pre_y.get(t, ()):
                if (a, b) not in pair1:
                    return False
    return True


def brute_emd_dim(ctx, inst):
    """dim(inst) by enumerating every S with S ∩ bag = sel."""
    nd = ctx.nodes[inst.node]
    rows = ctx.dm.rows
    vec = nd.vec
    free = sorted(x for x in nd.proc if x not in nd.pos)
    proc = sorted(nd.proc)
    sel = sorted(inst.sel)
    for size in range(len(free) + 1):
        for extra in combinations(free, size):
            S = sel + list(extra)
            if _is_emd_solution(inst, nd, rows, vec, proc, S):
                return len(S)
    return INFTY


def _is_emd_solution(inst, nd, rows, vec, proc, S):
    def by_s(x, y):
        return any(rows[s][x] != rows[s][y] for s in S)

    for x, y in combinations(proc, 2):  # (S1)
        if not by_s(x, y) and not _any_res(vec[x], vec[y], inst.d_ext):
            return False
    have = {vec[s] for s in S}
    if not inst.d_int <= have:  # (S2)
        return False
    for r, t in inst.d_pair:  # (S3)
        xs = [x for x in proc if vec[x] == r]
        ys = [y for y in nd.out if vec[y] == t]
        if any(not by_s(x, y) for x in xs for y in ys):
            return False
    return True
