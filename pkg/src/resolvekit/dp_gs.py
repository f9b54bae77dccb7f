"""Geodetic set by dynamic programming over a nice tree decomposition.

Same two layers as the metric-dimension DP.  A partial solution S (subset
of V(G_i)) is summarized by

    sel     S restricted to the bag
    ints    distance vectors of the members of S
    intint  ({vec s1, vec s2}, d(s1, s2)) for distinct s1, s2 in S; the two
            vectors may coincide, so this is a multiset pair
    open    one entry (vec x, A_x) for each vertex x of G_i not yet covered
            by S, where A_x holds the outside vectors t such that x is
            covered by some s in S and t

A root signature with no open entry is a geodetic set.
"""
from dataclasses import dataclass
from itertools import combinations

from ._dpbase import INFTY, DPContext, Deadline, check_lengths, ext, pair_key, trunc, vmin
from .graph import GraphError
from .oracles import SolutionReport, is_geodetic_set
from .treedecomp import best_td, make_nice


def covered_vec_pair(r3, r1, r2, d):
    """True iff min(r1 + r3) + min(r2 + r3) == d."""
    check_lengths(r3, r1, r2)
    return vmin(r1, r3) + vmin(r2, r3) == d


def covered_vertex_vec(ctx, node, x, s, r):
    """x is covered by s (both in G_i) and an outside vector r."""
    nd = ctx.nodes[node]
    if x not in nd.proc or s not in nd.proc:
        raise GraphError("x and s must be processed vertices")
    check_lengths(r, nd.vec[x])
    return ctx.dm.rows[s][x] + vmin(nd.vec[x], r) == vmin(nd.vec[s], r)


def _cov(x, a, b, d):
    return vmin(a, x) + vmin(b, x) == d


def _cov_any(x, elems):
    return any(vmin(a, x) + vmin(b, x) == d for (a, b), d in elems)


# --- signature transitions ----------------------------------------------------

def _leaf(ctx, i):
    zero = (0,)
    v = ctx.nodes[i].bag[0]
    yield (frozenset(), frozenset(), frozenset(), frozenset([(zero, frozenset())])), 0, False
    yield (frozenset([v]), frozenset([zero]), frozenset(), frozenset()), 1, True


def _lifter(nd, pos):
    by_trunc = {}
    for t in nd.rout:
        by_trunc.setdefault(trunc(t, pos), []).append(t)

    def lift(A):
        return frozenset(t for tc in A for t in by_trunc.get(tc, ()))
    return lift


def _introduce(ctx, i, sig, take):
    nd = ctx.nodes[i]
    c = ctx.nodes[nd.children[0]]
    v, pos = nd.vertex, nd.vpos
    dvc, dv = c.vec[v], nd.vec[v]
    sel, ints, ii, opn = sig

    def E(r):
        return ext(r, pos, vmin(r, dvc))

    lift = _lifter(nd, pos)
    new_ints = {E(r) for r in ints}
    new_ii = {(pair_key(E(a), E(b)), d) for (a, b), d in ii}
    new_open = set()
    if not take:
        for vx, A in opn:
            new_open.add((E(vx), lift(A)))
        if not _cov_any(dvc, ii):
            A_v = frozenset(t for t in nd.rout
                            if any(vmin(r, dvc) + t[pos] == vmin(E(r), t) for r in ints))
            new_open.add((dv, A_v))
        return (sel, frozenset(new_ints), frozenset(new_ii), frozenset(new_open))
    new_ints.add(dv)
    for r in ints:
        new_ii.add((pair_key(dv, E(r)), vmin(r, dvc)))
    for vx, A in opn:
        if dvc in A:
            continue  # x lies between some s and v
        ex = E(vx)
        A2 = lift(A) | {t for t in nd.rout if ex[pos] + vmin(ex, t) == t[pos]}
        new_open.add((ex, frozenset(A2)))
    return (sel | {v}, frozenset(new_ints), frozenset(new_ii), frozenset(new_open))


def _forget(ctx, i, sig):
    nd = ctx.nodes[i]
    v, pos = nd.vertex, nd.vpos
    sel, ints, ii, opn = sig
    return (sel - {v},
            frozenset(trunc(r, pos) for r in ints),
            frozenset((pair_key(trunc(a, pos), trunc(b, pos)), d) for (a, b), d in ii),
            frozenset((trunc(vx, pos), frozenset(trunc(t, pos) for t in A)) for vx, A in opn))


def _join(ctx, i, s1, s2):
    nd = ctx.nodes[i]
    sel, ints1, ii1, u1 = s1
    _, ints2, ii2, u2 = s2
    ii = set(ii1) | ii2
    for a in ints1:
        for b in ints2:
            d = vmin(a, b)
            if d > 0:
                ii.add((pair_key(a, b), d))
    new_open = set()
    for opn, other_ints, other_ii in ((u1, ints2, ii2), (u2, ints1, ii1)):
        for vx, A in opn:
            if A & other_ints or _cov_any(vx, other_ii):
                continue
            A2 = (A & nd.rout) | {t for t in nd.rout
                                  if any(vmin(r, vx) + vmin(vx, t) == vmin(r, t) for r in other_ints)}
            new_open.add((vx, frozenset(A2)))
    return (sel, ints1 | ints2, frozenset(ii), frozenset(new_open))


def build_tables(ctx, deadline=None):
    deadline = deadline or Deadline()
    tables = []
    for i, nd in enumerate(ctx.nodes):
        deadline.check()
        tab = {}

        def put(sig, size, back):
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


def signature_of(ctx, i, S):
    nd = ctx.nodes[i]
    rows = ctx.dm.rows
    vec = nd.vec
    S = sorted(S)
    inS = set(S)
    ii = frozenset((pair_key(vec[a], vec[b]), rows[a][b]) for a, b in combinations(S, 2))
    opn = set()
    for x in sorted(nd.proc):
        if x in inS or any(rows[a][x] + rows[x][b] == rows[a][b] for a, b in combinations(S, 2)):
            continue
        A = frozenset(vec[y] for y in nd.out
                      if any(rows[s][x] + rows[x][y] == rows[s][y] for s in S))
        opn.add((vec[x], A))
    sel = frozenset(s for s in S if s in nd.pos)
    return (sel, frozenset(vec[s] for s in S), ii, frozenset(opn))


def gs_dp(g, ntd=None, td=None, deadline=None):
    """gs(G) via the signature tables; the witness is rebuilt and verified."""
    from .dp_md import reconstruct

    if ntd is None:
        ntd = make_nice(g, best_td(g, td))
    ctx = DPContext(g, ntd)
    deadline = deadline if isinstance(deadline, Deadline) else Deadline(deadline)
    tables = build_tables(ctx, deadline)
    best = None
    for sig, (size, _) in tables[ntd.root].items():
        if not sig[3] and (best is None or size < best[0]):
            best = (size, sig)
    if best is None:
        raise GraphError("DP found no geodetic set (inconsistent decomposition)")
    S = reconstruct(ctx, tables, best[1])
    if len(S) != best[0] or not is_geodetic_set(g, None, S):
        raise AssertionError("reconstructed witness failed verification")
    return SolutionReport("gs", best[0], S, "dp-tw",
                          {"width": ntd.width, "states": max(len(t) for t in tables)})


# --- extended instances -------------------------------------------------------

@dataclass(frozen=True)
class EgsInstance:
    node: int
    sel: frozenset
    d_int: frozenset = frozenset()
    d_ext: frozenset = frozenset()
    d_intint: frozenset = frozenset()
    d_extext: frozenset = frozenset()


def _sizes(table):
    for sig, val in table.items():
        yield sig, (val[0] if isinstance(val, tuple) else val)


def solves(sig, sel, d_int, d_ext, d_intint, d_extext):
    if sig[0] != sel or not d_int <= sig[1] or not d_intint <= sig[2]:
        return False
    return all(A & d_ext or _cov_any(vx, d_extext) for vx, A in sig[3])


def query(ctx, table, inst):
    best = INFTY
    for sig, size in _sizes(table):
        if size < best and solves(sig, inst.sel, inst.d_int, inst.d_ext,
                                  inst.d_intint, inst.d_extext):
            best = size
    return best


def egs_leaf_dim(ctx, inst):
    """The leaf case table, read literally.

    Note: with sel empty the lone bag vertex still has to be covered by an
    element of D_extext; the table does not look at D_extext, so for such
    instances it can report 0 where brute_egs_dim reports +inf.  The solver
    (gs_dp) does not use this function.
    """
    nd = ctx.nodes[inst.node]
    if nd.kind != "leaf":
        raise GraphError("egs_leaf_dim needs a leaf node")
    v = nd.bag[0]
    if not inst.sel and not inst.d_int and not inst.d_intint:
        return 0
    if inst.sel == frozenset([v]) and inst.d_int <= {(0,)} and not inst.d_intint:
        return 1
    return INFTY


def _f_set(ints1, ints2):
    return {(pair_key(a, b), vmin(a, b)) for a in ints1 for b in ints2}


def egs_join_dim(ctx, inst, table_left, table_right):
    nd = ctx.nodes[inst.node]
    if nd.kind != "join":
        raise GraphError("egs_join_dim needs a join node")
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
            int1, ii1 = s1[1], s1[2]
            int2, ii2 = s2[1], s2[2]
            if not inst.d_int <= int1 | int2:  # (J2)
                continue
            if not inst.d_intint <= ii1 | ii2 | _f_set(int1, int2):  # (J5)
                continue
            # (J3) and (J4) at their largest
            ext1 = (inst.d_ext | int2) & c1.rout
            ext2 = (inst.d_ext | int1) & c2.rout
            ee1 = (inst.d_extext | ii2 | _f_set(inst.d_ext, int2)) & c1.out_pairs()
            ee2 = (inst.d_extext | ii1 | _f_set(inst.d_ext, int1)) & c2.out_pairs()
            if not solves(s1, inst.sel, int1, ext1, ii1, ee1):
                continue
            if not solves(s2, inst.sel, int2, ext2, ii2, ee2):
                continue
            best = val
    return best


def _coord_ok(r, pos, dvc):
    return r[pos] == vmin(trunc(r, pos), dvc)


def egs_introduce_dim(ctx, inst, child_table, v=None):
    nd = ctx.nodes[inst.node]
    if nd.kind != "introduce":
        raise GraphError("egs_introduce_dim needs an introduce node")
    if v is not None and v != nd.vertex:
        raise GraphError(f"node introduces {nd.vertex}, not {v}")
    v, pos = nd.vertex, nd.vpos
    c = ctx.nodes[nd.children[0]]
    dvc, dv = c.vec[v], nd.vec[v]
    ext_down = frozenset(trunc(t, pos) for t in inst.d_ext)
    best = INFTY
    if v not in inst.sel:
        ee1 = frozenset((pair_key(trunc(a, pos), trunc(b, pos)), d)
                        for (a, b), d in inst.d_extext)  # (I5) at its largest
        v_by_ext = _cov_any(dv, inst.d_extext)
        for sig, z in _sizes(child_table):
            if z >= best or sig[0] != inst.sel:  # (I1)
                continue
            int1, ii1 = sig[1], sig[2]
            if not solves(sig, inst.sel, int1, ext_down, ii1, ee1):
                continue
            if not all(_coord_ok(r, pos, dvc) and trunc(r, pos) in int1
                       for r in inst.d_int):  # (I2)
                continue
            if not all(_coord_ok(a, pos, dvc) and _coord_ok(b, pos, dvc)
                       and (pair_key(trunc(a, pos), trunc(b, pos)), d) in ii1
                       for (a, b), d in inst.d_intint):  # (I4)
                continue
            if not (v_by_ext or _cov_any(dvc, ii1) or
                    _v_by_int_ext(int1, inst.d_ext, pos, dvc, dv)):  # (I6)
                continue
            best = z
    else:
        sel1 = inst.sel - {v}
        ext1 = ext_down | {dvc}
        ee1 = _type2_extext(ctx, nd, c, inst, pos, dvc)
        for sig, z in _sizes(child_table):
            if z + 1 >= best or sig[0] != sel1:  # (I'1)
                continue
            int1, ii1 = sig[1], sig[2]
            if not solves(sig, sel1, int1, ext1, ii1, ee1):
                continue
            if not all(_coord_ok(r, pos, dvc) and trunc(r, pos) in int1
                       for r in inst.d_int if r != dv):  # (I'2)
                continue
            if not all(_type2_ii_ok(a, b, d, pos, dvc, dv, int1, ii1)
                       for (a, b), d in inst.d_intint):  # (I'4)
                continue
            best = z + 1
    return best


def _v_by_int_ext(int1, d_ext, pos, dvc, dv):
    for r in int1:
        rr = ext(r, pos, vmin(r, dvc))
        for t in d_ext:
            if _cov(dv, rr, t, vmin(rr, t)):
                return True
    return False


def _type2_ii_ok(a, b, d, pos, dvc, dv, int1, ii1):
    # The coordinate rule only makes sense for vectors other than v's own:
    # v's vector has 0 at its coordinate while the formula gives >= 2.
    for r in (a, b):
        if r != dv and not _coord_ok(r, pos, dvc):
            return False
    if a != dv and b != dv and (pair_key(trunc(a, pos), trunc(b, pos)), d) in ii1:
        return True
    if a == dv and d == b[pos] and trunc(b, pos) in int1:
        return True
    if b == dv and d == a[pos] and trunc(a, pos) in int1:
        return True
    return False


def _type2_extext(ctx, nd, c, inst, pos, dvc):
    """Largest child D_extext meeting (I'5)."""
    rows = ctx.dm.rows
    ok = set()
    out = nd.out
    for i, x in enumerate(out):
        for y in out[i + 1:]:
            d = rows[x][y]
            if (pair_key(nd.vec[x], nd.vec[y]), d) in inst.d_extext:
                ok.add((pair_key(c.vec[x], c.vec[y]), d))
    for x in out:
        if nd.vec[x] in inst.d_ext:
            d = nd.vec[x][pos]
            ok.add((pair_key(dvc, c.vec[x]), d))
    return frozenset(ok) & c.out_pairs()


def egs_forget_dim(ctx, inst, child_table, v=None):
    nd = ctx.nodes[inst.node]
    if nd.kind != "forget":
        raise GraphError("egs_forget_dim needs a forget node")
    if v is not None and v != nd.vertex:
        raise GraphError(f"node forgets {nd.vertex}, not {v}")
    v, pos = nd.vertex, nd.vpos
    c = ctx.nodes[nd.children[0]]
    if v in inst.sel:
        return INFTY
    ext1 = frozenset(r for r in c.rout if trunc(r, pos) in inst.d_ext)  # (F3)
    ee1 = frozenset(p for p in c.out_pairs()
                    if (pair_key(trunc(p[0][0], pos), trunc(p[0][1], pos)), p[1])
                    in inst.d_extext)  # (F5)
    best = INFTY
    for sig, z in _sizes(child_table):
        if z >= best or sig[0] - {v} != inst.sel:  # (F1)
            continue
        int1, ii1 = sig[1], sig[2]
        if not solves(sig, sig[0], int1, ext1, ii1, ee1):
            continue
        if not all(any(trunc(t, pos) == r for t in int1) for r in inst.d_int):  # (F2)
            continue
        down = {(pair_key(trunc(a, pos), trunc(b, pos)), d) for (a, b), d in ii1}
        if not inst.d_intint <= down:  # (F4)
            continue
        best = z
    return best


def brute_egs_dim(ctx, inst):
    nd = ctx.nodes[inst.node]
    rows = ctx.dm.rows
    vec = nd.vec
    free = sorted(x for x in nd.proc if x not in nd.pos)
    proc = sorted(nd.proc)
    sel = sorted(inst.sel)
    for size in range(len(free) + 1):
        for extra in combinations(free, size):
            S = sel + list(extra)
            if _is_egs_solution(inst, rows, vec, proc, S):
                return len(S)
    return INFTY


def _is_egs_solution(inst, rows, vec, proc, S):
    inS = set(S)
    for x in proc:  # (S1)
        if x in inS:
            continue
        if any(rows[a][x] + rows[x][b] == rows[a][b] for a, b in combinations(S, 2)):
            continue
        if any(rows[s][x] + vmin(vec[x], r) == vmin(vec[s], r) for s in S for r in inst.d_ext):
            continue
        if _cov_any(vec[x], inst.d_extext):
            continue
        return False
    if not inst.d_int <= {vec[s] for s in S}:  # (S2)
        return False
    have = {(pair_key(vec[a], vec[b]), rows[a][b]) for a, b in combinations(S, 2)}
    return inst.d_intint <= have  # (S3)
