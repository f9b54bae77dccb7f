"""The ten acceptance criteria, each at its stated tolerance.

Every criterion prints one PASS/FAIL line (also collected into the pytest
terminal summary).  Run directly with ``python3 tests/test_acceptance.py``.
"""
import itertools
import math
import random
import time

import numpy as np
import pytest

from corpus import connected_upto, iter_connected, random_connected
from dp_helpers import context
from resolvekit._dpbase import INFTY
from resolvekit.dp_gs import EgsInstance, egs_leaf_dim, gs_dp
from resolvekit.dp_md import EmdInstance, emd_leaf_dim, md_dp
from resolvekit.gadgets import BUILDERS, build_gs_tw, build_smd_h, sperner_set_rep, witness_from_assignment
from resolvekit.graph import Graph
from resolvekit.oracles import brute_gs, brute_md, brute_smd, is_geodetic_set, is_resolving_set
from resolvekit.sat import PartitionedCnf, brute_sat, evaluate, random_partitioned_cnf
from resolvekit.smd import smd_solve, strong_resolving_graph
from resolvekit.vc import exact_vc, kernelize_gs_vc, kernelize_md_vc, kernelize_smd_vc, xp_gs_vc, xp_md_vc

RESULTS = []


def record(num, title, ok, detail, budget=None, elapsed=None):
    if budget is not None and elapsed > budget:
        ok = False
        detail += f"; over time budget {budget:.0f}s"
    timing = f" [{elapsed:.1f}s]" if elapsed is not None else ""
    line = f"criterion {num:2d} {'PASS' if ok else 'FAIL'}  {title}: {detail}{timing}"
    RESULTS.append(line)
    print(line)
    return ok


def mismatches(graphs, fast, slow):
    bad, total = [], 0
    for g in graphs:
        total += 1
        a, b = fast(g).optimum, slow(g).optimum
        if a != b:
            bad.append((sorted(g.edges()), a, b))
    return bad, total


def random_sample(seed, count, sizes):
    rng = random.Random(seed)
    return [random_connected(rng, rng.choice(sizes)) for _ in range(count)]


# --- 1-3: oracle equivalence ---------------------------------------------------

def criterion_dp(num, title, dp, brute, budget):
    t0 = time.perf_counter()
    bad1, n1 = mismatches(connected_upto(6), dp, brute)
    bad2, n2 = mismatches(random_sample(num, 200, (7, 8)), dp, brute)
    bad = bad1 + bad2
    detail = f"{n1} graphs n<=6 + {n2} random n in {{7,8}}, {len(bad)} mismatches"
    if bad:
        detail += f"; first {bad[0]}"
    return record(num, title, not bad, detail, budget, time.perf_counter() - t0)


def test_criterion_01_md_dp():
    assert criterion_dp(1, "md_dp == brute_md", md_dp, brute_md, 600)


def test_criterion_02_gs_dp():
    assert criterion_dp(2, "gs_dp == brute_gs", gs_dp, brute_gs, 600)


def test_criterion_03_smd():
    t0 = time.perf_counter()
    graphs = connected_upto(7) + random_sample(3, 200, (8, 9))
    bad = vc_bad = 0
    for g in graphs:
        opt = brute_smd(g).optimum
        bad += smd_solve(g).optimum != opt
        if g.n >= 2:  # the strong resolving graph needs two vertices
            vc_bad += len(exact_vc(strong_resolving_graph(g))) != opt
    detail = (f"{len(graphs)} graphs (all n<=7 + 200 random n in {{8,9}}), "
              f"{bad} solver mismatches, {vc_bad} vc(G_SR) mismatches")
    assert record(3, "smd_solve == brute_smd == vc(strong graph)", bad == vc_bad == 0, detail,
                  300, time.perf_counter() - t0)


# --- 4: leaf tables ------------------------------------------------------------------

def leaf_context():
    ctx = context(Graph(2, [(0, 1)]))
    leaf = next(i for i, nd in enumerate(ctx.nodes) if nd.kind == "leaf")
    return ctx, leaf, ctx.nodes[leaf].bag[0]


def expected_md_leaf(sel, has_int, has_pair, int_is_zero):
    # the leaf case table: 0 / 1 / +inf
    if not sel and not has_int and not has_pair:
        return 0
    if sel and (not has_int or int_is_zero):
        return 1
    return INFTY


def expected_gs_leaf(sel, has_int, has_intint, has_extext, int_is_zero):
    if not sel and not has_int and not has_intint:
        return 0
    if sel and (not has_int or int_is_zero) and not has_intint:
        return 1
    return INFTY


def test_criterion_04_leaf_tables():
    t0 = time.perf_counter()
    ctx, leaf, v = leaf_context()
    zero, one = (0,), (1,)
    bad = []
    checked = 0
    for vec in (zero, one):
        for sel, has_int, has_pair in itertools.product((False, True), repeat=3):
            inst = EmdInstance(leaf, frozenset([v]) if sel else frozenset(),
                               frozenset([vec]) if has_int else frozenset(),
                               frozenset(),
                               frozenset([(zero, one)]) if has_pair else frozenset())
            want = expected_md_leaf(sel, has_int, has_pair, vec == zero)
            checked += 1
            if emd_leaf_dim(ctx, inst) != want:
                bad.append(("md", inst, want))
        for sel, has_int, has_ii, has_ee in itertools.product((False, True), repeat=4):
            inst = EgsInstance(leaf, frozenset([v]) if sel else frozenset(),
                               frozenset([vec]) if has_int else frozenset(),
                               frozenset(),
                               frozenset([((zero, zero), 0)]) if has_ii else frozenset(),
                               frozenset([((one, one), 1)]) if has_ee else frozenset())
            want = expected_gs_leaf(sel, has_int, has_ii, has_ee, vec == zero)
            checked += 1
            if egs_leaf_dim(ctx, inst) != want:
                bad.append(("gs", inst, want))
    detail = f"{checked} flag combinations (8 md + 16 gs, per internal vector), {len(bad)} wrong"
    if bad:
        detail += f"; first {bad[0]}"
    assert record(4, "leaf tables", not bad, detail, None, time.perf_counter() - t0)


# --- 5 and 10: kernels -------------------------------------------------------------

KERNELS = (("md", kernelize_md_vc, brute_md, 2), ("smd", kernelize_smd_vc, brute_smd, 2),
           ("gs", kernelize_gs_vc, brute_gs, 5))


def kernel_corpus():
    rng = random.Random(5)
    return [random_connected(rng, rng.randint(2, 10)) for _ in range(300)]


def test_criterion_05_kernel_safety():
    t0 = time.perf_counter()
    bad, runs = [], 0
    for g in kernel_corpus():
        for name, kern, brute, _ in KERNELS:
            opt = brute(g).optimum
            for k in range(g.n + 1):
                kr = kern(g, k)
                runs += 1
                reduced = not kr.no_instance and brute(kr.graph).optimum <= kr.k
                if reduced != (opt <= k):
                    bad.append((name, sorted(g.edges()), k))
    detail = f"{runs} (graph, k, kernel) runs over 300 graphs, {len(bad)} answer changes"
    if bad:
        detail += f"; first {bad[0]}"
    assert record(5, "kernel safety", not bad, detail, None, time.perf_counter() - t0)


def test_criterion_10_kernel_size():
    t0 = time.perf_counter()
    bad, runs = [], 0
    for g in kernel_corpus():
        for name, kern, _, factor in KERNELS:
            for k in range(g.n + 1):
                kr = kern(g, k)
                if kr.no_instance:
                    continue
                runs += 1
                x = len(kr.cover)
                if kr.graph.n > x + factor * 2 ** x:
                    bad.append((name, sorted(g.edges()), k, kr.graph.n, x))
    detail = f"{runs} reduced instances, {len(bad)} over |X| + c*2^|X| (c=2 md/smd, 5 gs)"
    if bad:
        detail += f"; first {bad[0]}"
    assert record(10, "kernel size bounds", not bad, detail, None, time.perf_counter() - t0)


# --- 6: XP algorithms ----------------------------------------------------------------

def test_criterion_06_xp():
    t0 = time.perf_counter()
    bad, total = [], 0
    for n in range(1, 10):
        for g in iter_connected(n):
            total += 1
            if xp_md_vc(g).optimum != brute_md(g).optimum:
                bad.append(("md", sorted(g.edges())))
            if xp_gs_vc(g).optimum != brute_gs(g).optimum:
                bad.append(("gs", sorted(g.edges())))
    detail = f"{total} connected graphs n<=9, {len(bad)} mismatches"
    if bad:
        detail += f"; first {bad[0]}"
    assert record(6, "xp_md_vc / xp_gs_vc == brute", not bad, detail, None,
                  time.perf_counter() - t0)


# --- 7 and 9: gadget constructions --------------------------------------------------

VERIFY = {"md": is_resolving_set, "gs": is_geodetic_set}


def satisfiable_formulas(seed, count):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        pc = random_partitioned_cnf(rng, rng.randint(1, 2), rng.randint(1, 3))
        a = brute_sat(pc.num_vars, pc.clauses)
        if a is not None:
            out.append((pc, a))
    return out


def test_criterion_07_forward_witness():
    t0 = time.perf_counter()
    fails = {}
    formulas = satisfiable_formulas(7, 30)
    for tag, build in sorted(BUILDERS.items()):
        if not tag.startswith(("md", "gs")):
            continue
        fails[tag] = 0
        for pc, a in formulas:
            gg = build(pc)
            S = witness_from_assignment(gg, pc, a)
            if len(S) != gg.k or not VERIFY[tag[:2]](gg.graph, None, S):
                fails[tag] += 1
    ok = not any(fails.values())
    detail = "30 formulas; failures " + ", ".join(f"{t}={c}/30" for t, c in fails.items())
    assert record(7, "witness at exactly k", ok, detail, 300, time.perf_counter() - t0)


def sperner_check(ell):
    p, rep = sperner_set_rep(ell)
    masks = np.array([sum(1 << (x - 1) for x in rep[i]) for i in range(1, ell + 1)],
                     dtype=np.uint64)
    if len(set(masks.tolist())) != ell or any(len(s) != p for s in rep.values()):
        return False
    for start in range(0, ell, 1024):
        a = masks[start:start + 1024, None]
        sub = (a & masks[None, :]) == a  # a is a subset of b
        np.fill_diagonal(sub[:, start:start + 1024], False)
        if sub.any():
            return False
    return True


def test_criterion_09_structure():
    t0 = time.perf_counter()
    rng = random.Random(9)
    formulas = [pc for pc, _ in satisfiable_formulas(7, 30)]
    formulas += [random_partitioned_cnf(rng, rng.randint(1, 4), rng.randint(1, 6)) for _ in range(70)]
    diam = sep = 0
    for pc in formulas:
        gg = build_gs_tw(pc)
        diam = max(diam, gg.graph.dm.diameter)
        removed = set(gg.groups["separator"])
        seen = set(removed)
        for s in range(gg.graph.n):
            if s in seen:
                continue
            seen.add(s)
            stack, size = [s], 0
            while stack:
                u = stack.pop()
                size += 1
                for w in gg.graph.adj[u]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            sep = max(sep, size)
    ells = sorted(set(range(1, 301)) | {math.comb(2 * p, p) for p in range(1, 8)}
                  | {math.comb(2 * p, p) + 1 for p in range(1, 7)} | {5000, 10000}
                  | {rng.randint(301, 10000) for _ in range(10)})
    bad_ells = [ell for ell in ells if not sperner_check(ell)]
    ok = diam <= 5 and sep <= 6 and not bad_ells
    detail = (f"{len(formulas)} gs-tw instances: max diameter {diam}, max component after "
              f"separator removal {sep}; {len(ells)} Sperner sizes up to 10000, "
              f"{len(bad_ells)} not antichains")
    assert record(9, "structural checks", ok, detail, None, time.perf_counter() - t0)


# --- 8: SMD pipeline -------------------------------------------------------------------

def exact_corpus():
    rng = random.Random(8)
    parts = {"alpha": [1], "beta": [2], "gamma": [3]}
    all_signs = [tuple(s * v for s, v in zip(signs, (1, 2, 3)))
                 for signs in itertools.product((1, -1), repeat=3)]
    out = [PartitionedCnf(1, parts, all_signs, 3)]
    out.append(PartitionedCnf(1, parts, all_signs[:7], 3))
    while len(out) < 10:
        out.append(random_partitioned_cnf(rng, 1, rng.randint(1, 8), exact=True))
    return out


def test_criterion_08_smd_pipeline():
    t0 = time.perf_counter()
    bad, sat_count = [], 0
    for pc in exact_corpus():
        sat = any(evaluate(pc.clauses, dict(zip((1, 2, 3), bits)))
                  for bits in itertools.product((False, True), repeat=3))
        sat_count += sat
        gg = build_smd_h(pc)
        target = 3 * pc.n_per_part + 2 * pc.m
        if (len(exact_vc(gg.graph)) <= target) != sat or gg.k != target:
            bad.append(pc.clauses)
    detail = f"10 exact formulas ({sat_count} satisfiable), {len(bad)} disagreements"
    assert record(8, "SAT <=> vc(H) <= 3n+2m", not bad, detail, 60, time.perf_counter() - t0)


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion"):
            try:
                fn()
            except AssertionError:
                pass
