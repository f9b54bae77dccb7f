"""Command-line front end.

Exit codes: 0 success (or YES in decision mode), 1 NO / invalid set /
unsatisfiable, 2 usage or input error, cap violation, timeout.
"""
import argparse
import json
import random
import sys
import time
from types import SimpleNamespace

from . import gadgets
from ._dpbase import Deadline
from .dp_gs import gs_dp
from .dp_md import md_dp
from .graph import GraphError, format_pace_gr, is_connected, read_graph, twin_classes
from .graph import simplicial_vertices
from .oracles import BRUTE, verify
from .sat import (CnfError, Cnf, brute_sat, exact_partition_3sat, format_dimacs,
                  format_partition, parse_dimacs, parse_partition, partition_3sat,
                  random_partitioned_cnf)
from .smd import smd_solve, strong_resolving_graph
from .treedecomp import TDError, best_td, heuristic_td, load_td, make_nice
from .vc import approx_vc_2, exact_vc, kernelize_gs_vc, kernelize_md_vc, kernelize_smd_vc
from .vc import xp_gs_vc, xp_md_vc

PROBLEMS = ("md", "gs", "smd")
METHODS = ("auto", "brute", "dp-tw", "xp-vc", "smd-vc")
CONSTRUCTIONS = ("md-tw", "md-vc", "gs-tw", "gs-vc", "smd-vc", "smd-h")
KERNELS = {"md": kernelize_md_vc, "smd": kernelize_smd_vc, "gs": kernelize_gs_vc}

AUTO_BRUTE_N = 12
AUTO_WIDTH = 3
AUTO_COVER = 20


class CliError(Exception):
    """Reported on stderr with exit code 2."""


# --- input helpers ------------------------------------------------------------

def _read(path):
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None


def parse_cnf_with_partition(cnf_path, parts_path=None, command=None):
    """PartitionedCnf when a sidecar is given, else the raw Cnf.

    Commands that need the partition (``reduce``, ``witness``) refuse a
    raw formula.
    """
    cnf = parse_dimacs(_read(cnf_path))
    if parts_path is None:
        if command in ("reduce", "witness"):
            raise CliError("partition required (or run partition first)")
        return cnf
    return parse_partition(_read(parts_path), cnf)


def parse_solution(text):
    """Whitespace-separated 1-indexed ids, ``#`` starts a comment."""
    ids = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        for tok in raw.split("#", 1)[0].split():
            try:
                ids.append(int(tok) - 1)
            except ValueError:
                raise CliError(f"solution line {lineno}: bad vertex id {tok!r}") from None
    return sorted(set(ids))


def format_solution(S, header=None):
    lines = [f"# {header}"] if header else []
    lines.append(" ".join(str(v + 1) for v in sorted(S)))
    return "\n".join(lines) + "\n"


def _load_graph(path, cfg):
    try:
        g = read_graph(path)
    except GraphError as exc:
        raise CliError(f"{path}: {exc}") from None
    if cfg.max_n is not None and g.n > cfg.max_n:
        raise CliError(f"n={g.n} exceeds --max-n {cfg.max_n}")
    return g


def _emit(text, out_path):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report(cfg, payload, text_lines):
    if cfg.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


# --- solve ----------------------------------------------------------------------

def _pick_method(problem, g, cfg):
    if cfg.method != "auto":
        return cfg.method
    if g.n <= AUTO_BRUTE_N:
        return "brute"
    if problem == "smd":
        return "smd-vc"
    if heuristic_td(g).width <= AUTO_WIDTH:
        return "dp-tw"
    if len(approx_vc_2(g)) <= AUTO_COVER:
        return "xp-vc"
    raise CliError(f"auto: no method fits (n={g.n}, heuristic width > {AUTO_WIDTH}, "
                   f"2-approximate cover > {AUTO_COVER})")


def _solve(problem, g, cfg, deadline):
    method = _pick_method(problem, g, cfg)
    if method == "brute":
        return BRUTE[problem](g, cap=max(g.n, 16), deadline=deadline)
    if method == "dp-tw":
        if problem == "smd":
            raise CliError("dp-tw supports md and gs only")
        td = load_td(cfg.td) if cfg.td else None
        td = best_td(g, td)
        if cfg.max_width is not None and td.width > cfg.max_width:
            raise CliError(f"decomposition width {td.width} exceeds --max-width {cfg.max_width}")
        ntd = make_nice(g, td)
        return (md_dp if problem == "md" else gs_dp)(g, ntd=ntd, deadline=deadline)
    if method == "xp-vc":
        if problem == "smd":
            raise CliError("xp-vc supports md and gs only; use smd-vc")
        return (xp_md_vc if problem == "md" else xp_gs_vc)(g, cfg.k, deadline=deadline)
    if method == "smd-vc":
        if problem != "smd":
            raise CliError("smd-vc solves smd only")
        return smd_solve(g)
    raise CliError(f"unknown method {method}")


def cmd_solve(cfg):
    g = _load_graph(cfg.graph, cfg)
    if not is_connected(g):
        raise CliError("input graph is disconnected")
    t0 = time.perf_counter()
    rep = _solve(cfg.problem, g, cfg, Deadline(cfg.time))
    elapsed = (time.perf_counter() - t0) * 1000
    if rep.optimum is not None and not verify(cfg.problem, g, rep.witness):
        raise AssertionError("solver returned a set that fails verification")
    decision = cfg.k is not None
    yes = rep.optimum is not None and (not decision or rep.optimum <= cfg.k)
    payload = {"problem": cfg.problem, "n": g.n, "m": g.edge_count, "k": cfg.k,
               "optimum": rep.optimum, "witness": [v + 1 for v in rep.witness],
               "method": rep.method, "elapsed_ms": round(elapsed, 3)}
    if decision:
        payload["answer"] = "YES" if yes else "NO"
    lines = []
    if decision:
        lines.append("YES" if yes else "NO")
    if rep.optimum is not None:
        lines.append(f"{cfg.problem} = {rep.optimum}  (method {rep.method})")
        lines.append("witness: " + " ".join(str(v + 1) for v in rep.witness))
    _report(cfg, payload, lines)
    return 0 if yes else 1


# --- kernelize ------------------------------------------------------------------

def cmd_kernelize(cfg):
    g = _load_graph(cfg.graph, cfg)
    if not is_connected(g):
        raise CliError("input graph is disconnected")
    k = cfg.k if cfg.k is not None else g.n
    kr = KERNELS[cfg.problem](g, k)
    deleted = [x + 1 for x, _, _ in kr.log]
    payload = {"problem": cfg.problem, "n": g.n, "m": g.edge_count, "k": k,
               "kernel_n": kr.graph.n, "kernel_m": kr.graph.edge_count,
               "kernel_k": kr.k, "no_instance": kr.no_instance,
               "cover": [v + 1 for v in kr.cover], "deleted": deleted,
               "kept": [v + 1 for v in kr.kept]}
    if cfg.out and not kr.no_instance:
        _emit(format_pace_gr(kr.graph), cfg.out)
    lines = [f"kernel: n {g.n} -> {kr.graph.n}, k {k} -> {kr.k}"]
    if kr.no_instance:
        lines.append("NO (budget exhausted by forced deletions)")
    elif not cfg.out:
        lines.append(format_pace_gr(kr.graph).rstrip())
    _report(cfg, payload, lines)
    return 1 if kr.no_instance else 0


# --- formulas -------------------------------------------------------------------

def _formula(cfg, command):
    if cfg.random:
        try:
            n, m = (int(x) for x in cfg.random.split(","))
        except ValueError:
            raise CliError("--random expects N,M") from None
        exact = cfg.construction in ("smd-vc", "smd-h")
        return random_partitioned_cnf(random.Random(cfg.seed), n, m, exact=exact)
    if not cfg.cnf:
        raise CliError("a CNF file or --random N,M is required")
    return parse_cnf_with_partition(cfg.cnf, cfg.parts, command)


def cmd_partition(cfg):
    pc = parse_cnf_with_partition(cfg.cnf, cfg.parts, "partition")
    if isinstance(pc, Cnf):
        pc = exact_partition_3sat(pc) if cfg.exact else partition_3sat(pc)
    elif cfg.exact:
        pc = exact_partition_3sat(pc)
    dimacs = format_dimacs(pc.num_vars, pc.clauses)
    parts = format_partition(pc)
    if cfg.out:
        _emit(dimacs, cfg.out + ".cnf")
        _emit(parts, cfg.out + ".parts")
    else:
        sys.stdout.write(dimacs)
        sys.stdout.write("".join("c " + line + "\n" for line in parts.splitlines()))
    if cfg.json:
        print(json.dumps({"num_vars": pc.num_vars, "clauses": pc.m,
                          "n_per_part": pc.n_per_part, "exact": pc.is_exact()}, sort_keys=True),
              file=sys.stderr)
    return 0


def _build(construction, pc):
    if construction == "smd-h":
        return gadgets.build_smd_h(pc)
    return gadgets.BUILDERS[construction](pc)


def cmd_reduce(cfg):
    pc = _formula(cfg, "reduce")
    gg = _build(cfg.construction, pc)
    gr = format_pace_gr(gg.graph)
    if cfg.out:
        _emit(gr, cfg.out)
        _emit(gg.annotation(), cfg.out + ".groups")
    payload = {"problem": cfg.construction, "n": gg.graph.n, "m": gg.graph.edge_count,
               "k": gg.k, "groups": {name: [v + 1 for v in ids] for name, ids in gg.groups.items()},
               "meta": {key: val for key, val in gg.meta.items() if key != "twin_pairs"}}
    if cfg.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        if not cfg.out:
            sys.stdout.write(gr)
            sys.stdout.write(gg.annotation())
        print(f"k = {gg.k}")
    return 0


def cmd_witness(cfg):
    if cfg.construction not in ("md-tw", "md-vc", "gs-tw", "gs-vc"):
        raise CliError(f"no witness rule for {cfg.construction}")
    pc = _formula(cfg, "witness")
    assignment = brute_sat(pc.num_vars, pc.clauses)
    if assignment is None:
        print("formula is unsatisfiable", file=sys.stderr)
        return 1
    gg = _build(cfg.construction, pc)
    S = gadgets.witness_from_assignment(gg, pc, assignment)
    problem = cfg.construction.split("-")[0]
    ok = verify(problem, gg.graph, S) and len(S) == gg.k
    payload = {"problem": problem, "n": gg.graph.n, "m": gg.graph.edge_count, "k": gg.k,
               "witness": [v + 1 for v in S], "size": len(S), "verified": ok,
               "assignment": {str(v): val for v, val in sorted(assignment.items())}}
    if cfg.out:
        _emit(format_solution(S, f"{cfg.construction} witness, k={gg.k}"), cfg.out)
    if cfg.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"witness size {len(S)}, k = {gg.k}, verified: {'yes' if ok else 'no'}")
        if not cfg.out:
            sys.stdout.write(format_solution(S))
    return 0 if ok else 1


# --- graph tools ----------------------------------------------------------------

def cmd_check(cfg):
    g = _load_graph(cfg.graph, cfg)
    if not is_connected(g):
        raise CliError("input graph is disconnected")
    S = parse_solution(_read(cfg.solution))
    if any(not 0 <= v < g.n for v in S):
        raise CliError("solution names a vertex outside the graph")
    ok = verify(cfg.problem, g, S)
    _report(cfg, {"problem": cfg.problem, "n": g.n, "m": g.edge_count, "size": len(S),
                  "valid": ok}, ["valid" if ok else "invalid"])
    return 0 if ok else 1


def cmd_stats(cfg):
    g = _load_graph(cfg.graph, cfg)
    conn = is_connected(g)
    false_cls, true_cls = twin_classes(g)
    cover = approx_vc_2(g, prune=True)
    payload = {"n": g.n, "m": g.edge_count, "connected": conn,
               "diameter": g.dm.diameter if conn else None,
               "false_twin_classes": sum(1 for c in false_cls if len(c) > 1),
               "true_twin_classes": sum(1 for c in true_cls if len(c) > 1),
               "simplicial": len(simplicial_vertices(g)),
               "approx_cover": len(cover),
               "heuristic_width": heuristic_td(g).width if g.n else -1}
    if g.n <= 64:
        payload["vertex_cover"] = len(exact_vc(g))
    _report(cfg, payload, [f"{key}: {payload[key]}" for key in sorted(payload)])
    return 0


def cmd_gsr_dump(cfg):
    g = _load_graph(cfg.graph, cfg)
    if not is_connected(g):
        raise CliError("input graph is disconnected")
    sr = strong_resolving_graph(g)
    _emit(format_pace_gr(sr), cfg.out)
    if cfg.json:
        print(json.dumps({"n": sr.n, "m": sr.edge_count}, sort_keys=True), file=sys.stderr)
    return 0


COMMANDS = {"solve": cmd_solve, "kernelize": cmd_kernelize, "reduce": cmd_reduce,
            "partition": cmd_partition, "witness": cmd_witness, "check": cmd_check,
            "stats": cmd_stats, "gsr-dump": cmd_gsr_dump}


# --- argument parsing -----------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("-o", dest="out", help="output file")
    common.add_argument("--max-n", type=int, help="refuse graphs with more vertices")

    ap = argparse.ArgumentParser(prog="resolvekit", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="minimum md/gs/smd set")
    p.add_argument("problem", choices=PROBLEMS)
    p.add_argument("graph")
    p.add_argument("--method", choices=METHODS, default="auto")
    p.add_argument("--td", help="PACE .td decomposition for dp-tw")
    p.add_argument("-k", type=int, help="decision mode: is there a solution of size <= k")
    p.add_argument("--max-width", type=int)
    p.add_argument("--time", type=float, help="time budget in seconds")

    p = sub.add_parser("kernelize", parents=[common], help="vertex-cover-parameter kernel")
    p.add_argument("problem", choices=PROBLEMS)
    p.add_argument("graph")
    p.add_argument("-k", type=int)

    for name, helptext in (("reduce", "build a hardness gadget graph"),
                           ("witness", "solution from a satisfying assignment")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("construction", choices=CONSTRUCTIONS)
        p.add_argument("cnf", nargs="?")
        p.add_argument("--parts", help="partition sidecar (pa/pb/pg lines)")
        p.add_argument("--random", metavar="N,M", help="random formula instead of a file")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("partition", parents=[common], help="3-SAT to 3-partitioned 3-SAT")
    p.add_argument("cnf")
    p.add_argument("--parts", help="already partitioned: only apply --exact")
    p.add_argument("--exact", action="store_true", help="one variable of every part per clause")

    p = sub.add_parser("check", parents=[common], help="verify a solution file")
    p.add_argument("problem", choices=PROBLEMS)
    p.add_argument("graph")
    p.add_argument("solution")

    p = sub.add_parser("stats", parents=[common], help="structural summary")
    p.add_argument("graph")

    p = sub.add_parser("gsr-dump", parents=[common], help="emit the strong resolving graph")
    p.add_argument("graph")
    return ap


def config_from_args(ns):
    defaults = dict(method="auto", td=None, k=None, max_width=None, time=None, parts=None,
                    random=None, seed=0, exact=False, cnf=None, construction=None)
    cfg = {key: getattr(ns, key, val) for key, val in defaults.items()}
    cfg.update(vars(ns))
    return SimpleNamespace(**cfg)


def run_command(cfg):
    return COMMANDS[cfg.command](cfg)


def main(argv=None):
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    cfg = config_from_args(ns)
    try:
        return run_command(cfg)
    except (CliError, CnfError, GraphError, TDError, gadgets.GadgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TimeoutError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
