import json
import subprocess
import sys

import pytest

from resolvekit.cli import format_solution, main, parse_solution
from resolvekit.graph import Graph, format_pace_gr, parse_graph, path_graph
from resolvekit.oracles import is_geodetic_set, is_resolving_set, is_strong_resolving_set
from resolvekit.treedecomp import format_td, heuristic_td, parse_td, validate_td

VERIFY = {"md": is_resolving_set, "gs": is_geodetic_set, "smd": is_strong_resolving_set}


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return write


@pytest.fixture
def p4(files):
    return files("p4.gr", "p tw 4 3\n1 2\n2 3\n3 4\n")


@pytest.fixture
def tiny_cnf(files):
    return files("f.cnf", "p cnf 3 1\n1 -2 3 0\n"), files("f.parts", "pa 1\npb 2\npg 3\n")


def run_json(argv, capsys):
    rc = main(argv + ["--json"])
    return rc, json.loads(capsys.readouterr().out)


def test_solve_path(p4, capsys):
    assert main(["solve", "md", p4]) == 0
    assert "md = 1" in capsys.readouterr().out


def test_solve_json_witness_verifies(p4, capsys):
    g = parse_graph(open(p4).read())
    for problem in ("md", "gs", "smd"):
        rc, out = run_json(["solve", problem, p4], capsys)
        assert rc == 0
        S = [v - 1 for v in out["witness"]]
        assert VERIFY[problem](g, None, S) and len(S) == out["optimum"]
        assert {"problem", "n", "m", "k", "optimum", "witness", "method", "elapsed_ms"} <= set(out)


def test_decision_exit_codes(p4, capsys):
    rc, out = run_json(["solve", "md", p4, "-k", "1"], capsys)
    assert rc == 0 and out["answer"] == "YES"
    rc, out = run_json(["solve", "md", p4, "-k", "0"], capsys)
    assert rc == 1 and out["answer"] == "NO"


@pytest.mark.parametrize("method", ["brute", "dp-tw", "xp-vc"])
def test_methods_agree(files, method, capsys):
    cycle = files("c6.gr", "p tw 6 6\n" + "".join(f"{i} {i % 6 + 1}\n" for i in range(1, 7)))
    rc, out = run_json(["solve", "gs", cycle, "--method", method], capsys)
    assert rc == 0 and out["optimum"] == 2


def test_smd_vc_method(p4, capsys):
    rc, out = run_json(["solve", "smd", p4, "--method", "smd-vc"], capsys)
    assert rc == 0 and out["optimum"] == 1


def test_check_valid_and_invalid(p4, files, capsys):
    assert main(["check", "md", p4, files("s1", "1\n")]) == 0
    assert main(["check", "md", p4, files("s2", "# middle\n2\n")]) == 1
    assert main(["check", "gs", p4, files("s3", "1 4\n")]) == 0
    assert main(["check", "gs", p4, files("s4", "1\n")]) == 1


def test_reduce_gs_tw_budget(tiny_cnf, capsys, tmp_path):
    cnf, parts = tiny_cnf
    out = str(tmp_path / "gs.gr")
    assert main(["reduce", "gs-tw", cnf, "--parts", parts, "-o", out, "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["k"] == 9
    g = parse_graph(open(out).read())
    assert g.n == report["n"]
    assert (tmp_path / "gs.gr.groups").exists()


def test_reduce_requires_partition(tiny_cnf, capsys):
    cnf, _ = tiny_cnf
    assert main(["reduce", "md-tw", cnf]) == 2
    assert "partition required" in capsys.readouterr().err


def test_overlapping_partition_reports_line(tiny_cnf, files, capsys):
    cnf, _ = tiny_cnf
    bad = files("bad.parts", "pa 1\npb 1\npg 3\n")
    assert main(["reduce", "md-tw", cnf, "--parts", bad]) == 2
    assert "line 2" in capsys.readouterr().err


def test_witness_md_tw(tiny_cnf, capsys):
    cnf, parts = tiny_cnf
    rc, out = run_json(["witness", "md-tw", cnf, "--parts", parts], capsys)
    assert rc == 0 and len(out["witness"]) == 33


def test_partition_then_reduce(files, capsys, tmp_path):
    cnf = files("g.cnf", "p cnf 3 2\n1 -2 3 0\n-1 2 0\n")
    prefix = str(tmp_path / "g2")
    assert main(["partition", cnf, "-o", prefix]) == 0
    assert open(prefix + ".cnf").read().startswith("p cnf 9 11")
    rc, out = run_json(["reduce", "gs-tw", prefix + ".cnf", "--parts", prefix + ".parts"], capsys)
    assert rc == 0 and out["n"] > 0
    assert main(["reduce", "smd-vc", prefix + ".cnf", "--parts", prefix + ".parts"]) == 2


def test_random_formula(capsys):
    rc, out = run_json(["reduce", "gs-vc", "--random", "2,3", "--seed", "4"], capsys)
    assert rc == 0 and out["k"] == 20


def test_max_n_guard(p4, capsys):
    assert main(["solve", "md", p4, "--max-n", "3"]) == 2


def test_bad_graph_is_error(files, capsys):
    assert main(["solve", "md", files("bad.gr", "p tw 3 1\n1 9\n")]) == 2
    assert main(["solve", "md", files("disc.gr", "p tw 3 1\n1 2\n")]) == 2


def test_stats_and_gsr_dump(p4, capsys):
    rc, out = run_json(["stats", p4], capsys)
    assert rc == 0 and out["diameter"] == 3 and out["vertex_cover"] == 2
    assert main(["gsr-dump", p4]) == 0
    sr = parse_graph(capsys.readouterr().out)
    assert sr.n == 4 and sr.has_edge(0, 3)


def test_kernelize(p4, capsys):
    assert main(["kernelize", "md", p4]) == 0


def test_solution_round_trip():
    S = [0, 4, 7]
    assert parse_solution(format_solution(S, header="md")) == S


def test_graph_and_td_round_trip():
    g = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 2)])
    h = parse_graph(format_pace_gr(g))
    assert sorted(h.edges()) == sorted(g.edges())
    td = heuristic_td(g)
    back = parse_td(format_td(td, g.n))
    validate_td(g, back)
    assert back.width == td.width


def test_console_entry_point(p4):
    res = subprocess.run([sys.executable, "-m", "resolvekit.cli", "solve", "md", p4],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "md = 1" in res.stdout
