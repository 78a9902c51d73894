import io
import json
import subprocess
import sys

import pytest

from dirmincut.cli import format_bench_csv, parse_bench_csv, run
from dirmincut.io import read_graph, write_graph
from dirmincut.graph import build_graph


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


@pytest.fixture
def graph_file(tmp_path):
    p = tmp_path / "g.txt"
    write_graph(p, build_graph(3, 0, [(0, 1, 3), (1, 2, 1), (0, 2, 4), (2, 0, 2)]))
    return str(p)


def test_exact(graph_file):
    code, out = call("exact", "--root", "0", graph_file)
    assert code == 0
    assert "value=3" in out and "sink_side=1" in out and "maxflow_calls=" in out


def test_exact_json_is_deterministic(graph_file):
    a = call("exact", "--json", graph_file)[1]
    b = call("exact", "--json", graph_file)[1]
    assert a == b
    assert json.loads(a)["value"] == 3


def test_approx_and_global(graph_file):
    assert "value=3" in call("approx", "--eps", "0.25", graph_file)[1]
    assert call("global", graph_file)[0] == 0


def test_usage_errors(graph_file, capsys):
    assert call("frobnicate")[0] == 2
    assert call("exact", "--eps", "3", graph_file)[0] == 2
    assert call("exact", "/nonexistent/file")[0] == 2
    assert call("exact", "--root", "9", graph_file)[0] == 2
    assert "dirmincut:" in capsys.readouterr().err


def test_wrong_graph_kind(tmp_path):
    p = tmp_path / "v.txt"
    p.write_text("p vc 2 1\nw 1 3\na 0 1\n")
    assert call("exact", str(p))[0] == 2
    code, out = call("vertex-approx", "--root", "0", str(p))
    assert code == 0 and "degenerate=true" in out


def test_sparsify(graph_file, tmp_path):
    out_file = tmp_path / "h.txt"
    code, out = call("sparsify", "--lambda", "4", "--k", "1", "--eps", "0.5", "--out", str(out_file), graph_file)
    assert code == 0 and "tau=1" in out and "mincut=" in out
    assert read_graph(out_file).n >= 2
    code, out = call("sparsify", "--variant", "binomial", "--lambda", "4", "--k", "2", graph_file)
    assert "p=1" in out


def test_pack(graph_file):
    code, out = call("pack", "--eps", "0.1", graph_file)
    assert code == 0 and "max_scaled_load=1" in out


def test_one_respect(graph_file, tmp_path):
    tree = tmp_path / "t.txt"
    tree.write_text("c tree\na 0 1\na 1 2\n")
    code, out = call("one-respect", "--tree", str(tree), graph_file)
    assert code == 0 and "value=3" in out
    tree.write_text("a 0 1\n")
    assert call("one-respect", "--tree", str(tree), graph_file)[0] == 2


def test_gen_planted_writes_answer(tmp_path):
    p = tmp_path / "g.txt"
    code, _ = call("gen", "--model", "planted-unbalanced", "--n", "64", "--k", "5", "--seed", "7", str(p))
    assert code == 0
    answer = (tmp_path / "g.txt.answer").read_text().splitlines()
    value = int(answer[0].split()[1])
    code, out = call("exact", "--json", str(p))
    assert json.loads(out)["value"] == value


def test_gen_stdout():
    code, out = call("gen", "--model", "cycle", "--n", "4")
    assert code == 0 and "p ec 4 4" in out


def test_bench_empty_and_missing(tmp_path):
    code, out = call("bench", str(tmp_path))
    assert code == 0 and parse_bench_csv(out) == []
    assert call("bench", str(tmp_path / "missing"))[0] == 2


def test_bench_rows_within_bound(tmp_path):
    for seed in ("1", "2"):
        call("gen", "--model", "erdos", "--n", "25", "--seed", seed, str(tmp_path / f"e{seed}.txt"))
    code, out = call("bench", str(tmp_path))
    rows = parse_bench_csv(out)
    assert code == 0 and len(rows) == 2
    for r in rows:
        assert r["maxflow_calls"] <= r["call_bound"]
        assert r["balanced_calls"] <= r["balanced_bound"]
    assert parse_bench_csv(format_bench_csv(rows)) == rows


def test_verify_suite_exit_code():
    code, out = call("verify", "--suite", "sparsifier")
    assert code == 0 and "PASS sparsifier/concentration" in out


def test_module_entry_point(graph_file):
    res = subprocess.run(
        [sys.executable, "-m", "dirmincut", "exact", graph_file], capture_output=True, text=True
    )
    assert res.returncode == 0 and "value=3" in res.stdout
