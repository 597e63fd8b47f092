import json
import subprocess
import sys

import pytest

from starfactor.cli import main
from starfactor.named import cycle, double_star, path, star


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_analyze_p3(capsys):
    code, out = run_json(capsys, "analyze", "--g6", path(3).to_graph6())
    assert code == 0
    assert out["mu"] == 1 and out["def"] == 1 and out["mu_f"] == "1/1"
    assert out["n"] == 1 and out["witness"] == [1]


def test_analyze_c5(capsys):
    code, out = run_json(capsys, "analyze", "--g6", cycle(5).to_graph6())
    assert code == 0 and out["mu"] == 2 and out["mu_f"] == "5/2" and out["n"] == 0


def test_input_formats(capsys, tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("0 1\n1 2\n")
    code, out = run_json(capsys, "analyze", "--input", str(p))
    assert code == 0 and out["n_vertices"] == 3
    p.write_text("p edge 3 2\ne 1 2\ne 2 3\n")
    code, out = run_json(capsys, "analyze", "--input", str(p))
    assert code == 0 and out["n_vertices"] == 3


@pytest.mark.parametrize("content", ["", "\n\n", "!!!", "0 x\n"])
def test_bad_input_exit_1(capsys, tmp_path, content):
    p = tmp_path / "g.txt"
    p.write_text(content)
    code, _, err = run(capsys, "analyze", "--input", str(p))
    assert code == 1 and err.startswith("error:")


def test_factor_edge_double_star(capsys):
    code, out = run_json(capsys, "factor", "--g6", double_star().to_graph6(), "--edge", "0,1")
    assert code == 0
    assert out["excluded"] is True
    assert out["certificate"]["S"] == [0, 1] and out["certificate"]["iso"] == 4


def test_factor_star_max_two(capsys):
    code, out = run_json(capsys, "factor", "--g6", star(3).to_graph6(), "--max-star", "2")
    assert code == 0 and out["factor"] is None and out["reason"] == "iso>2|S|"


def test_factor_c6(capsys):
    code, out = run_json(capsys, "factor", "--g6", cycle(6).to_graph6())
    assert code == 0 and out["n"] == 0


def test_edge_test(capsys):
    code, out = run_json(capsys, "edge-test", "--g6", double_star().to_graph6())
    assert code == 0
    row = next(r for r in out["edges"] if r["edge"] == [0, 1])
    assert row["in_k12_factor"] is False and row["forced_zero_weight"] is True


def test_edge_not_in_graph(capsys):
    code, _, _ = run(capsys, "edge-test", "--g6", cycle(5).to_graph6(), "--edge", "0,2")
    assert code == 1


def test_critical(capsys):
    code, out = run_json(capsys, "critical", "--g6", cycle(5).to_graph6())
    assert code == 0 and out["critical"] is True and not out["bugs"]
    assert all(c["holds"] for c in out["checks"].values())
    code, out = run_json(capsys, "critical", "--g6", "C~")
    assert code == 0 and out["critical"] is False


def test_critical_scan(capsys, monkeypatch):
    monkeypatch.setenv("STARFACTOR_THREADS", "2")
    code, out = run_json(capsys, "critical", "--scan", "5")
    assert code == 0 and out["critical_found"] >= 2 and not out["bugs"]


def test_verify(capsys, tmp_path):
    code, out = run_json(capsys, "verify", "--scan", "2")
    assert code == 0 and out["passed"]
    bad = tmp_path / "corpus.g6"
    bad.write_text("Cs\n#$%^\n")
    code, _, _ = run(capsys, "verify", "--input", str(bad))
    assert code == 1


def test_bound_override(capsys):
    code, _, err = run(capsys, "analyze", "--g6", "Bw", "--bound-override", "nope=3")
    assert code == 1
    code, _, _ = run(capsys, "factor", "--g6", "Bw", "--bound-override", "certificate_vertices=20")
    assert code == 0


def test_bound_exceeded_exit_2(capsys):
    g6 = double_star().to_graph6()
    code, _, err = run(capsys, "edge-test", "--g6", g6, "--bound-override", "certificate_vertices=3")
    assert code == 0  # certificate search is skipped above the bound
    code, _, err = run(capsys, "critical", "--g6", "G~~~~{", "--bound-override", "colouring_edges=5")
    assert code == 2 and "bound" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "starfactor", "analyze", "--g6", "Bw", "--json"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["mu_f"] == "3/2"


def test_verify_full_n6(capsys):
    code, out = run_json(capsys, "verify", "--scan", "6")
    assert code == 0 and out["passed"] and out["graphs"] == 208
    assert all(m["failed"] == 0 for name, m in out["checks"].items() if not m["informational"])
    # Four graphs refute the forced-zero implication; reported, not fatal.
    assert out["checks"]["forced_zero"]["failed"] == 4
