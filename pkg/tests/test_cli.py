import json
from pathlib import Path

import pytest

from cohomorder.cli import main
from cohomorder.graphs import cycle_graph, from_graph6

FIXTURES = Path(__file__).parent / "fixtures"
CORPUS = sorted(FIXTURES.glob("*.json"))


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("fixture", CORPUS, ids=lambda p: p.stem)
def test_construct_then_verify(tmp_path, capsys, fixture):
    report = tmp_path / "report.json"
    code, _, err = run(capsys, "construct", fixture, "--out", report)
    assert code == 0, err
    code, out, _ = run(capsys, "verify", report)
    assert code == 0 and out.strip().startswith("ok")


def test_construct_counts(tmp_path, capsys):
    code, out, err = run(capsys, "construct", FIXTURES / "chain3.json")
    assert code == 0
    summary = json.loads(out)["summary"]
    assert (summary["positive"], summary["negative"]) == (3, 3)
    assert "3 positive / 3 negative" in err
    code, out, _ = run(capsys, "construct", FIXTURES / "antichain2.json")
    assert json.loads(out)["summary"]["negative"] == 2


def test_malformed_and_truncated_input(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "construct", bad)
    assert code == 2 and "line 1" in err
    report = tmp_path / "r.json"
    run(capsys, "construct", FIXTURES / "chain3.json", "--out", report)
    cut = tmp_path / "cut.json"
    cut.write_text(report.read_text()[:200])
    code, _, err = run(capsys, "verify", cut)
    assert code == 2


def test_tampered_negative_names_pair(tmp_path, capsys):
    report = tmp_path / "r.json"
    run(capsys, "construct", FIXTURES / "chain3.json", "--out", report)
    obj = json.loads(report.read_text())
    for c in obj["certificates"]:
        if (c["source"], c["target"]) == ("c", "b"):
            c["rhs"] = c["lhs"]
    report.write_text(json.dumps(obj))
    code, out, _ = run(capsys, "verify", report)
    assert code == 1
    assert [l for l in out.splitlines() if l.startswith("FAIL")][0].startswith("FAIL c -> b")


def test_budget_exhaustion_exit_code(capsys):
    code, _, err = run(capsys, "graph", "cohom", "F(11/4)", "F(13/5)", "--budget", "3")
    assert code == 3 and "budget" in err


def test_bad_config_is_input_error(capsys):
    code, _, _ = run(capsys, "construct", FIXTURES / "chain3.json", "--seeds", "2", "4", "7/3")
    assert code == 2
    code, _, _ = run(capsys, "graph", "alpha", "F(3/2)")
    assert code == 2


def test_graph_commands(tmp_path, capsys):
    assert run(capsys, "graph", "cliquecover", "F(7/3)")[1] == "7/3\n"
    assert run(capsys, "graph", "alpha", "F(5/2)^2")[1] == "5\n"
    assert run(capsys, "graph", "cohom", "F(5/2)", "F(7/3)")[1] == "none\n"
    code, out, _ = run(capsys, "graph", "cohom", "F(5/2)", "F(8/3)")
    assert code == 0 and len(out.split()) == 5
    assert from_graph6(run(capsys, "graph", "export", "g")[1].strip()) == cycle_graph(5)
    code, out, _ = run(capsys, "graph", "product", "F(5/2)", "F(3/1)")
    assert from_graph6(out.strip()).n == 15


@pytest.mark.slow
def test_graph_alpha_cube(capsys):
    assert run(capsys, "graph", "alpha", "F(5/2)^3")[1] == "10\n"


def test_demos(tmp_path, capsys):
    code, out, _ = run(capsys, "demo", "counterexample")
    assert code == 0 and "7/3" in out and "spectral model: sound" in out
    code, out, _ = run(capsys, "demo", "xif", "8", "3")
    assert out.startswith("E_{8/3}") and "OddSplit" in out
    assert run(capsys, "demo", "dyadic", "5", "2", "1/10")[1] == "(5, 13)\n"
    dest = tmp_path / "anti.json"
    code, out, _ = run(capsys, "demo", "antichain", "3", "--json", "--out", dest)
    assert code == 0 and json.loads(out)["ok"] and json.loads(dest.read_text()) == json.loads(out)


def test_no_floats_in_outputs(capsys):
    for argv in (["demo", "counterexample", "--json"], ["construct", FIXTURES / "diamond.json"]):
        _, out, _ = run(capsys, *argv)

        def walk(x):
            if isinstance(x, float):
                raise AssertionError(f"float {x} in output")
            if isinstance(x, dict):
                for v in x.values():
                    walk(v)
            if isinstance(x, list):
                for v in x:
                    walk(v)

        walk(json.loads(out))
