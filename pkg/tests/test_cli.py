import json

import pytest

from annet import build_an
from annet.cli import export_dot, run


def test_gen_stats(capsys):
    assert run(["gen", "5", "--stats"]) == 0
    out = capsys.readouterr().out
    assert "60 vertices" in out and "120 edges" in out and "4-regular" in out and "diameter 5" in out


def test_gen_exports(tmp_path):
    dot, edges = tmp_path / "g.dot", tmp_path / "g.edges"
    assert run(["gen", "4", "--export-dot", str(dot), "--export-edges", str(edges)]) == 0
    assert dot.read_text().count(" -- ") == 18
    assert len(edges.read_text().splitlines()) == 18


def test_kappa_fragment_an5(capsys, tmp_path):
    path = tmp_path / "k.json"
    assert run(["kappa", "5", "--ell", "4", "--engine", "fragment", "--json", str(path)]) == 0
    out = capsys.readouterr().out
    assert "value=9" in out and "confirmed" in out
    doc = json.loads(path.read_text())
    payload = doc["results"][0]["payload"]
    assert payload["value"] == 9 and payload["witness"]["satisfied"]
    assert len(payload["witness"]["faulty_labels"]) == 9


def test_kappa_both_engines_an4(capsys):
    assert run(["kappa", "4", "--ell", "3", "--engine", "both"]) == 0
    out = capsys.readouterr().out
    assert out.count("value=5") == 2 and "disagree" not in out


def test_exhaustive_kappa_gated(capsys):
    assert run(["kappa", "5", "--ell", "4", "--engine", "exhaustive"]) == 2
    assert "--long-running" in capsys.readouterr().err


def test_cut_commands(capsys):
    assert run(["cut", "5", "--kind", "six-cycle"]) == 0
    assert "|F| = 9" in capsys.readouterr().out
    assert run(["cut", "5", "--kind", "vertex", "--at", "3"]) == 0
    assert run(["cut", "5", "--kind", "edge", "--at", "0,1"]) == 2
    capsys.readouterr()
    assert run(["cut", "4", "--kind", "vertex", "--ell", "3"]) == 1


def test_verify_default_an5(capsys):
    assert run(["verify", "5", "--suite", "default"]) == 0
    out = capsys.readouterr().out
    assert "all checked claims passed" in out and "FAIL" not in out


def test_verify_an4_reports_violation(capsys):
    assert run(["verify", "4", "--lemma", "small-cuts"]) == 1
    assert "3-path(4) + 3-path(4)" in capsys.readouterr().out


def test_verify_single_lemma(capsys):
    assert run(["verify", "6", "--lemma", "subgraph"]) == 0
    assert run(["verify", "5", "--lemma", "subgraph"]) == 0
    assert "skipped" in capsys.readouterr().out


def test_export_formats(capsys):
    assert run(["export", "3", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["vertices"] == ["123", "231", "312"] and len(doc["edges"]) == 3
    assert run(["export", "3", "--format", "edges"]) == 0
    assert capsys.readouterr().out == "0 1\n0 2\n1 2\n"


def test_export_dot_an3():
    net = build_an(3)
    text = export_dot(net.graph, net.labels)
    assert text.startswith("graph ") and "->" not in text
    assert text.count("label=") == 3 and text.count(" -- ") == 3
    for lab in ("123", "231", "312"):
        assert f'"{lab}"' in text
    assert text == export_dot(net.graph, net.labels)


def test_edge_list_round_trip_through_solve(tmp_path, capsys):
    path = tmp_path / "an4.edges"
    assert run(["export", "4", "--format", "edges"]) == 0
    path.write_text(capsys.readouterr().out)
    for ell, expected in [(2, 3), (3, 5), (4, 6)]:
        ledger = tmp_path / f"solve{ell}.json"
        assert run(["solve", "--edges", str(path), "--ell", str(ell), "--engine", "both",
                    "--json", str(ledger)]) == 0
        values = [r["payload"]["value"] for r in json.loads(ledger.read_text())["results"]]
        assert values == [expected, expected]


def test_ledger_is_deterministic(tmp_path):
    path = tmp_path / "run.json"
    argv = ["kappa", "4", "--ell", "4", "--engine", "both", "--workers", "1", "--zero-timings",
            "--json", str(path)]
    assert run(argv) == 0
    first = path.read_bytes()
    assert run(argv) == 0
    assert path.read_bytes() == first
    doc = json.loads(first)
    assert doc["config"]["workers"] == 1 and set(doc["timings"].values()) == {0}


def test_verify_ledger_deterministic(tmp_path):
    path = tmp_path / "v.json"
    argv = ["verify", "4", "--lemma", "basic", "--zero-timings", "--json", str(path)]
    run(argv)
    first = path.read_bytes()
    run(argv)
    assert path.read_bytes() == first


@pytest.mark.parametrize("argv", [[], ["bogus"], ["gen"], ["gen", "2"], ["kappa", "4"],
                                  ["kappa", "4", "--ell", "1"], ["gen", "x"],
                                  ["solve", "--edges", "/nonexistent", "--ell", "2"]])
def test_usage_errors(argv, capsys):
    assert run(argv) == 2


def test_connectivity_command(capsys):
    assert run(["connectivity", "5"]) == 0
    assert "kappa(AN_5) = 4" in capsys.readouterr().out


def test_workers_from_environment(monkeypatch, tmp_path):
    monkeypatch.setenv("AN_WORKERS", "1")
    path = tmp_path / "w.json"
    assert run(["kappa", "4", "--ell", "2", "--json", str(path)]) == 0
    assert json.loads(path.read_text())["config"]["workers"] == 1
