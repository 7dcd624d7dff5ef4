import json
from pathlib import Path

import pytest

from pathcoalg.cli import Caps, Config, main
from pathcoalg.errors import InputError

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_build_writes_coalgebra(capsys, tmp_path):
    out = tmp_path / "c.json"
    code, text, _ = run(capsys, "coalg", "build", DATA / "single_edge.json", "--field", "2^1", "--out", out)
    assert code == 0
    assert "dim 3 (|V| = 2, |E| = 1)" in text
    doc = json.loads(out.read_text())
    assert doc["basis"] == ["a", "b", "a->b"] and doc["field"] == "2^1"


def test_build_two_cycle_gf3(capsys):
    code, text, _ = run(capsys, "coalg", "build", DATA / "two_cycle.json", "--field", "3^1")
    assert code == 0
    assert len(json.loads(text)["basis"]) == 4


def test_build_unknown_vertex(capsys):
    code, _, err = run(capsys, "coalg", "build", DATA / "bad_edge.json", "--field", "2^1")
    assert code == 2
    assert "['a', 'c']" in err


@pytest.mark.parametrize("argv", [
    ["coalg", "build", "missing.json", "--field", "2^1"],
    ["coalg", "build", DATA / "single_edge.json", "--field", "4^1"],
    ["coalg", "build", DATA / "single_edge.json"],
    ["coalg", "aut", DATA / "single_edge.json"],
    ["coalg", "aut", DATA / "single_edge.json", "--field", "2^1", "--cap-brute-oracle", "0"],
    ["nonsense"],
])
def test_input_errors_exit_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_not_json(capsys, tmp_path):
    bad = tmp_path / "x.json"
    bad.write_text("{not json")
    assert run(capsys, "graph", "aut", bad)[0] == 2


def test_aut_both_single_edge(capsys):
    code, text, _ = run(capsys, "coalg", "aut", DATA / "single_edge.json", "--field", "2^1", "--mode", "both")
    assert code == 0
    assert text.strip() == "structured = brute = 2; formula (2·1)^1·1 = 2 ✓"


def test_aut_both_two_cycle(capsys):
    code, text, _ = run(capsys, "coalg", "aut", DATA / "two_cycle.json", "--field", "2^1",
                        "--mode", "both", "--format", "json")
    assert code == 0
    payload = json.loads(text)
    assert payload["brute"] == payload["structured"] == payload["formula"] == 8
    assert payload["set_equal"]


def test_aut_structured_lists_six(capsys):
    code, text, _ = run(capsys, "coalg", "aut", DATA / "single_edge.json", "--field", "3^1",
                        "--format", "json")
    assert code == 0
    assert len(json.loads(text)["triples"]) == 6


def test_aut_from_coalgebra_file(capsys, tmp_path):
    out = tmp_path / "c.json"
    run(capsys, "coalg", "build", DATA / "path2.json", "--field", "2^1", "--out", out)
    code, text, _ = run(capsys, "coalg", "aut", out, "--mode", "both", "--format", "json",
                        "--cap-brute-oracle", 2 ** 25)
    assert code == 0 and json.loads(text)["brute"] == 4


def test_aut_cap_exit_3(capsys):
    code, _, err = run(capsys, "coalg", "aut", DATA / "triangle.json", "--field", "3^1", "--mode", "brute")
    assert code == 3 and "cap" in err


def test_oracle_mismatch_exit_4(capsys, monkeypatch):
    import pathcoalg.cli as cli

    real = cli.enumerate_structured
    monkeypatch.setattr(cli, "enumerate_structured", lambda gc, auts: list(real(gc, auts))[1:])
    code, text, _ = run(capsys, "coalg", "aut", DATA / "single_edge.json", "--field", "2^1", "--mode", "both")
    assert code == 4 and "MISMATCH" in text


def test_loop_coalgebra_file(capsys, tmp_path):
    # a loop coalgebra reads back as a digraph with a loop, which C(Γ) rejects
    data = {"field": "2^1", "basis": ["a", "a->a"],
            "comult": {"a": [["a", "a", [1]]], "a->a": [["a", "a->a", [1]], ["a->a", "a", [1]]]},
            "counit": {"a": [1], "a->a": [0]}}
    path = tmp_path / "loop.json"
    path.write_text(json.dumps(data))
    code, _, _ = run(capsys, "coalg", "aut", path, "--mode", "both")
    assert code == 2
    code, text, _ = run(capsys, "coalg", "aut", path, "--mode", "brute")
    assert code == 0 and "brute = 1" in text


def test_verify_and_grouplikes(capsys, tmp_path):
    code, text, _ = run(capsys, "coalg", "verify", DATA / "triangle.json", "--field", "2^1")
    assert code == 0 and "coassociativity: PASS" in text
    code, text, _ = run(capsys, "coalg", "grouplikes", DATA / "path2.json", "--field", "2^1",
                        "--format", "json")
    assert code == 0 and json.loads(text)["grouplikes"] == ["a", "b", "c"]


def test_verify_failure_exit_4(capsys, tmp_path):
    data = {"field": "2^1", "basis": ["a"], "comult": {"a": [["a", "a", [1]]]}, "counit": {"a": [0]}}
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(data))
    assert run(capsys, "coalg", "verify", path)[0] == 4


def test_graph_aut(capsys):
    code, text, _ = run(capsys, "graph", "aut", DATA / "two_cycle.json", "--format", "json")
    assert code == 0 and json.loads(text)["order"] == 2
    code, text, _ = run(capsys, "graph", "aut", DATA / "triangle.json", "--format", "dot")
    assert code == 0 and text.startswith("digraph")


def test_realize_z2(capsys, tmp_path):
    code, text, _ = run(capsys, "realize", DATA / "z2_swap.json", "--field", "2^1", "--out", tmp_path / "b")
    assert code == 0
    assert "FAIL" not in text and "notice:" in text
    assert (tmp_path / "b" / "report.json").exists()


def test_realize_s3_items(capsys):
    code, text, _ = run(capsys, "realize", DATA / "s3_natural.json", "--field", "2^1", "--format", "json")
    assert code == 0
    checks = {c["name"][:3]: c["status"] for c in json.loads(text)["checks"]}
    assert [checks[k] for k in ("(1)", "(2)", "(3)", "(4)")] == ["PASS"] * 4
    assert checks["|Au"] == "SKIPPED"


def test_realize_bad_rep(capsys):
    code, _, err = run(capsys, "realize", DATA / "bad_rep.json", "--field", "2^1")
    assert code == 2 and "ρ not well-defined at word" in err


def test_group_class(capsys):
    assert run(capsys, "group", "class", DATA / "s3.json", "--p", "2")[1].startswith("IN")
    code, text, _ = run(capsys, "group", "class", DATA / "z2.json", "--p", "2", "--n", "1", "--format", "json")
    payload = json.loads(text)
    assert code == 0 and not payload["member"] and payload["witness_order"] == 2
    assert run(capsys, "group", "class", DATA / "trivial.json", "--p", "3")[1].startswith("IN")


def test_group_class_cap(capsys):
    code, _, _ = run(capsys, "group", "class", DATA / "s3.json", "--p", "2", "--cap-subgroup-enum", "3")
    assert code == 3


def test_sequence_check(capsys):
    code, text, _ = run(capsys, "sequence", "check", DATA / "two_cycle.json", "--field", "2^1")
    assert code == 0 and "FAIL" not in text and "[PASS] (e)" in text


@pytest.mark.parametrize("argv", [
    ["coalg", "build", DATA / "triangle.json", "--field", "2^2"],
    ["coalg", "aut", DATA / "two_cycle.json", "--field", "2^1", "--mode", "both", "--format", "json"],
    ["sequence", "check", DATA / "path2.json", "--field", "2^1", "--format", "json"],
    ["realize", DATA / "z3_natural.json", "--field", "2^1", "--format", "json"],
])
def test_outputs_are_byte_identical(capsys, argv):
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second


def test_config_validation():
    with pytest.raises(InputError):
        Caps(brute_oracle=0)
    with pytest.raises(InputError):
        Config(field="6^1")
    assert Config(field="2^2").get_field().q == 4
