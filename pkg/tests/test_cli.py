import json

import pytest

from homcoh import cli
from homcoh.parser import parse_bundle


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_coh_concentrated(capsys):
    code, out = run(capsys, "coh", "D5", "P4", "[0,0,1,-2,0]")
    assert code == 0
    assert out.strip() == "H^1 = V[0,0,0,0,0], dim 1"


def test_coh_vanishing_and_quiet(capsys):
    code, out = run(capsys, "coh", "D5", "P4", "[0,0,0,-1,1]")
    assert code == 0 and out.strip() == "H^* = 0"
    code, out = run(capsys, "coh", "D5", "P4", "[0,0,0,-1,1]", "--quiet")
    assert code == 0 and out.strip() == "0"
    code, out = run(capsys, "coh", "B4", "Q4", "[0,0,1,-2]", "--quiet")
    assert code == 0 and out.strip() == "V[0,0,0,0] @ 1"


def test_coh_usage_error(capsys):
    code, _ = run(capsys, "coh", "D5", "P4", "[0,0,0]")
    assert code == 2


def test_dim(capsys):
    code, out = run(capsys, "dim", "D5", "[1,0,0,0,0]")
    assert code == 0 and out.strip() == "10"


def test_tensor(capsys):
    code, out = run(capsys, "tensor", "D5", "P4", "[1,0,0,0,0]", "[1,0,0,0,0]")
    assert code == 0
    assert out.splitlines() == ["E[0,1,0,0,0]", "E[2,0,0,0,0]"]


def test_ext_text(capsys):
    code, out = run(capsys, "ext", "Sym2 Uv (2)", "Uv")
    assert code == 0 and out.strip() == "C[-3]"
    code, out = run(capsys, "ext", "U(1)", "Uv")
    assert code == 0 and out.strip() == "0"
    code, out = run(capsys, "ext", "O", "O(1)", "--euler")
    assert code == 0 and out.strip() == "16"
    code, out = run(capsys, "ext", "Sym2 Rv", "Uv", "--equivariant")
    assert code == 0 and out.splitlines()[0] == "C[-1]"


def test_ext_ambiguous_exit_code(capsys):
    code, out = run(capsys, "ext", "Rv", "Uv")
    assert code == 3
    assert "ambiguous" in out


def test_verify_builtin_collections(capsys):
    code, out = run(capsys, "verify", "spinor-kp")
    assert code == 0
    assert "PASS" in out
    assert "16 identity checks, 120 vanishing checks" in out


def test_verify_failing_collection(tmp_path, capsys):
    f = tmp_path / "bad.col"
    f.write_text("O\nO\n")
    code, out = run(capsys, "verify", str(f))
    assert code == 1
    assert "FAIL" in out


def test_gram(capsys):
    code, out = run(capsys, "gram", "kuznetsov")
    assert code == 0
    rows = [line.split() for line in out.strip().splitlines()]
    assert len(rows) == 16
    assert rows[0][0] == "1" and rows[0][2] == "16"


def test_mutate_json_roundtrip(tmp_path, capsys):
    f = tmp_path / "pair.col"
    f.write_text("O(2)\nUv(2)\n")
    code, out = run(capsys, "mutate", str(f), "L", "1", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["recipe"] == "left-kernel"
    assert payload["ext"] == {"0": 10}
    assert parse_bundle(payload["result-expr"]) is not None
    reparsed = [parse_bundle(e) for e in payload["collection"]]
    assert len(reparsed) == 2


def test_mutate_ambiguous_exit(tmp_path, capsys):
    f = tmp_path / "amb.col"
    f.write_text("Rv\nUv\n")
    code, out = run(capsys, "mutate", str(f), "R", "1")
    assert code == 3


def test_replay(capsys):
    code, out = run(capsys, "replay", "spinor-kp")
    assert code == 0
    lines = out.strip().splitlines()
    assert sum(1 for line in lines if line.startswith("step")) == 16
    assert lines[-1] == "FINAL = Kuznetsov collection: MATCH"


def test_replay_json(capsys):
    code, out = run(capsys, "replay", "spinor-kp", "--json")
    assert code == 0
    payload = json.loads(out)
    assert len(payload["steps"]) == 16
    assert payload["final-matches"] and payload["gram-matches"]
    step1 = payload["steps"][0]
    assert set(step1) >= {"direction", "position", "ext", "recipe", "result-expr", "kclass"}
    assert len(step1["kclass"]) == 16
    for step in payload["steps"]:
        assert parse_bundle(step["result-expr"]) is not None


def test_corpus_cli(capsys):
    code, out = run(capsys, "corpus")
    assert code == 0
    assert out.strip().splitlines()[-1] == "PASS"
    code, out = run(capsys, "corpus", "--filter", "sym-power")
    assert code == 0 and "sym-power-sections" in out


def test_unknown_command_is_usage_error(capsys):
    assert cli.main(["frobnicate"]) == 2


def test_deterministic_output(capsys):
    _, out1 = run(capsys, "ext", "O", "That(5)")
    _, out2 = run(capsys, "ext", "O", "That(5)")
    assert out1 == out2
