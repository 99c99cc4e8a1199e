"""Command-line interface: dispatch, formats, exit codes."""

import json

import pytest

from qtft.cli import main
from qtft.frobenius import FrobeniusData, perturbed_nonassociative, quantum_point
from qtft.tft import StableGraph


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out.strip(), captured.err.strip()


def test_fock_act_example(capsys):
    code, out, _ = run(capsys, "fock", "act", "--op", "L:5", "--poly", "T_7")
    assert code == 0
    assert out == "5/2*T_2"


def test_fock_act_witt(capsys):
    code, out, _ = run(capsys, "fock", "act", "--op", "v:2", "--poly", "t_5")
    assert code == 0
    assert out == "4*t_3"


def test_fock_bracket(capsys):
    code, out, _ = run(
        capsys, "fock", "bracket", "--a", "L:1", "--b", "L:2", "--poly", "T_7"
    )
    assert code == 0
    # [L_1, L_2] = -L_3, and L_3 T_7 = (7-3+1/2) T_4
    assert out == "-9/2*T_4"


def test_fock_central(capsys):
    code, out, _ = run(capsys, "fock", "central", "--m", "2", "--N", "10")
    assert code == 0
    assert out == "1/2"


def test_tft_dim_example(capsys):
    code, out, _ = run(capsys, "tft", "dim", "--g", "0", "--n", "3")
    assert code == 0
    assert out == "0"


def test_tft_eval_with_files(capsys, tmp_path):
    graph = StableGraph(
        [(0, ["a", "p0", "p1"]), (0, ["b", "p2", "p3"])],
        [("a", "b")],
        ["p0", "p1", "p2", "p3"],
    )
    gfile = tmp_path / "graph.json"
    gfile.write_text(graph.to_json())
    ffile = tmp_path / "frob.json"
    ffile.write_text(quantum_point().to_json())
    code, out, _ = run(
        capsys, "tft", "eval", "--graph", str(gfile), "--frob", str(ffile)
    )
    assert code == 0
    assert "q^2" in out


def test_tft_check(capsys, tmp_path):
    gfile = tmp_path / "graph.json"
    gfile.write_text(
        StableGraph([(1, ["p0"])], [], ["p0"]).to_json()
    )
    code, out, _ = run(
        capsys, "tft", "check", "--graph", str(gfile), "--trials", "5"
    )
    assert code == 0
    assert "agree" in out


def test_nov_roundtrip(capsys):
    code, out, _ = run(capsys, "nov", "divided-power", "--k", "2", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["terms"] == [{"alpha": [], "v": 2, "c": "1/2"}]
    code, out, _ = run(
        capsys, "nov", "mul", "--a", json.dumps(obj), "--b", json.dumps(obj)
    )
    assert code == 0
    assert "v^4" in out or "1/4" in out


def test_nov_degree(capsys):
    code, out, _ = run(
        capsys, "nov", "degree", "--alpha", "2", "--v", "3", "--c1", "1"
    )
    assert code == 0
    assert out == "10"


def test_frob_validate_pass_and_fail(capsys, tmp_path):
    good = tmp_path / "good.json"
    good.write_text(quantum_point().to_json())
    code, out, _ = run(capsys, "frob", "validate", str(good))
    assert code == 0
    assert "[pass]" in out

    bad = tmp_path / "bad.json"
    bad.write_text(perturbed_nonassociative().to_json())
    code, out, _ = run(capsys, "frob", "validate", str(bad))
    assert code == 1
    assert "FAIL" in out


def test_frob_star_default_point(capsys):
    code, out, _ = run(capsys, "frob", "star", "--x", "1", "--k", "4")
    assert code == 0
    assert out == "q^3"


def test_frob_assoc(capsys):
    code, out, _ = run(
        capsys, "frob", "assoc", "--inputs", "1;1;1;1", "--format", "json"
    )
    assert code == 0
    obj = json.loads(out)
    assert obj["equal"] is True
    assert obj["12|34"] == "q^2"


def test_descend_commands(capsys):
    code, out, _ = run(capsys, "descend", "vars", "--bound", "4")
    assert code == 0
    assert "t_{0,0}" in out and "degree -4" in out

    code, out, _ = run(
        capsys, "descend", "specialize", "t_{2,1}*t_{0,0} + t_{3,0}"
    )
    assert code == 0
    assert out == "t_{3,0}"

    code, out, _ = run(
        capsys, "descend", "dims", "--bound", "4", "--format", "json"
    )
    assert code == 0
    obj = json.loads(out)
    assert obj["hopf"]["4"] == 2 or obj["hopf"][4] == 2


def test_schurq_commands(capsys):
    code, out, _ = run(capsys, "schurq", "expand", "--r", "1", "--vars", "2")
    assert code == 0
    assert out == "2*x0 + 2*x1"
    code, out, _ = run(capsys, "schurq", "coproduct", "--r", "2")
    assert code == 0
    assert out == "Q_0(x)Q_2 + Q_1(x)Q_1 + Q_2(x)Q_0"


def test_verify_single_suite(capsys):
    code, out, _ = run(capsys, "verify", "basis-change")
    assert code == 0
    assert "[PASS]" in out
    assert "checks passed" in out


def test_verify_json_format(capsys):
    code, out, _ = run(capsys, "verify", "divided-powers", "--format", "json")
    assert code == 0
    certs = json.loads(out)
    assert certs[0]["passed"] is True
    assert certs[0]["engine_version"]
    assert certs[0]["input_digest"]


def test_input_errors_exit_2(capsys):
    code, _, err = run(capsys, "tft", "eval", "--graph", "/no/such/file.json")
    assert code == 2
    assert "no such file" in err
    code, _, err = run(capsys, "fock", "act", "--op", "L5", "--poly", "T_1")
    assert code == 2
    code, _, err = run(capsys, "descend", "specialize", "t_{bad}")
    assert code == 2
    code, _, err = run(capsys, "verify", "no-such-suite")
    assert code == 2


def test_unknown_subcommand_exits_nonzero(capsys):
    with pytest.raises(SystemExit):
        main(["bogus"])
