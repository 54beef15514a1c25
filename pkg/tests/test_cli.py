import json
import subprocess
import sys
from pathlib import Path

import pytest

from wadf.cli import main

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def error_of(capsys, *argv):
    code, out, err = run(capsys, *argv)
    lines = err.strip().splitlines()
    assert len(lines) == 1
    doc = json.loads(lines[0])
    assert doc["exit"] == code
    return code, doc


def test_solve_complete(capsys):
    doc = run_json(capsys, "solve", "--sem", "complete", DATA / "flat4.wadf")
    assert doc["format"] == 1 and doc["engine"] == "unit"
    assert doc["count"] == 2
    assert doc["interpretations"] == [
        {"a": "0.8", "b": "u", "c": "u", "d": "u"},
        {"a": "0.8", "b": "0.5", "c": "0.5", "d": "0.6"},
    ]
    assert doc["exhaustive"] is False


def test_solve_preferred(capsys):
    doc = run_json(capsys, "solve", "--sem", "preferred", DATA / "mutual.wadf")
    assert doc["interpretations"] == [{"a": "t", "b": "f"}, {"a": "f", "b": "t"}]
    assert doc["exhaustive"] is True


def test_grounded(capsys):
    doc = run_json(capsys, "solve", "--sem", "grounded", DATA / "refined4.wadf")
    assert doc["interpretations"] == [{"a": "0.8", "b": "0.5", "c": "0.5", "d": "0.6"}]
    doc = run_json(capsys, "grounded", DATA / "review.wadf")
    assert doc["interpretations"] == [{"a": "tendency_accept", "s": "accept", "m": "borderline"}]
    assert doc["steps"] == 3


def test_verify(capsys):
    doc = run_json(capsys, "verify", "--sem", "complete", "--interpretation", DATA / "flat4_model.json",
                   DATA / "flat4.wadf")
    assert doc["verdict"] is True and doc["diagnostic"] is None
    doc = run_json(capsys, "verify", "--sem", "admissible", "--interpretation", DATA / "flat4_bad_a.json",
                   DATA / "flat4.wadf")
    assert doc["verdict"] is False and doc["diagnostic"]["statement"] == "a"
    doc = run_json(capsys, "verify", "--sem", "model", "--interpretation", DATA / "flat4_all_u.json",
                   DATA / "flat4.wadf")
    assert doc["verdict"] is False
    doc = run_json(capsys, "verify", "--sem", "stable", "--assumed", "[0,0.5]", "--interpretation",
                   DATA / "flat4_model.json", DATA / "flat4.wadf")
    assert doc["verdict"] is True


def test_verify_grounded_indeterminate(capsys):
    code, out, err = run(capsys, "verify", "--sem", "grounded", "--max-steps", "1", "--interpretation",
                         DATA / "refined4_model.json", DATA / "refined4.wadf")
    assert code == 5
    assert json.loads(out)["verdict"] == "indeterminate"
    assert json.loads(err)["error"] == "not-converged"


def test_stable(capsys):
    doc = run_json(capsys, "stable", "--interpretation", DATA / "flat4_model.json", "--assumed", "[0,0.5]",
                   DATA / "flat4.wadf")
    assert doc["verdict"] == "stable"
    assert doc["reduct_statements"] == ["a", "d"]
    assert doc["reduct_grounded"] == {"a": "0.8", "d": "0.6"}
    doc = run_json(capsys, "stable", "--interpretation", DATA / "flat4_model.json", "--assumed", "[0,0.5)",
                   DATA / "flat4.wadf")
    assert doc["verdict"] == "not-stable" and doc["witness"] == "b"


def test_stable_classical_matches_oracle(capsys):
    from wadf import parse_framework
    from wadf.oracle import ClassicalADF, classical_semantics
    fw = parse_framework((DATA / "mutual.wadf").read_text())
    oracle = classical_semantics(ClassicalADF.from_framework(fw))["stable"]
    doc = run_json(capsys, "verify", "--sem", "stable", "--assumed", "{f}", "--interpretation",
                   DATA / "mutual_t_f.json", DATA / "mutual.wadf")
    assert doc["verdict"] == (("t", "f") in oracle)


def test_query(capsys):
    doc = run_json(capsys, "query", "--sem", "model", "--statement", "d", "--pred", "ge:0.6",
                   DATA / "flat4.wadf")
    assert doc["answer"] is True
    assert doc["witness"] == {"a": "0.8", "b": "0.5", "c": "0.5", "d": "0.6"}
    doc = run_json(capsys, "query", "--sem", "preferred", "--statement", "a", "--pred", "eq:t",
                   "--mode", "skeptical", DATA / "mutual.wadf")
    assert doc["answer"] is False and doc["witness"] == {"a": "f", "b": "t"}


def test_query_empty_semantics(capsys, tmp_path):
    p = tmp_path / "odd.wadf"
    p.write_text("structure classical\nstatement a: !a\n")
    doc = run_json(capsys, "query", "--sem", "model", "--statement", "a", "--pred", "eq:t", p)
    assert doc["answer"] is False and doc["count"] == 0


def test_reduct(capsys):
    code, out, _ = run(capsys, "reduct", "--interpretation", DATA / "flat4_model.json", "--assumed",
                       "[0,0.5]", DATA / "flat4.wadf")
    assert code == 0
    assert out == "structure unit-flat\nstatement a: 0.8\nstatement d: 0.5 | 0.6\n"
    code, out, _ = run(capsys, "reduct", "--interpretation", DATA / "flat4_model.json", "--assumed", "{}",
                       DATA / "flat4.wadf")
    assert out == (DATA / "flat4.wadf").read_text()
    code, out, _ = run(capsys, "reduct", "--interpretation", DATA / "flat4_model.json", "--assumed", "[0,1]",
                       DATA / "flat4.wadf")
    assert out == "structure unit-flat\n"


def test_out_flag(capsys, tmp_path):
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, "grounded", "--out", target, DATA / "flat4.wadf")
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["interpretations"][0]["a"] == "0.8"


@pytest.mark.parametrize("argv,code,kind", [
    (["solve", "--sem", "preferred", "flat4.wadf"], 3, "unsupported"),
    (["solve", "--sem", "complete", "--engine", "finite", "flat4.wadf"], 3, "unsupported"),
    (["grounded", "--max-steps", "1", "flat4.wadf"], 5, "not-converged"),
    (["solve", "--sem", "complete", "--budget", "3", "belnap.wadf"], 4, "budget"),
    (["solve", "--sem", "stable", "flat4.wadf"], 2, "validation"),
    (["solve", "--sem", "complete", "--assumed", "[0,1]", "flat4.wadf"], 2, "validation"),
    (["solve", "--sem", "bogus", "flat4.wadf"], 2, "validation"),
    (["solve", "--sem", "complete", "missing.wadf"], 2, "validation"),
    (["query", "--sem", "complete", "--statement", "a", "--pred", "ge:t", "mutual.wadf"], 3, "unsupported"),
    (["query", "--sem", "complete", "--statement", "z", "--pred", "eq:t", "mutual.wadf"], 2, "validation"),
    (["stable", "--interpretation", "flat4_model.json", "--assumed", "[0,", "flat4.wadf"], 2, "validation"),
])
def test_error_exit_codes(capsys, argv, code, kind, monkeypatch):
    monkeypatch.chdir(DATA)
    got, doc = error_of(capsys, *argv)
    assert got == code
    assert doc["error"] == kind


def test_parse_error_exit_code(capsys, tmp_path):
    p = tmp_path / "bad.wadf"
    p.write_text("structure unit-flat\nstatement a: a &\n")
    code, doc = error_of(capsys, "solve", "--sem", "model", p)
    assert code == 2 and doc["error"] == "parse"
    assert "line 2" in doc["message"]


def test_budget_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("WADF_BUDGET", "3")
    code, doc = error_of(capsys, "solve", "--sem", "complete", DATA / "belnap.wadf")
    assert code == 4
    monkeypatch.setenv("WADF_BUDGET", "zero")
    code, doc = error_of(capsys, "solve", "--sem", "complete", DATA / "belnap.wadf")
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "wadf", "grounded", str(DATA / "mutual.wadf")],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["interpretations"] == [{"a": "u", "b": "u"}]
