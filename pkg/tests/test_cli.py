import json

import pytest

from plqo.cli import run


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_check_valid(capsys):
    code, out, err = invoke(capsys, "check", "O(T)")
    assert code == 0
    assert out.startswith("VALID")
    assert "[RCOF]" in out and "[RR 1]" in out
    assert err == ""


def test_check_invalid_writes_countermodel(capsys, tmp_path):
    target = tmp_path / "cm.json"
    code, out, _ = invoke(
        capsys,
        "check",
        "((O(B1)) & (O(B2))) <-> (O(B1 & B2))",
        "-o",
        str(target),
    )
    assert code == 1
    assert out.startswith("INVALID")
    doc = json.loads(target.read_text())
    assert doc["generic"]["nc"] == [["B1", "B2"]]

    # the emitted file is a model of the negation
    code, out, _ = invoke(
        capsys,
        "eval",
        "--model",
        str(target),
        "--formula",
        "!(((O(B1)) & (O(B2))) <-> (O(B1 & B2)))",
    )
    assert code == 0
    assert "SATISFIED" in out


def test_check_json_proof(capsys):
    code, out, _ = invoke(capsys, "check", "--json", "O(T)")
    assert code == 0
    doc = json.loads(out.split("VALID\n", 1)[1])
    assert doc["lines"][-1]["formula"] == "O(T)"


def test_sat_and_unsat(capsys):
    code, out, _ = invoke(capsys, "sat", "P(B1) = 1/2")
    assert code == 0 and out.startswith("SATISFIABLE")
    code, out, _ = invoke(capsys, "sat", "P(T) < 1")
    assert code == 1 and out.startswith("UNSATISFIABLE")


def test_entail(capsys):
    code, out, _ = invoke(
        capsys,
        "entail",
        "--premise",
        "O(B1 & B2)",
        "--conclusion",
        "P(B1 & B2) >= 0",
    )
    assert code == 0 and out.startswith("ENTAILED")
    code, out, _ = invoke(capsys, "entail", "--conclusion", "P(B1) = 1")
    assert code == 1 and out.startswith("NOT ENTAILED")


def test_at_file_formula(capsys, tmp_path):
    f = tmp_path / "phi.txt"
    f.write_text("O(T)\n")
    code, out, _ = invoke(capsys, "check", f"@{f}")
    assert code == 0 and out.startswith("VALID")


def test_parse_error_exit_2(capsys):
    code, _, err = invoke(capsys, "check", "O(B1")
    assert code == 2
    assert err.startswith("error[parse]:")


def test_missing_file_exit_2(capsys):
    code, _, err = invoke(capsys, "check", "@/no/such/file")
    assert code == 2
    assert err.startswith("error[io]:")


def test_usage_error_exit_2(capsys):
    assert invoke(capsys, "frobnicate")[0] == 2
    assert invoke(capsys)[0] == 2


def test_budget_exit_3(capsys, monkeypatch):
    monkeypatch.setenv("PLQO_BUDGET_SYMBOLS", "2")
    code, _, err = invoke(capsys, "check", "O(B1 & B2 & B3)")
    assert code == 3
    assert err.startswith("error[budget]:")


def test_genmodel_eval_roundtrip(capsys, tmp_path):
    target = tmp_path / "m.json"
    code, out, _ = invoke(
        capsys,
        "genmodel",
        "--symbols",
        "B1",
        "B2",
        "--nc",
        "B1,B2",
        "--masses",
        "1/4",
        "1/4",
        "1/4",
        "1/4",
        "-o",
        str(target),
    )
    assert code == 0
    code, out, _ = invoke(
        capsys, "eval", "--model", str(target), "--formula", "O(B1 & B2)"
    )
    assert code == 1 and "NOT SATISFIED" in out
    code, out, _ = invoke(
        capsys, "eval", "--model", str(target), "--formula", "O(B1)", "--prob", "B1"
    )
    assert code == 0 and "prob = 1/2" in out


def test_eval_with_assignment(capsys, tmp_path):
    model = tmp_path / "m.json"
    invoke(capsys, "genmodel", "--symbols", "B1", "--masses", "3/4", "1/4", "-o", str(model))
    assign = tmp_path / "a.json"
    assign.write_text(json.dumps({"x1": "1/4"}))
    code, out, _ = invoke(
        capsys,
        "eval",
        "--model",
        str(model),
        "--assign",
        str(assign),
        "--formula",
        "P(B1) = x1",
    )
    assert code == 0 and "SATISFIED" in out


def test_translate_output(capsys):
    code, out, _ = invoke(capsys, "translate", "P(B1) = 1/2")
    assert code == 0
    assert "x[!B1] + x[B1] = 1" in out
    assert "# atom P(B1) = 1/2" in out
    assert "x[B1] = 1/2" in out


def test_essential_and_anf(capsys):
    code, out, _ = invoke(capsys, "essential", "B1 & (B2 | !B2)")
    assert code == 0 and out.strip() == "B1"
    code, out, _ = invoke(capsys, "essential", "B1 | !B1")
    assert code == 0 and out.strip() == "(none)"
    code, out, _ = invoke(capsys, "anf", "B1 & B2")
    assert code == 0 and out.strip() == "B1*B2"


def test_prove_schemas(capsys):
    code, out, _ = invoke(
        capsys, "prove", "--schema", "fig1", "--alpha1", "B1", "--alpha2", "!(!B1)"
    )
    assert code == 0
    assert len(out.strip().splitlines()) == 7
    code, out, _ = invoke(capsys, "prove", "--schema", "fig2")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 4
    assert lines[-1].endswith("[MP 1,3]")
    code, out, _ = invoke(capsys, "prove", "--schema", "obs_taut")
    assert code == 0 and len(out.strip().splitlines()) == 2


def test_prove_schema_precondition_failure(capsys):
    code, _, err = invoke(
        capsys, "prove", "--schema", "fig1", "--alpha1", "B1", "--alpha2", "B2"
    )
    assert code == 2
    assert err.startswith("error[schema-precondition]:")
