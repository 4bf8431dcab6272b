import json

import pytest

from nilpoly.cli import main
from nilpoly.group import Chart
from nilpoly.solver import same_span


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_builtins(capsys):
    code, out, _ = run(capsys, "validate", "builtin:heisenberg", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["step"] == 2 and report["lcs_dims"] == [3, 1, 0]
    code, out, _ = run(capsys, "validate", "builtin:engel", "--json")
    assert json.loads(out)["lcs_dims"] == [4, 2, 1, 0]


def test_broken_jacobi_document(tmp_path, capsys):
    path = tmp_path / "broken.json"
    doc = {"dimension": 3, "basis": ["A", "B", "C"], "brackets": [[1, 2, 3, "1"], [1, 3, 1, "1"]]}
    path.write_text(json.dumps(doc), encoding="utf-8")
    code, out, err = run(capsys, "validate", str(path))
    assert code == 1
    assert "(1,2,3)" in out + err


def test_parse_error_is_input_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{", encoding="utf-8")
    code, _, err = run(capsys, "validate", str(path))
    assert code == 2
    assert "line 1" in err


def test_missing_file_and_unknown_builtin(capsys):
    assert run(capsys, "validate", "/nonexistent/algebra.json")[0] == 2
    assert run(capsys, "validate", "builtin:nope")[0] == 2


def test_solve_f23(capsys):
    code, out, _ = run(capsys, "solve", "builtin:f23", "--S", "X1:1,X2:2", "--chart", "second", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["dimension"] == 6
    ring = Chart.second().ring(5)
    got = [ring.parse(t) for t in report["basis"]]
    want = [ring.parse(t) for t in ["1", "x2", "x3", "x4", "x2*x4 - 1/2*x3^2", "x5 + 1/2*x2*x3"]]
    assert same_span(got, want)
    assert report["certificate"] == "stabilization-checked"


def test_solve_engel_subspace(capsys):
    code, out, _ = run(capsys, "solve", "builtin:engel", "--subspace", "V1", "--k", "2", "--json")
    assert code == 0
    assert json.loads(out)["dimension"] == 5


def test_solve_non_generating(capsys):
    code, _, err = run(capsys, "solve", "builtin:heisenberg", "--S", "X3:1")
    assert code == 2
    assert "S does not Lie generate" in err


def test_solve_linear_combination(capsys):
    code, out, _ = run(capsys, "solve", "builtin:engel", "--S", "X1+X3:2,X2:2", "--json")
    assert code == 0
    assert json.loads(out)["dimension"] == 16


def test_low_degree_solve_is_unverified(capsys):
    code, out, _ = run(capsys, "solve", "builtin:engel", "--S", "X1:1,X2:2", "--degree", "2", "--json")
    assert code == 1
    assert json.loads(out)["certificate"] == "unverified"


def test_non_nilpotent_solve(capsys):
    assert run(capsys, "solve", "builtin:sl2r", "--S", "X1:2,X2:2")[0] == 2


def test_bad_S_syntax(capsys):
    assert run(capsys, "solve", "builtin:heisenberg", "--S", "X9:2")[0] == 2
    assert run(capsys, "solve", "builtin:heisenberg", "--S", "X1:zero")[0] == 2


def test_bound(capsys):
    code, out, _ = run(capsys, "bound", "2", "3", "2", "--json")
    assert code == 0
    w = json.loads(out)
    assert (w["nu"], w["D"], w["a"], w["nus"]) == (4, 4, [4, 1], [3])
    assert run(capsys, "bound", "1", "5", "9")[1].strip().endswith("nu=0 D=0")
    assert run(capsys, "bound", "0", "2", "2")[0] == 2


def test_fields(capsys):
    code, out, _ = run(capsys, "fields", "builtin:heisenberg", "--json")
    assert code == 0
    fields = json.loads(out)
    assert json.dumps(fields).count("x1") >= 1


def test_convert(capsys):
    code, out, _ = run(capsys, "convert", "builtin:engel", "--point", "1,2,3,4", "--direction", "from-first")
    assert code == 0
    assert out.strip() == "1, 2, 4, 35/6"
    code, out, _ = run(capsys, "convert", "builtin:engel", "--point", "1,2,4,35/6", "--direction", "to-first")
    assert out.strip() == "1, 2, 3, 4"
    assert run(capsys, "convert", "builtin:engel", "--point", "1,2")[0] == 2


def test_examples(capsys):
    code, out, _ = run(capsys, "examples")
    assert code == 0 and "builtin:f23" in out


def test_verify_counterexamples(capsys):
    code, out, _ = run(capsys, "verify", "counterexamples", "--json")
    assert code == 0
    assert all(c["passed"] for c in json.loads(out)["checks"])


def test_verify_appendix_reports_the_larger_space(capsys):
    code, out, _ = run(capsys, "verify", "appendix", "--json")
    checks = json.loads(out)["checks"]
    failing = [c for c in checks if not c["passed"]]
    assert code == 1
    assert [c["name"] for c in failing] == ["heisenberg-X1X2-k2"]
    assert "x1*x2*x3 - x3^2" in failing[0]["detail"]


def test_json_is_deterministic(capsys):
    args = ("solve", "builtin:engel", "--S", "X1:1,X2:2", "--json")
    first = run(capsys, *args)[1]
    assert run(capsys, *args)[1] == first
    args = ("verify", "representation", "--seed", "3", "--json")
    first = run(capsys, *args)[1]
    assert run(capsys, *args)[1] == first
