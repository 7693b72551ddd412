import json

import pytest

from liekoszul.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_koszul_on_g12(capsys):
    code, out, _ = run(capsys, "koszul", "catalog:g12")
    assert code == 0 and "reduced Koszul rank: 1" in out.splitlines()


def test_koszul_witness(capsys):
    code, out, _ = run(capsys, "--witness", "koszul", "catalog:g12")
    assert code == 0 and "cycle with nonzero class:" in out


def test_betti_abelian(capsys):
    code, out, _ = run(capsys, "betti", "catalog:abelian(4)")
    assert code == 0 and out.strip().endswith("1 4 6 4 1")


def test_betti_weight(capsys):
    code, out, _ = run(capsys, "betti", "catalog:heisenberg(3)", "--weight", "3")
    assert code == 0 and out.strip().endswith("0 0 2 0")


def test_verify_sec6(capsys):
    code, out, _ = run(capsys, "verify-paper", "--only", "sec6.matrix")
    assert code == 0
    assert "[PASS] sec6.matrix (criterion 1)" in out
    assert "1/1 checks passed" in out


def test_deterministic_output(capsys):
    first = run(capsys, "verify-paper", "--only", "sec6.koszul")
    second = run(capsys, "verify-paper", "--only", "sec6.koszul")
    assert first == second and first[0] == 0


def test_json_output(capsys):
    code, out, _ = run(capsys, "--json", "kill", "catalog:g12")
    doc = json.loads(out)
    assert code == 0 and doc["kill_dim"] == 5


def test_json_forms_and_quadrable(capsys):
    code, out, _ = run(capsys, "forms", "--json", "catalog:sl2")
    assert code == 0 and json.loads(out)["dim"] == 1
    code, out, _ = run(capsys, "quadrable", "catalog:heisenberg(3)")
    assert code == 0 and "degenerate-certified" in out


def test_current_h2(capsys):
    code, out, _ = run(capsys, "current-h2", "--ring", "truncated Q 2", "catalog:sl2")
    assert code == 0 and "identities hold" in out


@pytest.mark.parametrize("argv", [
    ["check", "/nonexistent/file.lie"],
    ["check", "catalog:nonsense"],
    ["verify-paper", "--only", "nope"],
    ["betti", "catalog:sl2", "--weight", "1,2"],
    ["current-h2", "--ring", "bogus", "catalog:sl2"],
    ["kill", "catalog:sl2", "--filtration", "1"],
    ["frobnicate"],
    ["catalog", "emit"],
])
def test_input_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_bad_file_reports_line(tmp_path, capsys):
    f = tmp_path / "bad.lie"
    f.write_text("field Q\ndim 2\nbracket 1 1 = 1*2\n")
    code, _, err = run(capsys, "check", str(f))
    assert code == 2 and "line 3" in err


def test_emit_then_check(tmp_path, capsys):
    code, out, _ = run(capsys, "catalog", "emit", "g12")
    assert code == 0
    f = tmp_path / "g12.lie"
    f.write_text(out)
    code, out, _ = run(capsys, "check", str(f))
    assert code == 0
    assert "nilpotent: yes, length 7" in out
    assert "declared form: invariant, nondegenerate" in out
    code, out, _ = run(capsys, "koszul", str(f), "--weight", "0")
    assert code == 0 and "reduced Koszul rank: 1" in out


def test_catalog_list(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0 and "g12" in out.split()
