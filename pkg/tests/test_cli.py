import json

import pytest

from terracini.cli import main
from terracini.fileio import curve_to_json
from terracini.witness import standard_g3, witness_quartic


@pytest.fixture
def rnc3_file(tmp_path):
    path = tmp_path / "rnc3.curve"
    path.write_text(json.dumps({
        "type": "parametric", "id": "rnc3", "r": 3,
        "coords": ["1", "t", "t^2", "t^3"],
    }))
    return str(path)


@pytest.fixture
def wq_file(tmp_path):
    path = tmp_path / "wq.curve"
    path.write_text(json.dumps(curve_to_json(witness_quartic().curve, curve_id="wq")))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_defect_command(capsys, rnc3_file):
    code, out = run(capsys, "defect", "--curve", rnc3_file, "--points", "0,1")
    assert code == 0
    doc = json.loads(out)
    assert doc["report"]["defect"] == 0
    assert doc["curve"] == "rnc3"


def test_member_command_on_witness(capsys, wq_file):
    code, out = run(capsys, "member", "--curve", wq_file, "--points", "0,1")
    assert code == 0
    assert json.loads(out)["member"] is True


def test_missing_file_is_input_error(capsys):
    code = main(["member", "--curve", "does-not-exist.curve", "--points", "0,1"])
    assert code == 2


def test_bad_usage_is_exit_2(capsys):
    assert main(["defect"]) == 2


def test_scheme_member_command(capsys, tmp_path):
    curve_path = tmp_path / "flex.curve"
    curve_path.write_text(json.dumps({"type": "plane", "F": "x^4 + y^4 - y*z^3"}))
    div_path = tmp_path / "z.divisor"
    div_path.write_text(json.dumps({
        "entries": [{"point": {"coords": ["0", "0", "1"]}, "multiplicity": 2}]
    }))
    code, out = run(capsys, "scheme-member", "--curve", str(curve_path),
                    "--divisor", str(div_path))
    assert code == 0
    doc = json.loads(out)
    assert doc["member_scheme"] is True and doc["report"]["span_dim"] == 1


def test_byte_identical_runs(capsys, rnc3_file):
    _, first = run(capsys, "defect", "--curve", rnc3_file, "--points", "0,1")
    _, second = run(capsys, "defect", "--curve", rnc3_file, "--points", "0,1")
    assert first == second


def test_probe_command_pass_and_fail(capsys, rnc3_file, wq_file):
    code, out = run(capsys, "probe", "--kind", "emptiness", "--curve", rnc3_file,
                    "--x", "2", "--trials", "25", "--seed", "unit")
    assert code == 0
    assert json.loads(out)["verdict"] == "all-passed"

    code, out = run(capsys, "probe", "--kind", "emptiness", "--curve", wq_file,
                    "--x", "2", "--trials", "21", "--seed", "92")
    assert code == 1
    doc = json.loads(out)
    assert doc["verdict"] == "counterexample-found"
    assert doc["witnesses"]  # the offending divisor is serialized


def test_scan_coplanar_command(capsys, rnc3_file):
    code, out = run(capsys, "scan", "--kind", "coplanar", "--curve", rnc3_file)
    assert code == 0
    doc = json.loads(out)
    assert doc["reduced_constant"] is True and doc["rational_zeros"] == []


def test_construct_writes_curve_file(capsys, tmp_path):
    out_path = tmp_path / "flex4.curve"
    code, out = run(capsys, "construct", "total-flex", "--d", "4",
                    "--output", str(out_path))
    assert code == 0
    saved = json.loads(out_path.read_text())
    assert saved["type"] == "plane"
    doc = json.loads(out)
    assert doc["report"]["member_scheme"] is True


def test_suite_list_and_run(capsys):
    code, out = run(capsys, "suite", "list")
    assert code == 0
    names = json.loads(out)["suites"]
    assert "hyperelliptic-g3" in names and "witness-quartic" in names

    code, out = run(capsys, "suite", "run", "witness-quartic", "--format", "table")
    assert code == 0
    assert "[PASS]" in out


def test_format_table_output(capsys, rnc3_file):
    code, out = run(capsys, "defect", "--curve", rnc3_file, "--points", "0,1",
                    "--format", "table")
    assert code == 0
    assert "defect: 0" in out
