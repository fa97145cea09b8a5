import io
import json
import subprocess
import sys

import pytest

from idensity import InvariantViolation, RationalBorelSet
from idensity import cli
from idensity import serialize as ser

LINE = '{"components": [{"lo": "-inf", "hi": "inf"}]}'
GEN = '{"center": 0, "patterns": [{"index_set": {"kind": "all"}, "left": "1/(4n)", "right": "1/(4n)"}]}'
RATIONALS_01 = '{"components": [{"lo": 0, "hi": 1, "lo_open": true, "hi_open": true, "class": "rationals_only"}]}'
SQUARES_SEQ = json.dumps(
    {
        "patterns": [
            {"index_set": {"kind": "powers", "e": 2}, "rule": {"kind": "const", "v": 1}},
            {"index_set": {"kind": "complement", "of": {"kind": "powers", "e": 2}}, "rule": {"kind": "const", "v": 0}},
        ]
    }
)


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_squares_example_csv():
    code, out, _ = call("examples", "run", "squares-generator", "--rows", "4")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,m_J,m_JE,quotient,quotient_decimal"
    assert lines[4] == "4,8/1,2/1,1/4,0.250000000000"
    assert "I_d-density: 1" in lines
    assert "Fin: lower 0, upper 1, limit DoesNotExist" in lines


def test_punctured_example_json():
    code, out, _ = call("examples", "run", "punctured-interval", "--format", "json", "--x1", "-1", "--x2", "3")
    assert code == 0
    doc = json.loads(out)
    assert (doc["i_d_open"], doc["i_d_closed"], doc["b"]) == (False, False, "1/1")
    assert doc["center_class"] == "AllGeneratorsZero"
    assert doc["edge_density"]["two_sided"] == "1/2"


def test_examples_list():
    code, out, _ = call("examples", "list")
    assert code == 0
    assert [line.split("\t")[0] for line in out.splitlines()] == ["squares-generator", "punctured-interval"]


def test_classify_rationals_only():
    code, out, _ = call("classify", "--set", RATIONALS_01)
    assert code == 0
    doc = json.loads(out)
    assert {k: doc[k] for k in ("i_d_open", "i_d_closed", "measure")} == {
        "i_d_open": False,
        "i_d_closed": True,
        "measure": "0/1",
    }


def test_density_on_the_line():
    code, out, _ = call("density", "--set", LINE, "--generator", GEN, "--rows", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["two_sided"] == "1/1" and doc["admissible"] is True
    assert len(doc["quotient_table"]) == 2


def test_inputs_from_file_and_inline(tmp_path):
    doc = {"set": json.loads(LINE), "generator": json.loads(GEN)}
    path = tmp_path / "input.json"
    path.write_text(json.dumps(doc))
    a = call("density", "--file", str(path))
    b = call("density", "--inline", json.dumps(doc))
    c = call("density", "--set", "@" + str(tmp_path / "set.json"), "--generator", GEN)
    assert a == b and a[0] == 0
    assert c[0] == 2  # the @-file does not exist


def test_limsup_both_ideals():
    code, out, _ = call("limsup", "--sequence", SQUARES_SEQ, "--ideal", "both", "--format", "csv")
    assert code == 0
    rows = out.splitlines()
    assert rows[0].split(",")[:4] == ["ideal", "limsup", "liminf", "limit"]
    assert rows[1].split(",")[:4] == ["fin", "1/1", "0/1", "DoesNotExist"]
    assert rows[2].split(",")[:4] == ["natdens", "0/1", "0/1", "0/1"]


def test_oracle_agrees():
    code, out, _ = call("oracle", "--sequence", SQUARES_SEQ, "--N", "20000")
    assert code == 0
    assert all(r["agree"] for r in json.loads(out)["results"])


def test_theta_and_iac():
    code, out, _ = call("theta", "--set", '{"components": [{"lo": 0, "hi": 1}]}')
    assert code == 0
    assert ser.set_from_json(json.loads(out)) == RationalBorelSet.open(0, 1)
    f = '{"pieces": [{"set": ' + LINE + ', "affine": {"a": 1, "b": 0}}]}'
    code, out, _ = call("iac", "--function", f)
    assert code == 0 and json.loads(out)["pointwise"] is True


def test_separate_csv():
    code, out, _ = call(
        "separate", "--closed-set", '{"components": [{"lo": 0, "hi": 1}]}', "--point", "3", "--grid", "2:4:3", "--format", "csv"
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[:4] == ["x,g1,g2,g", "2/1,1/2,1/2,1/2", "3/1,1/3,0/1,1/1", "4/1,1/4,1/4,1/2"]
    assert "zero_on_closed_set: true" in lines


@pytest.mark.parametrize(
    "argv",
    [
        ["classify", "--set", '{"components": [{"lo": "x", "hi": 1}]}'],
        ["classify", "--set", "{not json"],
        ["density", "--set", LINE],
        ["separate", "--closed-set", '{"components": [{"lo": 0, "hi": 1}]}', "--point", "1/2"],
        ["limsup", "--sequence", SQUARES_SEQ, "--ideal", "bogus"],
    ],
)
def test_bad_input_exits_2(argv):
    code, out, err = call(*argv)
    assert code == 2
    assert out == "" and err.startswith("error:")


def test_validation_error_names_the_path():
    code, _, err = call("classify", "--set", '{"components": [{"lo": "x", "hi": 1}]}')
    assert code == 2
    assert "components[0].lo" in err


def test_internal_error_exits_3(monkeypatch):
    def broken(*args, **kwargs):
        raise InvariantViolation("boom")

    monkeypatch.setattr(cli, "i_density_along", broken)
    code, _, err = call("density", "--set", LINE, "--generator", GEN)
    assert code == 3 and err.startswith("internal error:")


def test_output_is_deterministic():
    first = call("examples", "run", "punctured-interval", "--format", "json")
    assert all(call("examples", "run", "punctured-interval", "--format", "json") == first for _ in range(3))


def test_json_output_round_trips():
    code, out, _ = call("density", "--set", LINE, "--generator", GEN, "--rows", "3")
    doc = json.loads(out)
    assert doc.pop("ideal") == "natdens"
    report = ser.density_report_from_json(doc)
    assert json.loads(ser.dumps(ser.density_report_to_json(report))) == doc


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "idensity.cli", "examples", "list"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and "squares-generator" in proc.stdout
