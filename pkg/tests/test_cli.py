import io
import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from lgstate import conventions
from lgstate.cli import report_schema, run

MODELS = Path(__file__).resolve().parent.parent / "models"


def invoke(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def invoke_json(*argv):
    code, text = invoke("--json", *argv)
    rep = json.loads(text)
    jsonschema.validate(rep, report_schema())
    assert rep["exit_code"] == code
    return code, rep


def write_model(tmp_path, data, name="m.json"):
    p = tmp_path / name
    p.write_text(data if isinstance(data, str) else json.dumps(data))
    return str(p)


C2 = {"format": 1, "ring": {"variables": ["x", "y"]}, "W": "x^2 - y^2",
      "branes": [{"name": "B", "d_od": [["x - y"]], "d_ev": [["x + y"]]}]}

CASES = [
    ("validate", "c2_z2.json", 0), ("validate", "a2.json", 0), ("jacobi", "a2.json", 0), ("jacobi", "x2y.json", 1),
    ("chern", "a1.json", 0), ("kl", "a1.json", 0), ("gram", "a2.json", 0), ("gram", "a1.json", 0),
    ("spectrum", "c2_z2.json", 0), ("spectrum", "fermat_z3.json", 0), ("hochschild", "a1.json", 0),
    ("hochschild", "poly_w0.json", 0), ("tft", "mat2_tft.json", 0), ("tft", "dual_numbers_tft.json", 1),
]


@pytest.mark.parametrize("command,model,code", CASES, ids=[f"{c}-{m}" for c, m, _ in CASES])
def test_reports_follow_schema(command, model, code):
    extra = ["--alpha", "alpha"] if command == "kl" else []
    got, rep = invoke_json(command, str(MODELS / model), *extra)
    assert got == code
    assert rep["status"] == {0: "ok", 1: "failure", 2: "error"}[code]


def test_validate_reports_corrupted_entry(tmp_path):
    bad = json.loads(json.dumps(C2))
    bad["branes"][0]["d_ev"] = [["x + 2*y"]]
    code, rep = invoke_json("validate", write_model(tmp_path, bad))
    assert code == 1
    text = json.dumps(rep["failures"])
    assert "x^2 + x*y - 2*y^2" in text and "[0, 0]" in text
    code, human = invoke("validate", write_model(tmp_path, bad))
    assert code == 1 and "FAIL" in human


def test_parse_error_position(tmp_path):
    m = dict(C2, W="x+^2")
    del m["branes"]
    code, rep = invoke_json("jacobi", write_model(tmp_path, m))
    assert code == 2
    assert rep["error"]["column"] == 3 and rep["error"]["line"] == 1
    code, human = invoke("jacobi", write_model(tmp_path, m))
    assert "line 1, column 3" in human


def test_broken_json_position(tmp_path):
    code, rep = invoke_json("jacobi", write_model(tmp_path, '{"format": 1,\n  "W": }'))
    assert code == 2 and rep["error"]["line"] == 2


def test_missing_file_and_format(tmp_path):
    assert invoke("jacobi", str(tmp_path / "nope.json"))[0] == 2
    assert invoke("jacobi", write_model(tmp_path, dict(C2, format=2)))[0] == 2


def test_invalid_group_is_input_error_for_spectrum(tmp_path):
    m = dict(C2, group={"elements": [[[1, 0], [0, 1]], [[0, 1], [1, 0]], [[2, 0], [0, 1]]]})
    assert invoke_json("spectrum", write_model(tmp_path, m))[0] == 2
    # validate treats the same group as a failed check rather than unusable input
    assert invoke_json("validate", write_model(tmp_path, m))[0] == 1


def test_spectrum_values():
    _, rep = invoke_json("spectrum", str(MODELS / "c2_z2.json"))
    assert rep["result"]["total"] == 2
    _, rep = invoke_json("spectrum", str(MODELS / "fermat_z3.json"))
    assert rep["result"]["total"] == 4


def test_unknown_brane(tmp_path):
    assert invoke("chern", str(MODELS / "a1.json"), "--brane", "nope")[0] == 2


def test_chern_and_kl_values():
    _, rep = invoke_json("kl", str(MODELS / "a1.json"), "--alpha", "alpha")
    assert rep["result"]["value"] == "1"
    _, rep = invoke_json("chern", str(MODELS / "a1.json"), "--morphism", "alpha")
    assert rep["result"]["degrees"] == {"1": [{"coefficient": "2", "dy": ["x"]}]}
    assert rep["result"]["disk"] == "1"


def test_tft_values():
    _, rep = invoke_json("tft", str(MODELS / "mat2_tft.json"))
    assert rep["result"]["dim_V"] == 1
    assert rep["result"]["identity_pairing"] == {"E": "4"}
    _, rep = invoke_json("tft", str(MODELS / "dual_numbers_tft.json"))
    assert rep["result"]["verdict"] == "degenerate"


def test_json_flag_after_subcommand():
    code, text = invoke("jacobi", str(MODELS / "a2.json"), "--json")
    assert code == 0 and json.loads(text)["command"] == "jacobi"


def test_deterministic_output():
    args = ["--json", "hochschild", str(MODELS / "a2_single.json")]
    assert invoke(*args) == invoke(*args)


def test_conventions_flag():
    code, text = invoke("--conventions")
    assert code == 0 and text == conventions.TEXT and conventions.CONVENTIONS_ID in text


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lgstate.cli", "--json", "jacobi", str(MODELS / "x2y.json")],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert json.loads(proc.stdout)["status"] == "failure"
