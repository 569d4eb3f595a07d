import json
import subprocess
import sys
from pathlib import Path

import pytest

from mgce.cli import EXIT_INPUT, EXIT_OK, EXIT_TRUNCATED, EXIT_VIOLATION, main, render_json, run
from mgce.manifest import load_fixture

GOLDEN = Path(__file__).parent / "golden"


def call(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("argv, golden", [
    (["betti", "heis3", "--degrees", "0..3"], "betti_heis3.json"),
    (["validate", "sl2"], "validate_sl2.json"),
    (["check-paper-example"], "check_example.json"),
])
def test_golden_reports(capsys, argv, golden):
    code, out, _ = call(capsys, *argv)
    assert code == EXIT_OK
    assert out == (GOLDEN / golden).read_text()


def test_report_shape(capsys):
    code, out, _ = call(capsys, "ce", "aff1", "--side", "hom")
    rep = json.loads(out)
    assert set(rep) == {"input", "params", "tables", "checks", "warnings"}
    assert rep["tables"]["dims"] == {"0": {"0": 1}, "1": {"-1": 2}, "2": {"-2": 1}}
    assert rep["params"]["max_weight"] == 2 and rep["params"]["pbw_degree"] == 4
    assert code == EXIT_OK


def test_deterministic(capsys):
    outs = {call(capsys, "ce", "sl2", "--side", "cohom", "--coeff", "adjoint")[1] for _ in range(3)}
    assert len(outs) == 1


def test_betti_commands(capsys):
    code, out, _ = call(capsys, "betti", "sl2", "--coeff", "adjoint")
    assert code == EXIT_OK
    assert json.loads(out)["tables"]["betti"] == {"0": 0, "1": 0, "2": 0, "3": 0}
    code, out, _ = call(capsys, "betti", "aff1_x_sl2", "--side", "hom")
    assert json.loads(out)["tables"]["betti"] == {"0": 1, "1": 1, "2": 0, "3": 1, "4": 1, "5": 0}


def test_truncation_exit_code(capsys):
    code, out, _ = call(capsys, "betti", "trivial_shifted", "--max-weight", "3")
    assert code == EXIT_TRUNCATED
    assert json.loads(out)["warnings"]
    code, out, _ = call(capsys, "betti", "trivial_shifted", "--max-weight", "3", "--allow-truncated")
    assert code == EXIT_OK
    # t has weight -1 and internal degree 2, so every power of t lands in total degree 0
    assert json.loads(out)["tables"]["betti"] == {"0": 4}


def test_violation_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"name": "bad", "generators": [
        {"name": "h", "degree": 0}, {"name": "e", "degree": 0}, {"name": "f", "degree": 0}],
        "bracket": [{"left": "h", "right": "e", "value": {"e": "-2"}},
                    {"left": "h", "right": "f", "value": {"f": "-2"}},
                    {"left": "e", "right": "f", "value": {"h": "1"}}]}))
    code, out, _ = call(capsys, "validate", str(bad))
    assert code == EXIT_VIOLATION
    assert json.loads(out)["checks"]["lie"]["kind"] == "Jacobi"
    code, _, _ = call(capsys, "betti", str(bad))
    assert code == EXIT_VIOLATION


def test_input_errors(tmp_path, capsys):
    assert call(capsys, "betti", "no-such-file")[0] == EXIT_INPUT
    f = tmp_path / "x.json"
    f.write_text('{"generators": [{"name": "x", "degree": 0}], "bracket": '
                 '[{"left": "x", "right": "w", "value": {}}]}')
    code, _, err = call(capsys, "betti", str(f))
    assert code == EXIT_INPUT and "w" in err
    assert call(capsys, "betti", "sl2", "--coeff", "nope")[0] == EXIT_INPUT
    assert call(capsys, "betti", "sl2", "--degrees", "3..1")[0] == EXIT_INPUT
    assert call(capsys, "betti", "sl2", "--side", "hom", "--coeff", "adjoint")[0] == EXIT_INPUT
    assert call(capsys, "ce")[0] == EXIT_INPUT


def test_other_commands(capsys):
    assert call(capsys, "duality", "aff1")[0] == EXIT_OK
    code, out, _ = call(capsys, "monoidality", "aff1", "--other", "sl2", "--max-weight", "4")
    assert code == EXIT_OK and json.loads(out)["checks"]["monoidality"] is True
    code, out, _ = call(capsys, "tate", "heis3", "--side", "hom")
    assert json.loads(out)["tables"]["homology"] == {"0": 1, "1": 2, "2": 2, "3": 1}
    code, out, _ = call(capsys, "tate", "aff1", "--out", "tsv")
    assert out.startswith("# homology\n")
    assert "0\t1" in out.splitlines()


def test_check_example_report(capsys):
    code, out, _ = call(capsys, "check-paper-example")
    rep = json.loads(out)
    assert code == EXIT_OK
    assert rep["tables"]["eps_u_e1e2"]["1"]["expected"] == {"1|e1bar": -1, "e1|e2bar": 1, "e2|e1bar": -1}
    assert rep["tables"]["ce_eps_weight2"] == [[1], [0]]


def test_run_api():
    rep, code = run("betti", load_fixture("aff1"), coeff="chi")
    assert code == EXIT_OK
    assert rep["tables"]["betti"] == {"0": 0, "1": 0, "2": 0}
    assert render_json(rep) == render_json(json.loads(render_json(rep)))


def test_console_script():
    r = subprocess.run([sys.executable, "-m", "mgce.cli", "validate", "aff1"], capture_output=True, text=True)
    assert r.returncode == 0
    assert json.loads(r.stdout)["checks"]["lie"] == "ok"
