import io
import json
import subprocess
import sys

import pytest

from gasket.cli import run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_eval_harmonic():
    assert call("eval", "--harmonic", "0,1,-1", "--at", "00:1") == (0, "1/25\n")


def test_eval_orientations():
    code, text = call("eval", "--piecewise", '{"level":1,"pieces":{"0":{"corners":["0","1","-1"]}}}',
                      "--at", "0:1", "--normal")
    assert code == 0
    assert text.splitlines() == ["normal[0:1] 5", "normal[1:0] 0"]


def test_basis():
    code, text = call("basis", "--level", "1")
    assert code == 0
    assert text.splitlines() == ["diagonal 30 50 50 50", "off-diagonal 0"]


def test_energy():
    code, text = call("energy", "--harmonic", "1,0,0", "--level", "4", "--cell", "0")
    assert text.splitlines() == ["E_4 2", "nu[0] 6/5"]


def test_form():
    code, text = call("form", "--loop", "=1", "--norm", "--tangential-part", ":0", "--div")
    assert code == 0
    assert text.splitlines() == ["norm_sq 30", "tangential_part[:0] 10",
                                 "divergence_free_v0 true", "divergence_free true"]
    code, text = call("form", "--ray", ",0,1,1/5", "--tangential-part", ":0")
    assert "does-not-exist" in text


def test_experiment_sides():
    code, text = call("experiment", "sides", "--phi", "3/5", "--a", "1", "--h", "0,1,1")
    assert code == 0
    assert "limit 15/2" in text.splitlines()
    assert text.splitlines()[-1] == "verdict pass"
    code, text = call("experiment", "sides", "--phi", "3/5", "--json")
    assert json.loads(text)["limit"] == "15/2"


def test_experiment_csv():
    code, text = call("experiment", "ntrh", "--exact", "0,1,1", "--m-max", "3", "--csv")
    assert text.splitlines() == ["m,value_num,value_den,limit,residual", "0,1,1,1,0", "1,1,1,1,0",
                                 "2,1,1,1,0", "3,1,1,1,0"]


def test_usage_errors():
    assert call("experiment", "sides", "--phi", "x")[0] == 2
    assert call("eval", "--harmonic", "1,2", "--at", ":0")[0] == 2
    with pytest.raises(SystemExit) as exc:
        call("nonsense")
    assert exc.value.code == 2


def test_verify_exit_code():
    assert call("verify", "--level", "1")[0] == 0


def test_console_entry_is_deterministic():
    cmd = [sys.executable, "-m", "gasket", "experiment", "vertical", "--case", "ii", "--json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["limit"] == "10"
