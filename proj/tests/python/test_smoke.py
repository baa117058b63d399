"""End-to-end smoke tests: CLI surface and (when installed) the module."""

import json
import os
import subprocess

import pytest

CLI = os.environ.get("ENDOSCOPY_CLI")

pytestmark = pytest.mark.skipif(CLI is None, reason="ENDOSCOPY_CLI not set")


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True)


def test_fl_check_json():
    out = run("fl-check", "--field", "Qp:p=3,prec=12",
              "--ext", "unramified", "--depth", "3")
    assert out.returncode == 0
    doc = json.loads(out.stdout)
    assert doc["report"]["fl_pass"] is True
    assert all(row["value"]["exact"] == "1" for row in doc["report"]["rows"])


def test_fl_check_ramified_inconclusive():
    out = run("fl-check", "--field", "Qp:p=3,prec=12", "--ext", "ramified")
    assert out.returncode == 3
    assert json.loads(out.stdout)["report"]["applicable"] is False


def test_epsilon_char2():
    out = run("epsilon", "--field", "Fq:p=2,f=1,prec=10",
              "--ext", "ramified", "--x", "t")
    assert out.returncode == 0
    assert json.loads(out.stdout)["report"]["value"] in (-1, 1)


def test_usage_error_exit_code():
    assert run("no-such-command").returncode == 2
    assert run("fl-check", "--field", "Zp:p=3").returncode == 2


def test_deterministic_output():
    args = ("orthogonality", "--field", "Qp:p=3,prec=12",
            "--ext", "unramified", "--level", "2")
    assert run(*args).stdout == run(*args).stdout


def test_csv_format():
    out = run("lambda", "--field", "Qp:p=3,prec=12", "--ext", "unramified",
              "--format", "csv")
    assert out.returncode == 0
    assert out.stdout.startswith("path,value")
    assert "report.lambda,1" in out.stdout


def test_shalika_refusal():
    out = run("shalika-compare", "--field", "Qp:p=2,prec=10")
    assert out.returncode == 3
    assert json.loads(out.stdout)["report"]["refused"] is True


def test_module_if_installed():
    sl2 = pytest.importorskip("sl2endoscopy")
    assert sl2.epsilon("Qp:p=3,prec=12", "unramified", "pi") == -1
    assert sl2.lambda_constant("Qp:p=3,prec=12", "unramified") == ("1", True)
    assert sl2.intertwining_scalar(3, 1) == "4/3"
    doc = json.loads(sl2.fl_check("Fq:p=2,f=1,prec=12", "unramified", 4))
    assert doc["fl_pass"] is True
