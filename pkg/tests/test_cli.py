import json
import os
import subprocess
import sys

import pytest

from mckay.cli import main, run


def out_of(argv):
    status, text = run(argv)
    return status, text


def test_info_counts(capsys):
    status, text = out_of(["info", "D(4,1)"])
    assert status == 0
    assert "order      48" in text and "classes    24" in text and "irreps     24" in text
    status, text = out_of(["info", "BI", "--format", "json"])
    data = json.loads(text)
    assert data["order"] == 120 and data["classes"] == 9 and data["irreps"] == 9


def test_quiver_dot_counts(capsys):
    status, text = out_of(["quiver", "C(8,3)", "--format", "dot"])
    assert status == 0
    assert text.count("->") == 16 and text.count("[label=") == 8


@pytest.mark.parametrize("flag", [[], ["--rules-only"], ["--chars-only"]])
def test_quiver_sources_agree(flag, capsys):
    _, text = out_of(["quiver", "P(2)", "--format", "json"] + flag)
    data = json.loads(text)
    assert len(data["vertices"]) == 21


def test_chartable(capsys):
    status, text = out_of(["chartable", "D(3,1)", "--format", "csv"])
    assert status == 0 and len(text.strip().splitlines()) == 13
    status, text = out_of(["export", "P(2)", "--format", "text"])
    assert status == 0 and "varsigma_0" in text


def test_ar_check(capsys):
    status, text = out_of(["ar-check", "P(2)xC(5)"])
    assert status == 0 and "FAIL" not in text
    status, text = out_of(["ar-check", "BTxC(5)", "--format", "json"])
    assert status == 0 and json.loads(text)["reports"]
    status, text = out_of(["ar-check", "E7", "--m", "5"])
    assert status == 0


def test_parse_errors_exit_2(capsys):
    assert main(["info", "D(2,1)"]) == 2
    assert "k > 2" in capsys.readouterr().err
    assert main(["info", "nonsense"]) == 2
    assert main(["chartable", "BT"]) == 2
    assert main(["info", "BIxC(7)", "--max-order", "100"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["quiver"])
    assert exc.value.code == 2


def test_verify_failure_exit_1(capsys):
    assert main(["verify", "D(3,1)", "--no-ar", "--inject-fault"]) == 1
    assert main(["verify", "D(3,1)", "--no-ar"]) == 0


def test_out_is_atomic_and_deterministic(tmp_path, capsys):
    target = tmp_path / "q.dot"
    assert main(["quiver", "D(4,2)", "--out", str(target)]) == 0
    first = target.read_bytes()
    assert main(["quiver", "D(4,2)", "--out", str(target)]) == 0
    assert target.read_bytes() == first
    assert os.listdir(tmp_path) == ["q.dot"]
    assert capsys.readouterr().out == ""


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mckay", "info", "P(2)"], capture_output=True, text=True)
    assert proc.returncode == 0 and "irreps     21" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "mckay", "info", "C(4,2)"], capture_output=True, text=True)
    assert proc.returncode == 2 and "gcd" in proc.stderr
