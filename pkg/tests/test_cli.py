import json
import subprocess
import sys

import pytest

from heckelab.cli import ConfigError, canonical, main, make_field, parse_weight
from heckelab.fields import FieldError


def run(capsys, *argv):
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)


def test_dim(capsys):
    code, doc = run(capsys, "dim", "--n", "2", "--weight", "0", "--e", "3")
    assert code == 0 and doc["dim"] == 2 and doc["pass"]


def test_blocks(capsys):
    code, doc = run(capsys, "blocks", "--n", "2", "--weight", "0", "--e", "3")
    assert code == 0 and len(doc["blocks"]) == 2


def test_bad_configuration_exits_2(capsys):
    code, doc = run(capsys, "dim", "--mode", "degenerate", "--e", "4")
    assert code == 2 and "error" in doc


def test_nonpositive_fuel_exits_2(capsys):
    code, _ = run(capsys, "center", "--fuel", "0")
    assert code == 2


def test_failing_check_exits_1(capsys):
    code, doc = run(capsys, "verify-klr", "--mode", "degenerate", "--e", "0", "--n", "2",
                    "--weight", "0,1", "--beta", "0:1,1:1")
    assert code == 1 and not doc["pass"]


def test_passing_klr_exits_0(capsys):
    code, doc = run(capsys, "verify-klr", "--n", "2", "--weight", "0,1")
    assert code == 0 and doc["pass"]


def test_structure_rows(capsys):
    code, doc = run(capsys, "structure", "--n", "2", "--weight", "0", "--e", "3")
    assert code == 0 and doc["dim"] == 2 and len(doc["rows"]) == 4
    assert all(" -> [" in r for r in doc["rows"])


def test_out_file(tmp_path, capsys):
    target = tmp_path / "dim.json"
    assert main(["dim", "--n", "1", "--out", str(target)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(target.read_text())["dim"] == 1


def test_deterministic_output():
    argv = [sys.executable, "-m", "heckelab", "center", "--n", "2", "--weight", "0,1"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second and b'"pass": true' in first


def test_helpers():
    assert parse_weight("0, 0,1") == (0, 0, 1)
    with pytest.raises(ConfigError):
        parse_weight("a")
    F = make_field("nondegenerate", 0, 3)
    assert canonical(F, F.q) == "[0, 1]"
    with pytest.raises(ConfigError):
        make_field("degenerate", 5, 3)
    with pytest.raises(FieldError):
        make_field("degenerate", 4, 4)
