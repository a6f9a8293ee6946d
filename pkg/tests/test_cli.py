import io
import json
import subprocess
import sys

import pytest

from farey.cli import run


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), buf)
    return code, buf.getvalue()


def js(*argv):
    code, text = call(*argv)
    assert code == 0, text
    return json.loads(text)


def test_expand_and_eval_round_trip():
    out = js("expand", "--d", "7", "--algo", "euclid", "(35,52)/(107,0)")
    assert out["target"]["value"] == "(1,6)/(9,2)"
    back = js("eval", "--d", "7", "--cf", json.dumps(out["digits"]))
    assert back["value"] == "(1,6)/(9,2)"
    assert back["convergents"][-1] == "(1,6)/(9,2)"
    assert (back["x"], back["y"]) == ("61/107", "26/107")
    # the nearest-integer map is defined for d <= 3 only
    assert call("expand", "--d", "7", "(35,52)/(107,0)")[0] == 1


def test_eval_reports_real_and_imaginary_parts():
    out = js("eval", "--d", "1", "--cf", "[[0,0],[2,0]]")
    assert out["value"] == "(1,0)/(2,0)" and (out["x"], out["y"]) == ("1/2", "0")


def test_euclid_algorithm():
    out = js("expand", "--d", "2", "--algo", "euclid", "(3,1)/(5,0)")
    assert out["algo"] == "euclid" and out["target"]["value"] == "(3,1)/(5,0)"


def test_distance_certificate():
    out = js("distance", "--d", "7", "(35,52)/(107,0)")
    assert out["distance"] == 4 and out["path_count"] == 2


def test_geodesic_verdicts():
    long_cf = "[[0,0],[1,-1],[2,-1],[-2,1],[-1,2],[0,1]]"
    short_cf = "[[1,0],[0,-1],[-1,-2],[1,-2]]"
    code, text = call("geodesic", "--d", "7", "--cf", long_cf, "--assert")
    assert code == 2 and json.loads(text)["geodesic"] is False
    code, text = call("geodesic", "--d", "7", "--cf", short_cf, "--assert")
    assert code == 0 and json.loads(text)["geodesic"] is True


def test_neighbors():
    out = js("neighbors", "--d", "1", "(0,0)/(1,0)", "--cap", "2")
    assert "inf" in out["neighbors"] and "(1,0)/(1,1)" in out["neighbors"]


def test_hecke_and_wall():
    out = js("hecke", "--ell", "6", "--y", "1/2")
    assert out["digits"] == [1, 1]
    code, text = call("wall", "--d", "7", "--y", "2/7", "--assert")
    assert code == 0 and json.loads(text)["pqPQ"]["ok"]


def test_cell_and_tessellate():
    assert len(js("cell", "--d", "11")["faces"]) == 8
    assert len(js("cell", "--d", "7", "--conjugated")["faces"]) == 5
    t = js("tessellate", "--generations", "1")
    assert len(t["cells"]) == 3
    code, svg = call("tessellate", "--generations", "1", "--format", "svg")
    assert code == 0 and svg.startswith("<?xml")


@pytest.mark.parametrize("argv", [
    ["expand", "--d", "5", "1"],
    ["expand", "--d", "1", "(1,2"],
    ["expand", "--d", "1", "(1,0)/(0,0)"],
    ["hecke", "--ell", "6", "--y", "3/2"],
    ["hecke", "--ell", "6", "--y", "x"],
    ["neighbors", "--d", "1", "inf", "--cap", "3"],
    ["tessellate", "--d", "3"],
    ["tessellate", "--generations", "-1"],
    ["cell", "--d", "2", "--conjugated"],
    ["check", "--suite", "12"],
    ["eval", "--d", "1", "--cf", "[[1,2]"],
    ["nosuch"],
    [],
])
def test_usage_errors_exit_one(argv, capsys):
    assert call(*argv)[0] == 1
    assert "error" in capsys.readouterr().err


def test_check_suites_output_is_reproducible(capsys):
    first = call("check", "--suite", "1,9")
    err = capsys.readouterr().err
    assert first == call("check", "--suite", "1,9")
    assert first[0] == 0
    assert err.count("PASS criterion") == 2
    assert "\"seconds\"" not in first[1]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "farey", "cell", "--d", "3"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["d"] == 3
    bad = subprocess.run([sys.executable, "-m", "farey", "cell"], capture_output=True, text=True)
    assert bad.returncode == 1
