import json
import os
import subprocess
from fractions import Fraction

import pytest

import toric_mirror as tm

F3 = """
[fan]
dim = 2
rays = [[1, 0], [0, 1], [-1, 3], [0, -1]]
max_cones = [[1, 2], [2, 3], [3, 4], [4, 1]]
"""


def test_builtins():
    assert tm.builtin_names() == ["p1", "p2", "f0", "f1", "f2", "p1xp2", "p1xf2"]
    f2 = tm.load("f2")
    assert (f2.dim, f2.rank, f2.ray_count, f2.fano) == (2, 2, 4, False)
    assert f2.vertices == [1, 3, 4]
    assert len(f2.hash) == 64


def test_f2_corrections_and_potential():
    f2 = tm.load("f2")
    f = f2.corrections(order=6)
    assert f == [{(0, 0): 1}, {(0, 0): 1, (1, 0): 1}, {(0, 0): 1}, {(0, 0): 1}]
    w = f2.potential(order=6)
    expected = {(1, 0, 0, 0): 1, (0, 1, 0, 0): 1, (0, 0, 1, 0): 1, (0, 0, 0, 1): 1, (0, -1, 1, 1): 1}
    assert w == expected
    assert f2.open_gw(2, [1, 0], order=6) == Fraction(1)
    assert f2.open_gw(1, [1, 0], order=6) == 0


def test_lift_routes_agree():
    x = tm.load("p1xf2")
    assert x.lifts(order=4, route="closed") == x.lifts(order=4, route="jacobi")
    with pytest.raises(ValueError):
        x.lifts(order=4, route="other")


def test_verify_report():
    report = tm.load("f2").verify(order=5)
    assert report["order"] == 5
    names = [c["name"] for c in report["checks"]]
    assert "degeneration" in names and "route-agreement" in names
    assert all(c["pass"] for c in report["checks"])


def test_gate_rejection():
    with pytest.raises(tm.GateError, match="semi-positive"):
        tm.Manifold.from_toml(F3)


def test_run_cli():
    code, out, err = tm.run_cli(["corrections", "--fan", "f2", "--order", "3"])
    assert code == 0 and "f2 = 1 + q1" in out and err == ""
    code, _, _ = tm.run_cli(["verify", "--fan", "nope.toml"])
    assert code == 2


@pytest.mark.skipif("TORIC_MIRROR_EXE" not in os.environ, reason="executable path not provided")
def test_executable_json():
    proc = subprocess.run(
        [os.environ["TORIC_MIRROR_EXE"], "verify", "--fan", "f1", "--format", "json"],
        capture_output=True, text=True, env={**os.environ, "ORDER": "4"}, check=False)
    assert proc.returncode == 0
    report = json.loads(proc.stdout)
    assert report["order"] == 4
    assert all(c["pass"] for c in report["checks"])


def test_shipped_fan_files_match_builtins():
    root = os.path.join(os.path.dirname(__file__), "..", "..", "data", "fans")
    for name in tm.builtin_names():
        assert tm.load(os.path.join(root, name + ".toml")).hash == tm.load(name).hash
