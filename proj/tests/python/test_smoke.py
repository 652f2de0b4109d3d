import os
import subprocess

import pytest

import stoplat

E1 = """omega a b
breakpoint 0 inclusive a,b
breakpoint 1 inclusive a;b
time S 1 2
time T1 1 1
time T2 1 1
role S S
role T1 T1
role T2 T2
"""

DISCRETE = """omega a b
breakpoint 0 a;b
time S 1 2
time T1 1 1
time T2 1 1
role S S
role T1 T1
role T2 T2
"""


def test_check():
    assert stoplat.check(E1, "S") == {"stopping": True, "optional": True}


def test_minorant():
    assert stoplat.minorant(E1, "S") == ["1", "2"]
    text = E1.replace("time S 1 2", "time S 1/2 2")
    assert stoplat.minorant(text, "S") == ["1/2", "1/2"]


def test_decompose():
    assert stoplat.decompose(E1, q=8)["status"] == "not-found"
    found = stoplat.decompose(DISCRETE)
    assert found["status"] == "found"
    assert found["parts"] == [["1", "1"], ["0", "1"]]


def test_interpolate():
    text = E1 + "set A T1\nset B S\n"
    assert stoplat.interpolate(text, "pointwise") == {"status": "found", "time": ["1", "1"]}
    cone = stoplat.interpolate(text, "cone")
    assert cone["status"] == "precondition"
    assert cone["code"] == "cone-order-violated"


def test_parse_error():
    with pytest.raises(ValueError, match="line 2"):
        stoplat.check("omega a\nbreakpoint 1 a\n", "S")


def test_hunt_is_deterministic():
    assert stoplat.hunt(seed=5, instances=50) == stoplat.hunt(seed=5, instances=50, threads=3)


def test_run_exit_codes(tmp_path):
    path = tmp_path / "e1.txt"
    path.write_text(E1)
    code, out, _ = stoplat.run(["check", str(path)])
    assert code == 0 and "S: stopping=true" in out
    assert stoplat.run(["decompose", str(path), "--grid-denominator", "8"])[0] == 3
    assert stoplat.run(["check", str(tmp_path / "missing.txt")])[0] == 2


def test_selftest():
    assert all(passed for _, passed, _, _ in stoplat.selftest(seed=1, instances=30))


@pytest.mark.skipif("STOPLAT_BINARY" not in os.environ, reason="binary path not provided")
def test_binary_matches_module(tmp_path):
    path = tmp_path / "e1.txt"
    path.write_text(E1)
    proc = subprocess.run([os.environ["STOPLAT_BINARY"], "check", str(path)], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == stoplat.run(["check", str(path)])[1]
