"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import json
import subprocess
import sys

import pytest

from convexcert import acceptance

SEED = acceptance.DEFAULT_SEED
LINES = {}


@pytest.fixture(scope="module")
def results():
    return {}


def _record(number, name, passed, note=""):
    line = f"criterion {number} {name}: {'PASS' if passed else 'FAIL'}{' ' + note if note else ''}"
    LINES[number] = line
    print(line)


@pytest.mark.parametrize("number", range(1, 9))
def test_criterion(number):
    res = acceptance.run_criterion(acceptance.CRITERIA[number - 1], SEED)
    note = f"({res.seconds:.2f}s)"
    ok = res.passed
    if number == 1:
        ok = ok and res.timed_seconds < acceptance.CARATHEODORY_BUDGET_S
        note = f"(reductions {res.timed_seconds:.2f}s < {acceptance.CARATHEODORY_BUDGET_S:g}s)"
    if number == 2:
        ok = ok and res.timed_seconds < acceptance.STEINITZ_BUDGET_S
        note = f"(reductions {res.timed_seconds:.2f}s < {acceptance.STEINITZ_BUDGET_S:g}s)"
    _record(number, res.name, ok, note)
    assert res.passed, json.dumps(res.detail)
    assert ok, note


def test_criterion_9_selftest_deterministic():
    cmd = [sys.executable, "-m", "convexcert", "selftest", "--seed", str(SEED)]
    first = subprocess.run(cmd, capture_output=True, text=True)
    second = subprocess.run(cmd, capture_output=True, text=True)
    same = first.stdout == second.stdout and first.returncode == second.returncode == 0
    _record(9, "determinism", same)
    assert first.returncode == 0, first.stderr
    assert same
    report = json.loads(first.stdout)
    assert report["passed"] and len(report["criteria"]) == 8
