"""Acceptance gate: every criterion prints one pass/fail line."""

import time

import pytest

from rsurf import selftest

CASES = [
    pytest.param(idx, name, fn, budget, id="%02d-%s" % (idx, name.replace(" ", "-")))
    for idx, (name, fn, budget) in enumerate(selftest.CRITERIA, start=1)
]


@pytest.mark.parametrize("idx,name,fn,budget", CASES)
def test_criterion(idx, name, fn, budget):
    t0 = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t0
    line = "criterion %2d %-34s %s (%.2fs) %s" % (
        idx,
        name,
        "PASS" if ok and dt <= budget else "FAIL",
        dt,
        detail,
    )
    print(line)
    assert ok, line
    assert dt <= budget, line
