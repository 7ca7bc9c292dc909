"""Acceptance gate: one test per verification suite.

Each test runs the corresponding suite end to end, prints a single
machine-readable pass/fail line, and enforces the suite's wall-clock limit.
"""

import time

import pytest

from localforms.verify import run_suite

# (criterion number, suite name, wall-clock limit in seconds)
CRITERIA = [
    (1, "exact", 10),
    (2, "classes", 60),
    (3, "classical", 30),
    (4, "route", 30),
    (5, "modularity", 120),
    (6, "theorem-main", 300),
    (7, "k2", 300),
    (8, "lobrich", 180),
    (9, "brika", 180),
    (10, "fourier", 180),
    (11, "quantum", 30),
    (12, "operators", 60),
]


def _run(number, suite, limit):
    t0 = time.time()
    report = run_suite(suite, seed=7)
    elapsed = time.time() - t0
    worst = max((c["rel_err"] for c in report["checks"]), default=0.0)
    verdict = "PASS" if report["pass"] and elapsed < limit else "FAIL"
    print(f"{verdict} criterion {number:2d} [{suite}]: "
          f"{report['passed']}/{report['passed'] + report['failed']} checks, "
          f"worst rel_err {worst:.3e}, {elapsed:.1f}s (limit {limit}s)")
    assert report["pass"], [c["name"] for c in report["checks"] if not c["pass"]]
    assert elapsed < limit, f"{suite} took {elapsed:.1f}s, limit {limit}s"
    return report


@pytest.mark.parametrize("number,suite,limit", CRITERIA,
                         ids=[f"{n:02d}-{s}" for n, s, _ in CRITERIA])
def test_acceptance(number, suite, limit):
    _run(number, suite, limit)
