"""Acceptance criteria, one test per criterion.

Each criterion enforces its own runtime limit and reports a violation on
overrun.  One pass/fail line per criterion is printed in the terminal summary.
"""

from __future__ import annotations

import time

import pytest

from relscheme.acceptance import CRITERIA
from relscheme.report import Status

SEED = 0


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: f"{c.number}-{c.name}")
def test_criterion(criterion, acceptance_log):
    t0 = time.perf_counter()
    rep = criterion.run(SEED)
    dt = time.perf_counter() - t0
    verdict = "PASS" if rep.status is Status.PASS else "FAIL"
    acceptance_log.append(
        f"criterion {criterion.number} {criterion.name}: {verdict} ({dt:.2f} s, limit {criterion.limit:g} s)"
    )
    assert rep.status is Status.PASS, rep.failures()
