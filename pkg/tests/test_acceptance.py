"""Acceptance gate: every criterion runs at its pinned tolerance and prints
one PASS/FAIL line.  Run with `pytest -s tests/test_acceptance.py` to see the
lines, or `pqsphere selftest` for the same grid from the CLI."""

import time

import pytest

from pqsphere import acceptance

# wall-clock budgets (seconds) for the criteria that carry one
BUDGETS = {
    "criterion_normalization": 10.0,
    "criterion_series_vs_oracle": 60.0,
    "criterion_delta_transforms": 10.0,
}


@pytest.mark.parametrize("criterion", acceptance.CRITERIA,
                         ids=lambda c: c.__name__.removeprefix("criterion_"))
def test_acceptance_criterion(criterion):
    t0 = time.perf_counter()
    result = criterion()
    elapsed = time.perf_counter() - t0
    status = "PASS" if result.passed else "FAIL"
    print(f"[{status}] {result.name} ({elapsed:.1f}s) -- {result.detail}")
    assert result.passed, f"{result.name}: {result.detail}"
    budget = BUDGETS.get(criterion.__name__)
    if budget is not None:
        assert elapsed < budget, f"{result.name} took {elapsed:.1f}s (budget {budget}s)"
