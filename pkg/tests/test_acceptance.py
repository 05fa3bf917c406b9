"""Runs every acceptance criterion at its stated limits."""
import pytest

from flasque.acceptance import CRITERIA, run_criterion


@pytest.mark.slow
@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: f"criterion_{c.number:02d}")
def test_criterion(criterion, report_line):
    outcome = run_criterion(criterion)
    print(outcome.line())
    report_line(outcome.line())
    assert outcome.passed, outcome.detail
