"""End-to-end acceptance checks; run with ``pytest tests/test_acceptance.py -s``
to see one PASS/FAIL line per criterion."""

import pytest

from wreathlab.acceptance import CRITERIA, run_acceptance


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    result = CRITERIA[number]()
    print(result.line())
    assert result.number == number
    assert result.passed, result.detail


def test_all_eight_criteria_present():
    assert sorted(CRITERIA) == list(range(1, 9))


def test_runner_reports_in_order():
    results = run_acceptance([5, 2])
    assert [r.number for r in results] == [5, 2]
    assert all(r.passed for r in results)
    assert "seconds" not in results[0].as_dict()
