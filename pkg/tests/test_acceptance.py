"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import pytest

from clusterpos import acceptance


@pytest.mark.parametrize("number", [s[0] for s in acceptance.SUITES],
                         ids=[f"criterion{s[0]:02d}" for s in acceptance.SUITES])
def test_criterion(number, record_line):
    result = acceptance.run_suite(number)
    print(result.line())
    record_line(result.line())
    assert result.passed, result.detail
    assert result.within_budget, f"{result.seconds:.1f}s exceeds {result.budget}s"


@pytest.mark.parametrize("number", [3, 9, 10])
def test_corrupted_quiver_rule_is_caught(number):
    result = acceptance.run_suite(number, acceptance.drop_inclined_arrows)
    assert not result.passed
