"""The twelve acceptance criteria, each timed from cold caches against its limit.

Each test prints one PASS/FAIL line to the terminal even when output is captured.
"""

import pytest

from priestley.verify import CRITERIA, run_criterion


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    r = run_criterion(number)
    with capsys.disabled():
        print("\n" + r.line())
    assert r.passed, "; ".join(r.detail)
    assert r.seconds < r.limit, f"took {r.seconds:.2f}s, limit {r.limit}s"
