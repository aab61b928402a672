"""The nine acceptance checks at full size, one PASS/FAIL line each."""

from __future__ import annotations

import pytest

from pfcirc.acceptance import CHECKS
from pfcirc.sampling import DEFAULT_SEED


@pytest.mark.parametrize("check", CHECKS, ids=[f"check{k}_{f.__name__[6:]}" for k, f in enumerate(CHECKS, 1)])
def test_acceptance(check, capsys):
    result = check(seed=DEFAULT_SEED)
    with capsys.disabled():
        print(f"\n{result.line()}  {result.details}")
    assert result.passed, result.details
