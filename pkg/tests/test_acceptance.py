"""Acceptance gate: one test per criterion, printing one PASS/FAIL line each.

Run the full-depth version with ``TWISTORP1_ACCEPTANCE=full pytest
tests/test_acceptance.py``; the default uses the reduced sample sizes.
"""

import os

import pytest

from twistorp1.acceptance import CHECKS

QUICK = os.environ.get("TWISTORP1_ACCEPTANCE", "quick") != "full"
SEED = int(os.environ.get("TWISTORP1_SEED", "0"))


@pytest.mark.parametrize("name", sorted(CHECKS, key=lambda s: int(s[2:])))
def test_criterion(name, capsys):
    result = CHECKS[name](seed=SEED, quick=QUICK)
    with capsys.disabled():
        print(f"{name}: {'PASS' if result.passed else 'FAIL'} — {result.detail}")
    assert result.passed, f"{name} failed: {result.detail}; {result.failures[:5]}"


def test_registry_complete():
    assert set(CHECKS) == {f"AC{i}" for i in range(1, 12)}
