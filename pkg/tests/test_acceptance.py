"""Acceptance gate: every registered check must pass at its stated tolerance."""
import pytest

from treechaos.selfcheck import CHECKS


@pytest.mark.parametrize("name,check", CHECKS, ids=[name for name, _ in CHECKS])
def test_acceptance(name, check):
    ok, detail = check()
    print(f"{name}: {detail}")
    assert ok, f"{name} failed: {detail}"
