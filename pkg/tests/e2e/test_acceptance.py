"""
Acceptance checks: the crosscheck suite at reduced bounds, and at full bounds with --runslow
"""

import pytest

from crosscheck import CHECKS, run_crosscheck
from monova_cli import main
from variety_oracles import VerdictStatus


def _failures(verdicts):
    return [v.render() for v in verdicts if v.status != VerdictStatus.HOLDS]


def test_every_check_has_a_distinct_name():
    names = [check.name for check in CHECKS]
    assert len(names) == len(set(names))


def test_quick_crosscheck():
    verdicts = run_crosscheck(quick=True)
    assert len(verdicts) == len(CHECKS)
    assert _failures(verdicts) == []


def test_quick_crosscheck_from_the_command_line(capsys):
    assert main(["crosscheck", "--quick", "--format", "machine"]) == 0
    out = capsys.readouterr().out
    assert out.count("status: HOLDS") == len(CHECKS)


@pytest.mark.slow
def test_full_crosscheck():
    assert _failures(run_crosscheck(quick=False)) == []
