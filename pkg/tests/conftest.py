import itertools
import sys

import pytest

from kmodal import Permutation, make_permutation


def all_permutations(n: int):
    """All permutations of 1..n as Permutation objects."""
    for perm in itertools.permutations(range(1, n + 1)):
        yield make_permutation(perm)


@pytest.fixture
def p15324() -> Permutation:
    """Running example used across the solver and labeling tests."""
    return make_permutation((1, 5, 3, 2, 4))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    verdicts = getattr(mod, "VERDICTS", None)
    if verdicts:
        terminalreporter.section("acceptance criteria")
        for line in verdicts:
            terminalreporter.write_line(line)
