import pytest

from lhsp6.polyring import phase_space
from lhsp6.realization import sp6_hamiltonians


@pytest.fixture(scope="session")
def Z():
    """The phase-space generators q1, q2, q3, p1, p2, p3."""
    return phase_space().gens()


@pytest.fixture(scope="session")
def H():
    """h1 .. h21 indexed from 1 (H[0] is unused)."""
    return (None,) + tuple(sp6_hamiltonians())


_ACCEPTANCE: list[str] = []


@pytest.fixture(scope="session")
def acceptance():
    """Record one PASS/FAIL line per acceptance criterion.

    Lines are printed immediately (visible with ``-s``) and repeated in the
    terminal summary so they also appear in captured runs.
    """

    def record(number: int, ok: bool, detail: str) -> bool:
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
        print(line)
        _ACCEPTANCE.append(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda l: int(l.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
