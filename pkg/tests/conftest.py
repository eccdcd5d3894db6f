import numpy as np
import pytest

from sortnet.core import SortingNetwork

FIG1 = SortingNetwork(5, (2, 1, 3, 4, 2, 3, 4, 2, 1, 2))

_ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def fig1():
    return FIG1


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def criterion():
    """Record one acceptance line; the summary is printed at the end of the run."""

    def record(name: str, ok: bool, detail: str = "") -> bool:
        _ACCEPTANCE.append((name, bool(ok), detail))
        return bool(ok)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}".rstrip())
