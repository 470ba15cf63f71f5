import numpy as np
import pytest

from relaysec.discrete import DiscreteRelayChannel

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def _table(sizes, law):
    t = np.zeros(sizes)
    for x in range(sizes[0]):
        for xr in range(sizes[1]):
            for (y, yr), pr in law(x, xr).items():
                t[x, xr, y, yr] += pr
    return t


@pytest.fixture
def xor_pad_channel():
    """Y = X, Yr = X xor Xr (binary)."""
    return DiscreteRelayChannel(_table((2, 2, 2, 2), lambda x, xr: {(x, x ^ xr): 1.0}))


@pytest.fixture
def bsc_channel():
    """Y = X noiseless, Yr = BSC(0.1)(X), relay input ignored."""
    return DiscreteRelayChannel(
        _table((2, 2, 2, 2), lambda x, xr: {(x, x): 0.9, (x, 1 - x): 0.1}))
