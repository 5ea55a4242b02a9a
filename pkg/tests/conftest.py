import pytest

from secrecy_ic.channel import ChannelConfig
from secrecy_ic.oracle import random_valid_configs


@pytest.fixture
def fig1_cfg():
    # amplitudes c11 = c22 = 1, c12 = c21 = 0.2, P1 = P2 = 0.1
    return ChannelConfig(1.0, 0.04, 0.04, 1.0, sigma2=1.0, p1=0.1, p2=0.1)


@pytest.fixture
def fig4_cfg():
    return ChannelConfig(1.0, 0.4, 0.5, 1.0)


@pytest.fixture
def fig5_cfg():
    return ChannelConfig(1.0, 0.1, 0.2, 1.0)


@pytest.fixture(scope="session")
def random_configs():
    return random_valid_configs(seed=20240601, count=1000)


_CRITERIA = []


@pytest.fixture
def criterion():
    """Record one acceptance line; returns the pass flag for asserting."""
    def record(name, passed, detail):
        line = f"{'PASS' if passed else 'FAIL'}  {name}: {detail}"
        _CRITERIA.append(line)
        print(line)
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in _CRITERIA:
            terminalreporter.write_line(line)
