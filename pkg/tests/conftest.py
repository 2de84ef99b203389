import numpy as np
import pytest

from specset.calculus import CalculusContext
from specset.lemma import SHARP_T, two_disk_domain


@pytest.fixture
def rng():
    return np.random.default_rng(20171217)


@pytest.fixture(scope="session")
def two_disk_ctx():
    return CalculusContext(SHARP_T, two_disk_domain(), 256)


def random_complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LOG = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LOG:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LOG, key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)
