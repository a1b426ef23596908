import math

import numpy as np
import pytest
from hypothesis import settings

from doublejc.model import SingleExcState

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: dict[str, str] = {}


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_state(rng) -> SingleExcState:
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    return SingleExcState.from_array(v / np.linalg.norm(v))


@pytest.fixture
def thetas():
    return (math.pi / 12, math.pi / 6, math.pi / 4)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda k: (int(k.rstrip("ab")), k)):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
