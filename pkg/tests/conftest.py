import os

import pytest
from hypothesis import HealthCheck, settings

from digifix.image import DigitalImage, Metric
from digifix.selfmap import SelfMap

settings.register_profile("default", max_examples=100, deadline=None)
settings.register_profile("fast", max_examples=10, deadline=None)
settings.register_profile(
    "thorough", max_examples=1000, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

L1 = Metric("lp", 1)
L2 = Metric("lp", 2)
HOP = Metric("hop")


@pytest.fixture
def cx_image():
    return DigitalImage(((0, 0, 0, 0, 0), (2, 0, 0, 0, 0), (1, 1, 1, 1, 1)), 5)


@pytest.fixture
def cx_map():
    return SelfMap((0, 0, 1))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[number])
