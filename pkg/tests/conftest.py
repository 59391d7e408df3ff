import sys

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=100,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture
def free_quintic():
    from syzcert.poly import parse_poly

    return parse_poly("x^5+x^2*y^3+y^4*z")


@pytest.fixture
def nearly_free_quintic():
    from syzcert.poly import parse_poly

    return parse_poly("x^5+x^4*y+y^4*z")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for entry in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.summary_line(entry))
