import pytest
from hypothesis import HealthCheck, settings

from chainlab import suite
from chainlab.finring import build

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SUITE = suite.load_suite()
SUITE_IDS = [r.name for r in SUITE]


@pytest.fixture(params=SUITE, ids=SUITE_IDS)
def suite_ring(request):
    return request.param.ring


def ring(spec):
    return build(spec)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
