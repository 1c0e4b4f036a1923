import pytest
from hypothesis import HealthCheck, settings

from meshcert.expansion import IDENTITY, ROT_YZX, ROT_ZYX, SWAP_XY

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

PAIRS = {"xy": (IDENTITY, SWAP_XY), "yz": (ROT_YZX, ROT_ZYX)}

# acceptance lines collected by tests/test_acceptance.py
ACCEPTANCE: list = []


@pytest.fixture(params=sorted(PAIRS))
def pair(request):
    return PAIRS[request.param]


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[2].rstrip(":"))):
        terminalreporter.write_line(line)
