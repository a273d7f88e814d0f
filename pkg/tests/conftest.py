import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from hardyshell.scatter import PotentialSpec

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

_ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def shell():
    return PotentialSpec(1.0, 2.0, 1.0)


@pytest.fixture(scope="session")
def free():
    return PotentialSpec(1.0, 2.0, 0.0)


@pytest.fixture
def acceptance_line():
    def record(number, passed, detail):
        line = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
        _ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda s: int(s.split(":")[0].split()[1])):
            terminalreporter.write_line(line)
