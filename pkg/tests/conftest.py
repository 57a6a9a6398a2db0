import os
import random

import pytest
from hypothesis import HealthCheck, settings

from floerkit.randomized import seed_from_env

settings.register_profile(
    "floer",
    deadline=None,
    derandomize=os.environ.get("FLOER_SEED") is None,
    suppress_health_check=[HealthCheck.too_slow],
    max_examples=60,
)
settings.load_profile("floer")


@pytest.fixture
def seed() -> int:
    return seed_from_env()


@pytest.fixture
def rng(seed, request) -> random.Random:
    """A generator seeded from FLOER_SEED and the test name, so tests do not share streams."""
    return random.Random(f"{seed}:{request.node.name}")


_CRITERIA = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rpartition("::")[2]
    if not report.nodeid.startswith("tests/test_acceptance.py") or not name.startswith("test_criterion_"):
        return
    if report.when == "call" or report.failed:
        _CRITERIA.setdefault(name, "PASS" if report.passed else "FAIL")
        if report.failed:
            _CRITERIA[name] = "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA):
        number = int(name.split("_")[2])
        label = " ".join(name.split("_")[3:])
        terminalreporter.write_line(f"criterion {number}: {_CRITERIA[name]}  ({label})")
