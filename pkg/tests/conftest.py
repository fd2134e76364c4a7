import time

import pytest
from hypothesis import HealthCheck, settings

from nonlocal_casimir.harness.builtins import builtin_material

settings.register_profile(
    "physics", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("physics")

# criterion number -> (passed, detail); filled by the acceptance tests
ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}
_SESSION_START = [0.0]


def pytest_sessionstart(session):
    _SESSION_START[0] = time.perf_counter()


@pytest.fixture(scope="session")
def au():
    return builtin_material("au-9.0")


@pytest.fixture(scope="session")
def au89():
    return builtin_material("au-8.9")


@pytest.fixture(scope="session")
def ni():
    return builtin_material("ni")


@pytest.fixture
def record_criterion():
    def record(n: int, passed: bool, detail: str):
        ACCEPTANCE_RESULTS[n] = (passed, detail)
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
    elapsed = time.perf_counter() - _SESSION_START[0]
    terminalreporter.write_line(f"whole suite (unit, property and acceptance tests): {elapsed:.1f} s")
