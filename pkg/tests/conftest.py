import pytest
from hypothesis import HealthCheck, settings

from renorm_sums.sieve import sieve_spf
from renorm_sums.tau import default_tau_table

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def small_sieve():
    return sieve_spf(200_000)


@pytest.fixture(scope="session")
def big_sieve():
    return sieve_spf(10**6)


@pytest.fixture(scope="session")
def small_tau():
    return default_tau_table(5_000)


@pytest.fixture(scope="session")
def full_tau():
    return default_tau_table()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
