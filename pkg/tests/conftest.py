import pytest

from consecprimes import PrimeTable

from oracles import primes_trial


@pytest.fixture(scope="session")
def table():
    """One shared prime table; it grows as tests ask for more."""
    return PrimeTable()


@pytest.fixture(scope="session")
def small_primes():
    return primes_trial(200_000)


ACCEPTANCE: dict[str, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion label")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    name = marker.args[0]
    if report.failed:
        ACCEPTANCE[name] = "FAIL"
    elif report.when == "call" and report.passed:
        ACCEPTANCE.setdefault(name, "PASS")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda s: int(s.split()[0])):
        terminalreporter.write_line(f"{ACCEPTANCE[name]:4}  criterion {name}")
