import numpy as np
import pytest

from ivopt import Config


def pytest_configure(config):
    config.addinivalue_line(
        "markers",
        "criterion(num, title): acceptance criterion exercised by this test")
    config._criterion_results = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None and rep.when == "call":
        item.config._criterion_results.append(
            (marker.args[0], marker.args[1], rep.passed))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = getattr(config, "_criterion_results", [])
    if not results:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for num, title, ok in sorted(results):
        terminalreporter.write_line(
            "criterion %02d %s: %s" % (num, "PASS" if ok else "FAIL", title))


@pytest.fixture(scope="session")
def cfg():
    return Config()


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)
