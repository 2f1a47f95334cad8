import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def random_oct(rng, *shape):
    return rng.uniform(-1.0, 1.0, shape + (8,))


_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion gate")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call" and not report.failed:
        return
    number, title = marker.args
    detail = dict(item.user_properties).get("detail", "")
    previous = _CRITERIA.get(number, (title, True, ""))[1]
    _CRITERIA[number] = (title, previous and report.passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, ok, detail = _CRITERIA[number]
        suffix = f" ({detail})" if detail else ""
        terminalreporter.write_line(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}: {title}{suffix}")
