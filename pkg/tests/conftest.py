import pytest
from hypothesis import HealthCheck, settings

from reesval.exactfield import QQField, field_from_config, parse_poly

settings.register_profile("default", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SQRT2 = {"tower": [{"name": "alpha", "minpoly": "alpha^2 - 2"}]}


@pytest.fixture(scope="session")
def sqrt2():
    return field_from_config(SQRT2)


def P(text, vars=("X", "Y"), field=QQField):
    return parse_poly(text, field, vars)


# -- one summary line per acceptance criterion --------------------------------

_titles = {}
_results = {}


def pytest_collection_modifyitems(items):
    for item in items:
        if item.module.__name__.endswith("test_acceptance"):
            doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
            _titles[item.nodeid] = doc


def pytest_runtest_logreport(report):
    if report.nodeid not in _titles:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _results[report.nodeid] = (report.outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, title in _titles.items():
        if nodeid not in _results:
            continue
        outcome, duration = _results[nodeid]
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{mark}  {title}  ({duration:.2f} s)")
