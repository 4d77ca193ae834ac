import pytest

from abeliandecide.templates import ancestor_closure
from abeliandecide.words import Morphism

DEKKING = Morphism.from_strings("1123", "133", "223")
CONTROL = Morphism.from_strings("1121", "221")

_criteria: dict[str, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    label = marker.args[0]
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        prev = _criteria.get(label, "PASS")
        _criteria[label] = "FAIL" if (rep.failed or prev == "FAIL") else "PASS"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_criteria, key=lambda s: int(s.split(".")[0])):
        terminalreporter.write_line(f"[{_criteria[label]}] {label}")


@pytest.fixture(scope="session")
def dekking():
    return DEKKING


@pytest.fixture(scope="session")
def control():
    return CONTROL


@pytest.fixture(scope="session")
def dekking_closure():
    return ancestor_closure(DEKKING, 3)


@pytest.fixture(scope="session")
def dekking_ancestors(dekking_closure):
    return dekking_closure.templates
