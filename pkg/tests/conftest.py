import pytest

ACCEPTANCE_LINES = {}


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line per acceptance criterion for the summary."""
    name = request.node.name
    ACCEPTANCE_LINES[name] = f"FAIL {name}"
    details = []
    yield details
    rep = getattr(request.node, "rep_call", None)
    status = "PASS" if rep is not None and rep.passed else "FAIL"
    ACCEPTANCE_LINES[name] = f"{status} {name}" + (f": {'; '.join(details)}" if details else "")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES.values():
            terminalreporter.write_line(line)
