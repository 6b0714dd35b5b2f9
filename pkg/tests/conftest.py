import pytest

_RESULTS = {}  # criterion number -> [title, outcome, details]


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.fixture
def report(request):
    """Collect detail lines for the acceptance summary."""
    m = request.node.get_closest_marker("criterion")
    lines = []
    if m is not None:
        _RESULTS.setdefault(m.args[0], [m.args[1], "not run", lines])
        _RESULTS[m.args[0]][2] = lines
    return lines.append


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is None:
        return
    entry = _RESULTS.setdefault(m.args[0], [m.args[1], "not run", []])
    if rep.when == "setup" and rep.skipped:
        entry[1] = "SKIP"
    elif rep.when == "call" or (rep.when == "setup" and rep.failed):
        entry[1] = "PASS" if rep.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_RESULTS):
        title, outcome, details = _RESULTS[n]
        tr.write_line(f"criterion {n:2d}: {outcome:4}  {title}")
        for d in details:
            tr.write_line(f"                 {d}")
