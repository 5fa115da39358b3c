from hypothesis import settings

settings.register_profile("repo", derandomize=True, deadline=None)
settings.load_profile("repo")

_criteria: dict[int, tuple[str, str, float]] = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    number, title = marker.args
    _criteria[number] = ("PASS" if call.excinfo is None else "FAIL", title, call.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        status, title, seconds = _criteria[number]
        terminalreporter.write_line(f"criterion {number:2d}: {status}  {title}  ({seconds:.2f} s)")
