import re

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")
_results: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    n, label = int(m.group(1)), m.group(2).replace("_", " ")
    failed = report.failed or (report.when == "call" and report.skipped)
    if report.when == "call" or failed:
        prev = _results.get(n, ("PASS", label))[0]
        _results[n] = ("FAIL" if failed or prev == "FAIL" else "PASS", label)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        verdict, label = _results[n]
        terminalreporter.write_line(f"criterion {n:2d}: {verdict}  {label}")
