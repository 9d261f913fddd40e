"""Per-criterion PASS/FAIL summary for tests marked ``acceptance(n)``."""

from collections import defaultdict

import pytest

_outcomes = defaultdict(list)
_TITLES = {
    1: "closed form vs recursion oracle",
    2: "mode-sum identities",
    3: "squeezed-vacuum initial rate",
    4: "squeezed -> coherent reduction",
    5: "tau -> 0 law and monotonicity in |zeta|",
    6: "Fock-oracle moments",
    7: "series vs closed-form coherent rate",
    8: "quantum vs semiclassical absorption",
    9: "cavity-rate ordering in |zeta|",
    10: "absorption spectrum shape",
    11: "verify suite runtime and exit status",
}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _outcomes[marker.args[0]].append((item.name, report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_outcomes):
        results = _outcomes[number]
        status = "PASS" if all(ok for _, ok in results) else "FAIL"
        failing = [name for name, ok in results if not ok]
        tail = f"  (failing: {', '.join(failing)})" if failing else ""
        terminalreporter.write_line(f"criterion {number:>2d} {status}  {_TITLES.get(number, '')}{tail}")
