import re
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_CRITERION = re.compile(r"TestCriterion(\d+)([A-Za-z]+)")
_verdicts: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    """Collect one verdict per acceptance criterion from its test outcome."""
    if report.when != "call":
        return
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    num, name = int(m.group(1)), m.group(2)
    outcome = "PASS" if report.passed else "FAIL"
    if _verdicts.get(num, ("", "PASS"))[1] != "FAIL":
        _verdicts[num] = (name, outcome)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_verdicts):
        name, outcome = _verdicts[num]
        slug = re.sub(r"(?<!^)(?=[A-Z])", "-", name).lower()
        terminalreporter.write_line(f"criterion {num:02d} {slug}: {outcome}")
