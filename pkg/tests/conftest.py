import sys
from pathlib import Path

from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

_acceptance: dict[str, list[str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    row = _acceptance.setdefault(name, ["FAIL", ""])
    if report.when == "call":
        row[0] = "PASS" if report.passed else "FAIL"
    elif report.when == "teardown":
        row[1] = dict(report.user_properties).get("detail", "")


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, (verdict, detail) in _acceptance.items():
        terminalreporter.write_line(f"{verdict}  {name}  {detail}".rstrip())
