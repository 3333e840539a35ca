import re

from hypothesis import settings

# numba compiles on first call; never let that trip a deadline
settings.register_profile("bdtw", deadline=None, max_examples=150)
settings.load_profile("bdtw")

_CRITERION = re.compile(r"test_c(\d+)_(\w+)")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One PASS/FAIL line per acceptance criterion at the end of the run."""
    rows = []
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance" not in nodeid:
                continue
            match = _CRITERION.search(nodeid)
            if not match:
                continue
            num, label = int(match.group(1)), match.group(2).replace("_", " ")
            rows.append((num, label, "PASS" if outcome == "passed" else "FAIL"))
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for num, label, verdict in sorted(rows):
        terminalreporter.write_line(f"{verdict}  criterion {num}: {label}")
