import re


def pytest_terminal_summary(terminalreporter):
    """One line per acceptance criterion, with the values each test recorded."""
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if rep.when != "call" or "test_acceptance.py" not in rep.nodeid:
                continue
            m = re.search(r"test_criterion_(\d+)_(\w+)", rep.nodeid)
            if not m:
                continue
            detail = "; ".join(f"{k}={v}" for k, v in rep.user_properties)
            lines.append((int(m.group(1)), m.group(2), outcome.upper(), detail))
    if not lines:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for num, name, outcome, detail in sorted(lines):
        status = "PASS" if outcome == "PASSED" else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d} {status}  {name}  [{detail}]")
