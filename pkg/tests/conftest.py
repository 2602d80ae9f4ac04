import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None) if mod else None
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num, desc, passed in sorted(results):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"acceptance criterion {num:2d} ({desc}): {status}")
