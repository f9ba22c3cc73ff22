import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def report():
    """Record a one-line verdict that is echoed in the terminal summary."""
    def add(criterion, passed, text, warn_only=False):
        verdict = "PASS" if passed else ("WARN" if warn_only else "FAIL")
        ACCEPTANCE_LINES.append(f"[{verdict}] {criterion}: {text}")
        print(ACCEPTANCE_LINES[-1])
    return add


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
