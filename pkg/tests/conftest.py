import pytest

_acceptance_lines: list[str] = []


@pytest.fixture
def acceptance_report():
    """Records one PASS/FAIL line per end-to-end criterion; the lines are
    echoed in the terminal summary (outside pytest's output capture)."""
    def _report(criterion: str, ok: bool, detail: str) -> None:
        line = f"[acceptance] {criterion}: {'PASS' if ok else 'FAIL'} -- {detail}"
        _acceptance_lines.append(line)
        print(line)
    return _report


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
