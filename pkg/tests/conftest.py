import pytest

_LINES_KEY = pytest.StashKey[list]()


@pytest.fixture
def criterion_report(request):
    """Call with (number, passed, detail); the line is printed in the terminal summary."""
    lines = request.config.stash.setdefault(_LINES_KEY, [])

    def report(number: int, passed: bool, detail: str):
        line = f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}"
        print(line)
        lines.append((number, line))

    return report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LINES_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
