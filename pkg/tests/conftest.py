import pytest

CRITERIA: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Record and print a one-line verdict for an acceptance criterion."""
    def record(number: int, ok: bool, text: str):
        CRITERIA[number] = (ok, text)
        print(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {text}")
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        ok, text = CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {text}")
