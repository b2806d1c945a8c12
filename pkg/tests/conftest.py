import pytest

ACCEPTANCE: list[str] = []


@pytest.fixture
def acceptance():
    """Collects one summary line per acceptance criterion."""
    def report(number: int, ok: bool, seconds: float, detail: str) -> None:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} ({seconds:.2f} s) {detail}"
        ACCEPTANCE.append(line)
        print(line)
    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
