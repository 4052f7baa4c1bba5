import pytest

CRITERIA: dict[str, str] = {}


@pytest.fixture
def criterion():
    """Record one pass/fail line per acceptance criterion."""

    def record(key: str, ok: bool, worst: float, tol: float, note: str = "") -> None:
        status = "PASS" if ok else "FAIL"
        line = f"criterion {key:<4} {status}  worst={worst:.3e}  tol={tol:.1e}"
        CRITERIA[key] = line + (f"  {note}" if note else "")
        print(CRITERIA[key])

    return record


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for key in sorted(CRITERIA, key=lambda k: (int(k.rstrip("abc")), k)):
            terminalreporter.write_line(CRITERIA[key])
