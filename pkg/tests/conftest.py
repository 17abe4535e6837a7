import pytest

from swrecon.ldpc import regular

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def m36_2000():
    """(3,6)-regular PEG matrix, n = 2000, shared across tests."""
    return regular(2000, 3, 6, seed=1)


@pytest.fixture(scope="session")
def acceptance_log():
    """Record one PASS/FAIL line; lines are repeated in the terminal summary."""
    def record(criterion: int, ok: bool, detail: str) -> bool:
        line = f"criterion {criterion:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
