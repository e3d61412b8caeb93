import time

import pytest

ACCEPTANCE_LINES: list[str] = []
SUITE_BUDGET_S = 10.0
_START = time.perf_counter()


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line per acceptance criterion; printed in the summary."""

    def record(label: str, ok: bool, detail: str = "") -> bool:
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {label}" + (f": {detail}" if detail else ""))
        print(ACCEPTANCE_LINES[-1])
        return ok

    return record


def pytest_sessionfinish(session, exitstatus):
    # AC10's runtime half covers the whole suite, so it is judged here.
    if not ACCEPTANCE_LINES:
        return
    elapsed = time.perf_counter() - _START
    ok = elapsed < SUITE_BUDGET_S
    ACCEPTANCE_LINES.append(
        f"[{'PASS' if ok else 'FAIL'}] AC10 suite runtime: {elapsed:.2f} s (budget {SUITE_BUDGET_S:.0f} s)"
    )
    if not ok and exitstatus == 0:
        session.exitstatus = 1


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
