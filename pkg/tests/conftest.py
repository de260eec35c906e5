import contextlib
import time

import pytest

_RESULTS: list[str] = []


@pytest.fixture
def criterion():
    """Context manager recording one PASS/FAIL line per acceptance criterion, with its time budget."""

    @contextlib.contextmanager
    def run(number: int, title: str, budget: float):
        t0 = time.perf_counter()
        try:
            yield
        except BaseException as e:
            dt = time.perf_counter() - t0
            _RESULTS.append(f"criterion {number:>2} FAIL  {title} ({dt:.2f}s): {str(e).splitlines()[0][:160]}")
            raise
        dt = time.perf_counter() - t0
        ok = dt < budget
        _RESULTS.append(f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title} ({dt:.2f}s, budget {budget:g}s)")
        assert ok, f"took {dt:.2f}s, budget {budget}s"

    return run


def pytest_terminal_summary(terminalreporter):
    if _RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_RESULTS, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
