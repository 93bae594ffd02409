import time

import pytest

_RESULTS: list[str] = []


class Criterion:
    """Records one acceptance line: number, outcome and elapsed time against a limit."""

    def __init__(self, number: int, title: str, limit: float | None = None):
        self.number, self.title, self.limit = number, title, limit

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        ok = exc_type is None and (self.limit is None or elapsed < self.limit)
        if exc_type is not None and issubclass(exc_type, pytest.skip.Exception):
            status = "SKIP"
        else:
            status = "PASS" if ok else "FAIL"
        limit = f" (limit {self.limit:g}s)" if self.limit else ""
        line = f"criterion {self.number:>2}: {status}  {self.title}  [{elapsed:.2f}s{limit}]"
        _RESULTS.append(line)
        print(line)
        if exc_type is None and not ok:
            pytest.fail(f"criterion {self.number} exceeded its time limit: {elapsed:.2f}s")
        return False


@pytest.fixture
def criterion():
    return Criterion


def pytest_terminal_summary(terminalreporter):
    if _RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_RESULTS):
            terminalreporter.write_line(line)
