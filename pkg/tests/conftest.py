from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from catclean.gold import load_gold_corpus, load_gold_labels  # noqa: E402


@pytest.fixture(scope="session")
def gold_corpus():
    return load_gold_corpus()


@pytest.fixture(scope="session")
def gold_labels():
    return load_gold_labels()


_ACCEPTANCE: list[str] = []


class _Criterion:
    """Context manager that times a criterion and records a pass/fail line."""

    def __init__(self, key: str, title: str, budget: float | None):
        self.key, self.title, self.budget = key, title, budget

    def __enter__(self):
        import time

        self._start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        import time

        elapsed = time.perf_counter() - self._start
        over = self.budget is not None and elapsed >= self.budget
        ok = exc_type is None and not over
        note = f"{elapsed:.2f}s" + (f" (budget {self.budget:g}s)" if self.budget is not None else "")
        if exc_type is not None:
            note += f" {exc_type.__name__}"
        line = f"{self.key} {'PASS' if ok else 'FAIL'}  {self.title}  [{note}]"
        _ACCEPTANCE.append(line)
        print(line)
        if exc_type is None and over:
            raise AssertionError(f"{self.key} exceeded its {self.budget:g}s budget: {elapsed:.2f}s")
        return False


@pytest.fixture
def criterion():
    return _Criterion


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE):
            terminalreporter.write_line(line)
