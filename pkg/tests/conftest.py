import os
import random

import pytest
from hypothesis import settings

SEED = int(os.environ.get("PADIC_TWOTERM_TEST_SEED", "20240607"))

settings.register_profile("default", max_examples=60, deadline=None, derandomize=True)
settings.load_profile("default")

_acceptance_lines: list[str] = []


@pytest.fixture
def rng():
    return random.Random(SEED)


@pytest.fixture
def acceptance_line():
    def record(number: int, passed: bool, text: str):
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'} - {text}"
        _acceptance_lines.append(line)
        print(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
