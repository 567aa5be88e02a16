import os
import random

import pytest
from hypothesis import settings

SEED = int(os.environ.get("HEXLOOP_TEST_SEED", "20240611"))

settings.register_profile("hexloop", derandomize=True, max_examples=60, deadline=None)
settings.load_profile("hexloop")


def pytest_report_header(config):
    return f"hexloop test seed: {SEED} (hypothesis derandomized)"


@pytest.fixture
def rng():
    return random.Random(SEED)


ACCEPTANCE_LINES: list[str] = []


def report_criterion(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
