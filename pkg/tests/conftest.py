import random
from pathlib import Path

import pytest

CORPUS = Path(__file__).parent / "corpus"

# filled by test_acceptance; printed at the end of the run
CRITERIA: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        ok, detail = CRITERIA[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
