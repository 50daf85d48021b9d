import json
from pathlib import Path

import pytest

from fqdigraph.field import GF
from fqdigraph.funcspec import load_document

DATA = Path(__file__).parent / "data"

XI = 5  # the power-basis generator of F_25 has index p = 5

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def golden_doc():
    return json.loads((DATA / "golden_f25.json").read_text())


@pytest.fixture(scope="session")
def golden(golden_doc):
    return load_document(golden_doc)


@pytest.fixture(scope="session")
def f25():
    return GF(5, 2, [2, 4, 1])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
