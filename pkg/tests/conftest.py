from pathlib import Path

import pytest
from hypothesis import settings

from neumaier.graph import Graph

DATA = Path(__file__).parent / "data"

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def load_corpus() -> list[Graph]:
    lines = (DATA / "graphs_upto8.g6").read_text().split()
    return [Graph.from_graph6(ln) for ln in lines]


@pytest.fixture(scope="session")
def corpus() -> list[Graph]:
    return load_corpus()


@pytest.fixture(scope="session")
def ico():
    from neumaier.generators import icosahedron
    return icosahedron()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
