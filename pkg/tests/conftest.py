import sys
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from moricone import Configuration, GramMatrix  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@st.composite
def symmetric_matrices(draw, min_dim=1, max_dim=6, lo=-4, hi=4):
    n = draw(st.integers(min_dim, max_dim))
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = draw(st.integers(lo, hi))
    return rows


@st.composite
def surface_configurations(draw, min_dim=1, max_dim=6):
    """Diagonal in [-4, -1], off-diagonal in [0, 3]."""
    n = draw(st.integers(min_dim, max_dim))
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = draw(st.integers(-4, -1))
        for j in range(i + 1, n):
            rows[i][j] = rows[j][i] = draw(st.integers(0, 3))
    return make_config(rows)


def make_config(rows, canonical=None, name=""):
    return Configuration(tuple(f"E{i + 1}" for i in range(len(rows))), GramMatrix(rows), canonical, name=name)


@pytest.fixture
def chain_a3():
    return make_config([[-2, 1, 0], [1, -2, 1], [0, 1, -2]])


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
