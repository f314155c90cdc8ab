import numpy as np
import pytest
from hypothesis import strategies as st

from cdtree import BinaryDataset, load_fixture


@pytest.fixture(scope="session")
def fig2a():
    return load_fixture("fig2a")


@pytest.fixture(scope="session")
def fig3a():
    return load_fixture("fig3a")


@pytest.fixture(scope="session")
def titanic():
    return load_fixture("titanic")


def random_dataset(rng, n_rows, m, max_weight=5, p=0.5):
    X = (rng.random((n_rows, m)) < p).astype(np.int8)
    y = (rng.random(n_rows) < 0.5).astype(np.int8)
    w = rng.integers(1, max_weight + 1, n_rows)
    return BinaryDataset(tuple(f"x{i}" for i in range(m)), "y", X, y, w)


@st.composite
def datasets(draw, max_m=6, max_rows=60):
    m = draw(st.integers(1, max_m))
    rows = draw(st.integers(1, max_rows))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_dataset(np.random.default_rng(seed), rows, m)


def tables(max_count=40):
    c = st.integers(0, max_count)
    return st.tuples(c, c, c, c)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[num])
