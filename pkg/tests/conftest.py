import numpy as np
import pytest
from hypothesis import strategies as st

from bniso import Network
from bniso.core import Digraph


def rotation(n):
    """f(x)_i = x_{i+1 mod n}."""
    return Network.from_function(n, lambda x: (x >> 1) | ((x & 1) << (n - 1)))


def brute_graph(f):
    """Arc j -> i iff some x has f_i(x) != f_i(x + e_j); plain double loop."""
    arcs = set()
    for x in range(f.size):
        for j in range(f.n):
            y = x ^ (1 << j)
            diff = f(x) ^ f(y)
            for i in range(f.n):
                if diff >> i & 1:
                    arcs.add((j + 1, i + 1))
    return Digraph.from_arcs(f.n, arcs)


@st.composite
def networks(draw, min_n=1, max_n=4):
    n = draw(st.integers(min_n, max_n))
    table = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=1 << n, max_size=1 << n))
    return Network(n, table)


@st.composite
def perms(draw, n):
    return draw(st.permutations(list(range(1 << n))))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
