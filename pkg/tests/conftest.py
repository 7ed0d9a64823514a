import numpy as np
import pytest

import gossipavg as ga


class ScriptedRng:
    """Stands in for a Generator when a test needs to pin node choices."""

    def __init__(self, values):
        self._values = list(values)

    def random(self, size=None):
        if size is None:
            return self._values.pop(0)
        return np.array([self._values.pop(0) for _ in range(size)])


def force_source(s: int, n: int) -> float:
    """Uniform draw that makes the index sampler pick node s out of n."""
    return (s + 0.5) / n


def random_connected_graph(rng: np.random.Generator, n_lo: int = 5, n_hi: int = 25,
                           d: float = 2.0) -> ga.Graph:
    n = int(rng.integers(n_lo, n_hi + 1))
    return ga.generate_random_geometric(n, d, int(rng.integers(0, 2**63)))


@pytest.fixture
def k2():
    return ga.from_edges(2, [(0, 1)])


@pytest.fixture
def star4():
    # center 0 with three leaves
    return ga.from_edges(4, [(0, 1), (0, 2), (0, 3)])


@pytest.fixture
def path5():
    return ga.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)])


@pytest.fixture(scope="session")
def rgg50():
    return ga.generate_random_geometric(50, 2.0, 424242)
