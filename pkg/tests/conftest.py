import numpy as np
import pytest

from fracparity import instance
from fracparity.field import DEFAULT_PRIME, FieldSampler, derive_seed

SMALL_PRIME = 97


def graph_instance(vertices, edges, p=DEFAULT_PRIME):
    return instance.from_graph(instance.Graph(vertices, tuple(edges)), p)


def random_square(sampler: FieldSampler, n: int) -> np.ndarray:
    return sampler.draw_array((n, n))


def random_skew(sampler: FieldSampler, n: int, p: int) -> np.ndarray:
    A = sampler.draw_array((n, n))
    return (np.triu(A, 1) - np.triu(A, 1).T) % p


def random_nonsingular(sampler: FieldSampler, n: int, p: int) -> np.ndarray:
    from fracparity import linalg
    while True:
        A = sampler.draw_array((n, n))
        if linalg.rank(A, p) == n:
            return A


def seeded_instances(count, seed, n_range=(2, 8), m_range=(2, 6)):
    """Valid random instances cycling over the size box."""
    out = []
    t = 0
    while len(out) < count:
        n = n_range[0] + t % (n_range[1] - n_range[0] + 1)
        m = m_range[0] + t % (m_range[1] - m_range[0] + 1)
        t += 1
        if n > 2 * m:
            continue
        out.append(instance.random_instance(n, m, derive_seed(seed, f"gen/{t}")))
    return out


@pytest.fixture
def single_line():
    return graph_instance(2, [(0, 1)])


@pytest.fixture
def twin_lines():
    return graph_instance(2, [(0, 1), (0, 1)])


@pytest.fixture
def path3():
    return graph_instance(3, [(0, 1), (1, 2)])


@pytest.fixture
def triangle():
    return graph_instance(3, [(0, 1), (1, 2), (0, 2)])
