import numpy as np
import pytest

from qwtree4.tree import TreeParams


@pytest.fixture(scope="session")
def p5():
    """The 5-vertex path: centre, two stems, one leaf each."""
    return TreeParams.of((1,), (2,))


@pytest.fixture(scope="session")
def k3_tree():
    """34-vertex two-class tree: 9 bare stems, 8 stems with 2 leaves."""
    return TreeParams.of((0, 2), (9, 8))


@pytest.fixture(scope="session")
def big_t3():
    """1354-vertex three-class tree from the worked example."""
    return TreeParams.of((0, 2, 22), (99, 96, 42))


@pytest.fixture()
def rng():
    return np.random.default_rng(20240811)
