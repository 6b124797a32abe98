import pytest

from posetforge import PosetMatrix

# 0 < 2, 1 < 2, 1 < 3
A_N_TEXT = "1000\n0100\n1110\n0101\n"

A8_LISTS = [
    [1, 0, 0, 0, 0, 0, 0, 0],
    [1, 1, 0, 0, 0, 0, 0, 0],
    [1, 0, 1, 0, 0, 0, 0, 0],
    [1, 1, 1, 1, 0, 0, 0, 0],
    [1, 1, 1, 0, 1, 0, 0, 0],
    [1, 1, 1, 0, 0, 1, 0, 0],
    [1, 1, 1, 0, 0, 0, 1, 0],
    [1, 1, 1, 0, 1, 0, 0, 1],
]


@pytest.fixture
def a_n():
    return PosetMatrix.from_lists([[1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 1, 0], [0, 1, 0, 1]])


@pytest.fixture
def v_shape():
    return PosetMatrix.from_lists([[1, 0, 0], [1, 1, 0], [1, 0, 1]])


@pytest.fixture
def a8():
    return PosetMatrix.from_lists(A8_LISTS)
