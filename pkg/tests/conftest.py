from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from markgame.graph import build_graph
from markgame.lattices import (
    gen_centered_square,
    gen_hexagonal,
    gen_square_octagon,
    gen_triangular,
)


@pytest.fixture(scope="session")
def k2():
    return build_graph([(0, 0, 0), (1, 1, 0)], [(0, 1)], [], complete_faces=False)


@pytest.fixture(scope="session")
def k3():
    return build_graph(
        [(0, 0, 0), (1, 1, 0), (2, 0.5, 1)], [(0, 1), (0, 2), (1, 2)], [(0, (0, 1, 2))]
    )


@pytest.fixture(scope="session")
def c4():
    return build_graph(
        [(0, 0, 0), (1, 1, 0), (2, 1, 1), (3, 0, 1)],
        [(0, 1), (1, 2), (2, 3), (0, 3)],
        [(0, (0, 1, 2, 3))],
    )


@pytest.fixture(scope="session")
def star4():
    """K_{1,3}: center 0 with three leaves."""
    return build_graph(
        [(0, 0, 0), (1, 1, 0), (2, -1, 0), (3, 0, 1)],
        [(0, 1), (0, 2), (0, 3)],
        [],
        complete_faces=False,
    )


@pytest.fixture(scope="session")
def t22():
    return gen_triangular(2, 2)


@pytest.fixture(scope="session")
def t33():
    return gen_triangular(3, 3)


@pytest.fixture(scope="session")
def t44():
    return gen_triangular(4, 4)


@pytest.fixture(scope="session")
def r22():
    return gen_centered_square(2, 2)


@pytest.fixture(scope="session")
def c22():
    return gen_square_octagon(2, 2)


@pytest.fixture(scope="session")
def h22():
    return gen_hexagonal(2, 2)


@pytest.fixture(scope="session")
def all_window_bundles(t22, t33, r22, c22):
    return {
        "T 2x2": t22,
        "T 3x3": t33,
        "R 2x2": r22,
        "C 2x2": c22,
    }
