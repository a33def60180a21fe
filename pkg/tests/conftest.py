import pytest

from fourtops.heyting import HeytingAlgebra
from fourtops.poset import Poset, TwoColumnGraph, star_graph


@pytest.fixture(scope="session")
def star():
    """The running 4-point example: p = q = 2 with cross arrow 2_ -> _1."""
    return star_graph()


@pytest.fixture(scope="session")
def star_poset(star):
    return star.poset()


@pytest.fixture(scope="session")
def star_algebra(star_poset):
    return HeytingAlgebra(star_poset)


@pytest.fixture(scope="session")
def one_point():
    return Poset(["u"])


def pile_code_str(graph: TwoColumnGraph, downset) -> str:
    a, b = graph.pile_code(downset)
    return f"{a}{b}"
