import pytest

from src.circuits import enumerate_circuits
from src.exactmat import IntMatrix
from src.generators import convex_polygon, cyclic_by_codimension, monomial_curve


@pytest.fixture
def twisted_cubic():
    return monomial_curve([0, 1, 2, 3])


@pytest.fixture
def twisted_cubic_basis():
    return IntMatrix.from_columns([(1, -2, 1, 0), (0, 1, -2, 1)])


@pytest.fixture
def decagon():
    return convex_polygon(10)


@pytest.fixture(scope="session")
def cyclic14():
    # r=3, n=14: the smallest size where the cyclic family has no CI basis ideal
    return cyclic_by_codimension(3, 14)


@pytest.fixture(scope="session")
def cyclic14_circuits(cyclic14):
    return enumerate_circuits(cyclic14)
