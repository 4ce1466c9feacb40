import pytest

from secantlab.arith import PrimeField
from secantlab.poly import MonomialOrder, PolyRing


@pytest.fixture(scope="session")
def field():
    return PrimeField(32003)


@pytest.fixture(scope="session")
def ring_xyz(field):
    return PolyRing(["x", "y", "z"], field)


@pytest.fixture(scope="session")
def ring_xy(field):
    return PolyRing(["x", "y"], field)
