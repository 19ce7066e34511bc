import pytest

from peisert.digits import CarryContext
from peisert.field import FieldTable
from peisert.galois_ring import GaloisRing


@pytest.fixture(scope="session")
def field9():
    return FieldTable(3, 2)


@pytest.fixture(scope="session")
def field49():
    return FieldTable(7, 2)


@pytest.fixture(scope="session")
def field81():
    return FieldTable(3, 4)


@pytest.fixture(scope="session")
def ring9(field9):
    return GaloisRing(field9, 4)


@pytest.fixture(scope="session")
def ring49(field49):
    return GaloisRing(field49, 4)


@pytest.fixture(scope="session")
def ring81(field81):
    return GaloisRing(field81, 6)


@pytest.fixture(scope="session")
def ctx9():
    return CarryContext(3, 1)


@pytest.fixture(scope="session")
def ctx49():
    return CarryContext(7, 1)


@pytest.fixture(scope="session")
def ctx81():
    return CarryContext(3, 2)
