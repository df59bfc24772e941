"""shared fixtures for the hk-lab test suite"""
import pytest

from hk_estimator import RingSpec
from polynomial import PolynomialRing


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: engine runs at q = 25 and beyond")


@pytest.fixture
def r3():
    """F_5[x,y,z] under degrevlex"""
    return PolynomialRing(5, ('x', 'y', 'z'))


@pytest.fixture
def quadric():
    """F_5[x,y,z]/(x^2 + y^2 + z^2)"""
    ring = PolynomialRing(5, ('x', 'y', 'z'))
    x, y, z = ring.gens()
    return RingSpec(5, ('x', 'y', 'z'), (x ** 2 + y ** 2 + z ** 2,))
