import pytest

from src.binary.sylvester import Z0, Z1
from src.curves.curve import RationalCurve, rnc


@pytest.fixture
def twisted_cubic() -> RationalCurve:
    return rnc(3)


@pytest.fixture
def cuspidal_cubic() -> RationalCurve:
    """(1 : s^2 : s^3), cusp at s = 0"""
    return RationalCurve.from_exprs([Z0 ** 3, Z0 * Z1 ** 2, Z1 ** 3])


@pytest.fixture
def nodal_cubic() -> RationalCurve:
    """(1 : s^2 - 1 : s^3 - s), node at s = 1 and s = -1"""
    return RationalCurve.from_exprs([Z0 ** 3, Z0 * Z1 ** 2 - Z0 ** 3, Z1 ** 3 - Z0 ** 2 * Z1])
