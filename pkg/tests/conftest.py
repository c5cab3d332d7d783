from fractions import Fraction

import pytest

from terracini import (
    Divisor,
    HyperplaneSystem,
    ParamValue,
    ParametricRational,
    PlaneImplicit,
    Polynomial,
)
from terracini.qlinalg import MPoly
from terracini.witness import standard_g3, witness_quartic


def rnc(r: int) -> ParametricRational:
    return ParametricRational([Polynomial.monomial(i) for i in range(r + 1)])


@pytest.fixture(scope="session")
def rnc3():
    return rnc(3)


@pytest.fixture(scope="session")
def rnc5():
    return rnc(5)


@pytest.fixture(scope="session")
def quartic_witness():
    return witness_quartic()


@pytest.fixture(scope="session")
def g3_curve():
    return standard_g3().curve


@pytest.fixture(scope="session")
def hyperplane():
    return HyperplaneSystem()


@pytest.fixture
def s01():
    return Divisor.reduced([ParamValue(Fraction(0)), ParamValue(Fraction(1))])


@pytest.fixture(scope="session")
def planted_bitangent_quartic():
    # F = x^2 (x - z)^2 + y^4 + y z^3: the line y = 0 is tangent at
    # (0:0:1) and (1:0:1) because F restricted to it is x^2 (x - z)^2
    x, y, z = (MPoly.variable(("x", "y", "z"), v) for v in "xyz")
    f = (x ** 2) * ((x - z) ** 2) + y ** 4 + y * (z ** 3)
    return PlaneImplicit(f)
