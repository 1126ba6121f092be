from fractions import Fraction

import pytest

from hgdecide.polys import IntPoly
from hgdecide.sequence import HGInstance, Problem


@pytest.fixture(scope="session")
def mp():
    import mpmath

    mpmath.mp.dps = 80
    return mpmath


@pytest.fixture(scope="session")
def mpref(mp):
    """High-precision reference values as exact Fractions."""

    def ref(x) -> Fraction:
        return Fraction(str(x))

    return ref


@pytest.fixture
def sinh_ratio_instance():
    """p = x^2-4x+13, q = x^2-4x+5, u0 = 1: the Gaussian worked example
    whose limit is sinh(pi)/(39 sinh(3pi))."""

    def make(t, problem=Problem.MEMBERSHIP, u0=Fraction(1)):
        return HGInstance(
            IntPoly.of(13, -4, 1), IntPoly.of(5, -4, 1), Fraction(u0), Fraction(t), problem
        )

    return make
