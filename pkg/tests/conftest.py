import random

import pytest

from curve_group import Curve


@pytest.fixture
def rng():
    return random.Random(20240229)


@pytest.fixture
def curve_5():
    """y^2 = x^3 + x + 1 over F_5: N = 9, t = -3"""
    return Curve(5, 1, 1)


@pytest.fixture
def curve_97():
    return Curve(97, 2, 3)


@pytest.fixture
def curve_1009():
    return Curve(1009, 1, 0)


@pytest.fixture(params=[(5, 1, 1), (97, 2, 3), (1009, 1, 0)], ids=lambda c: "E(%d,%d,%d)" % c)
def reference_curve(request):
    return Curve(*request.param)


def nonsingular_curves(p):
    for a in range(p):
        for b in range(p):
            if (4 * a ** 3 + 27 * b * b) % p:
                yield Curve(p, a, b)
