import pytest
from hypothesis import given, settings, strategies as st

from curve_group import INFINITY, Curve, Point, curve_new, singular_pair_count
from exceptions import OffCurveError, ResourceLimitError, SingularCurveError, UsageError


def test_singular_curve_rejected():
    with pytest.raises(SingularCurveError):
        curve_new(5, 0, 0)
    # (-3c^2, 2c^3) with c = 1
    with pytest.raises(SingularCurveError):
        curve_new(7, -3, 2)


def test_discriminant(curve_5):
    assert curve_5.discriminant() == 1


def test_base_points(curve_5):
    points = curve_5.enumerate_points('base')
    assert points[0] == INFINITY
    assert len(points) == 9
    xs = sorted({int(pt.x) for pt in points[1:]})
    assert xs == [0, 2, 3, 4]


def test_point_add_doubling(curve_5):
    pt = curve_5.point(0, 1)
    assert curve_5.point_add(pt, pt) == curve_5.point(4, 2)


def test_inverse_points_sum_to_infinity(curve_5):
    pt = curve_5.point(0, 1)
    assert curve_5.point_add(pt, curve_5.point(0, 4)) == INFINITY
    assert curve_5.point_neg(pt) == curve_5.point(0, 4)
    assert curve_5.point_add(pt, INFINITY) == pt


def test_off_curve_rejected(curve_5):
    with pytest.raises(OffCurveError):
        curve_5.point(1, 1)
    bogus = Point(curve_5.modulus.element(1), curve_5.modulus.element(1))
    assert not curve_5.is_on_curve(bogus)
    with pytest.raises(OffCurveError):
        curve_5.point_add(bogus, INFINITY)


def test_group_order_kills_every_base_point(curve_97):
    points = curve_97.enumerate_points('base')
    n = len(points)
    for pt in points:
        assert curve_97.scalar_mul(n, pt) == INFINITY


def test_scalar_mul_examples(curve_5):
    pt = curve_5.point(0, 1)
    assert curve_5.scalar_mul(0, pt) == INFINITY
    assert curve_5.scalar_mul(1, pt) == pt
    assert curve_5.scalar_mul(2, pt) == curve_5.point_add(pt, pt)
    assert curve_5.scalar_mul(-1, pt) == curve_5.point_neg(pt)
    assert curve_5.scalar_mul(9, pt) == INFINITY


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=-40, max_value=40), st.integers(min_value=-40, max_value=40),
       st.integers(min_value=0, max_value=7))
def test_scalar_mul_is_additive(m, n, index):
    curve = Curve(97, 2, 3)
    points = curve.enumerate_points('base')
    pt = points[index % len(points)]
    lhs = curve.scalar_mul(m + n, pt)
    rhs = curve.point_add(curve.scalar_mul(m, pt), curve.scalar_mul(n, pt))
    assert lhs == rhs


def test_associativity_on_extension_points(curve_5):
    points = curve_5.enumerate_points('quadratic')
    sample = points[1:8]
    for a in sample:
        for b in sample:
            for c in sample[:3]:
                left = curve_5.point_add(curve_5.point_add(a, b), c)
                right = curve_5.point_add(a, curve_5.point_add(b, c))
                assert left == right


def test_quadratic_enumeration_count(curve_5):
    points = curve_5.enumerate_points('quadratic')
    assert len(points) == 27
    assert all(curve_5.is_on_curve(pt) for pt in points)
    assert len(set(points)) == 27


def test_frobenius_fixes_base_points(curve_5):
    for pt in curve_5.enumerate_points('base')[1:]:
        lifted = Point(pt.x.lift(), pt.y.lift())
        assert curve_5.frobenius_apply(lifted) == lifted


def test_frobenius_fixed_points_are_rational(curve_5):
    fixed = [pt for pt in curve_5.enumerate_points('quadratic') if curve_5.frobenius_apply(pt) == pt]
    assert len(fixed) == 9


def test_enumeration_limits():
    with pytest.raises(ResourceLimitError):
        Curve(1031, 1, 1).enumerate_points('quadratic')
    with pytest.raises(UsageError):
        Curve(5, 1, 1).enumerate_points('cubic')


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17])
def test_singular_pair_count(p):
    assert singular_pair_count(p) == p


def test_curve_equality(curve_5):
    assert curve_5 == Curve(5, 6, 1)
    assert hash(curve_5) == hash(Curve(5, 1, 1))
    assert curve_5 != Curve(7, 1, 1)


def test_frobenius_is_a_homomorphism(rng):
    curve = Curve(7, 2, 1)
    points = curve.enumerate_points('quadratic')
    pi = curve.frobenius_apply
    for _ in range(500):
        a, b = rng.choice(points), rng.choice(points)
        assert pi(curve.point_add(a, b)) == curve.point_add(pi(a), pi(b))


def test_frobenius_squared_is_identity(curve_5):
    for pt in curve_5.enumerate_points('quadratic'):
        assert curve_5.frobenius_apply(curve_5.frobenius_apply(pt)) == pt


@pytest.mark.parametrize("params", [(97, 2, 3), (1009, 1, 0)])
def test_associativity_on_base_points(rng, params):
    curve = Curve(*params)
    points = curve.enumerate_points('base')
    add = curve.point_add
    for _ in range(300):
        a, b, c = (rng.choice(points) for _ in range(3))
        assert add(add(a, b), c) == add(a, add(b, c))
