import itertools
import random

import pytest

from curve_group import Curve
from exceptions import (
    DegenerateSumError, IdentityViolation, UnsupportedInseparableError, UsageError,
)
from finite_field import FieldElement
from isogeny_calculus import (
    TripleQ, compose_sum_product, division_poly_xmap, doubling_xmap, frobenius_xmap,
    identity_xmap, leading_coefficient_system, lemma1_fuzz, lemma2_case, lemma2_check,
    lemma2_fuzz, mult_by_m_xmap, parallelogram_check, resultant_identity_check,
    sum_difference_check, verify_u_constant, xmap_compose, xmap_degree, xmap_eval, xmap_new,
)
from polynomial import Poly


def test_xmap_new_reduces(curve_5):
    x = Poly.x(curve_5.modulus)
    phi = xmap_new(curve_5, (x + 1) * x, (x + 1).scale(3))
    assert phi.num == x.scale(2)
    assert phi.den == 1
    with pytest.raises(UsageError):
        xmap_new(curve_5, x, Poly(curve_5.modulus))


def test_doubling_map_numerator(curve_97):
    phi = doubling_xmap(curve_97)
    mod, a, b = curve_97.modulus, curve_97.a, curve_97.b
    quartic = Poly(mod, (a * a, -8 * b, -2 * a, 0, 1))
    assert phi.den == Poly(mod, (b, a, 0, 1))
    assert phi.num == quartic.scale(pow(4, -1, 97))
    assert mult_by_m_xmap(curve_97, 2) == phi


def test_identity_and_frobenius_degrees(curve_97):
    assert xmap_degree(identity_xmap(curve_97)) == 1
    assert xmap_degree(frobenius_xmap(curve_97)) == 97
    assert mult_by_m_xmap(curve_97, 1) == identity_xmap(curve_97)


@pytest.mark.parametrize("m", range(1, 9))
def test_mult_map_matches_division_polynomials(reference_curve, m):
    if m % reference_curve.p == 0:
        pytest.skip("inseparable multiplier")
    phi = mult_by_m_xmap(reference_curve, m)
    assert phi == division_poly_xmap(reference_curve, m)
    assert xmap_degree(phi) == m * m


def test_mult_map_agrees_with_group_law(curve_97):
    points = curve_97.enumerate_points('base')[1:]
    for m in range(2, 6):
        phi = mult_by_m_xmap(curve_97, m)
        for pt in points:
            image = curve_97.scalar_mul(m, pt)
            value = xmap_eval(phi, pt.x)
            if image.is_infinity:
                assert value is None
            else:
                assert value == image.x


def test_mult_map_rejects_bad_multipliers(curve_5):
    for m in (0, 13, True, 2.0):
        with pytest.raises(UsageError):
            mult_by_m_xmap(curve_5, m)
    for m in (5, 10):
        with pytest.raises(UnsupportedInseparableError):
            mult_by_m_xmap(curve_5, m)
        with pytest.raises(UnsupportedInseparableError):
            division_poly_xmap(curve_5, m)


def test_composition_multiplies_degrees(curve_97):
    two, three = mult_by_m_xmap(curve_97, 2), mult_by_m_xmap(curve_97, 3)
    six = xmap_compose(two, three)
    assert six == mult_by_m_xmap(curve_97, 6)
    assert xmap_degree(six) == 36


def test_frobenius_commutes_with_doubling(curve_5):
    two, pi = mult_by_m_xmap(curve_5, 2), frobenius_xmap(curve_5)
    left = xmap_compose(pi, two)
    assert left == xmap_compose(two, pi)
    assert xmap_degree(left) == 4 * 5


def test_parallelogram_two_three(curve_5):
    record = parallelogram_check(mult_by_m_xmap(curve_5, 2), mult_by_m_xmap(curve_5, 3))
    assert (record.lhs, record.rhs) == (26, 26)
    assert record.passed


def test_parallelogram_on_multiplication_pairs(reference_curve):
    p = reference_curve.p
    for m in range(2, 6):
        for n in range(1, m):
            if m % p == 0:
                continue
            record = parallelogram_check(mult_by_m_xmap(reference_curve, m),
                                         mult_by_m_xmap(reference_curve, n))
            assert record.lhs == record.rhs == 2 * m * m + 2 * n * n
            assert record.passed


def test_parallelogram_identity_frobenius(reference_curve):
    p = reference_curve.p
    record = parallelogram_check(identity_xmap(reference_curve), frobenius_xmap(reference_curve))
    assert record.lhs == record.rhs == 2 + 2 * p
    assert (record.left, record.right) == ('[1]', 'pi')


@pytest.mark.parametrize("params", [(5, 1, 1), (7, 2, 1), (11, 1, 3)])
def test_parallelogram_on_frobenius_compositions(params):
    curve = Curve(*params)
    pi = frobenius_xmap(curve)
    maps = [mult_by_m_xmap(curve, m) for m in range(1, 6) if m % curve.p]
    maps += [pi] + [xmap_compose(mult_by_m_xmap(curve, m), pi) for m in (2, 3)]
    checked = 0
    for phi, psi in itertools.combinations(maps, 2):
        try:
            record = parallelogram_check(phi, psi)
        except DegenerateSumError:
            continue
        assert record.passed, (phi.label, psi.label)
        checked += 1
    assert checked == len(maps) * (len(maps) - 1) // 2


def test_sum_product_rejects_equal_maps(curve_97):
    two = mult_by_m_xmap(curve_97, 2)
    with pytest.raises(DegenerateSumError):
        compose_sum_product(two, two)
    with pytest.raises(UsageError):
        compose_sum_product(two, mult_by_m_xmap(Curve(97, 1, 1), 2))


def test_verify_u_constant_detects_common_factor(curve_5):
    x = Poly.x(curve_5.modulus)
    common = x + 1
    triple = TripleQ(common * x, common * (x + 2), common)
    with pytest.raises(IdentityViolation):
        verify_u_constant(triple)
    u = verify_u_constant(compose_sum_product(identity_xmap(curve_5), mult_by_m_xmap(curve_5, 2)))
    assert isinstance(u, FieldElement) and u == 1


def test_verify_u_constant_is_one_after_scaling(curve_97):
    triple = compose_sum_product(mult_by_m_xmap(curve_97, 3), frobenius_xmap(curve_97))
    for c in (1, 2, 50, 96):
        assert verify_u_constant(triple.scale(c)) == 1


@pytest.mark.parametrize("m,n", [(2, 1), (3, 1), (3, 2), (4, 1), (4, 3), (6, 5)])
def test_sum_difference_recovery(curve_97, m, n):
    u = sum_difference_check(curve_97, m, n)
    assert not u.is_zero()


def test_sum_difference_rejects_equal_multipliers(curve_97):
    with pytest.raises(UsageError):
        sum_difference_check(curve_97, 3, 3)


@pytest.mark.parametrize("p", [5, 97, 1009])
def test_resultant_identity(p):
    rng = random.Random(p)
    checked = 0
    while checked < 20:
        a, b = rng.randrange(p), rng.randrange(p)
        if (4 * a ** 3 + 27 * b * b) % p == 0:
            continue
        curve = Curve(p, a, b)
        assert resultant_identity_check(curve) == curve.discriminant()
        checked += 1


def test_lemma2_case_labels():
    mod = Curve(97, 2, 3).modulus
    x = Poly.x(mod)
    one = Poly.constant(mod, 1)
    assert lemma2_case(x, one, x ** 2, x) == "I"
    assert lemma2_case(x + 1, x, one, x) == "i"
    assert lemma2_case(one, x, x + 1, x) == "ii"
    assert lemma2_case(one, x, one, x ** 2) == "iii"
    assert lemma2_case(x + 1, x, x + 2, x + 3) == "iv"


def test_leading_coefficients_never_all_vanish(curve_97):
    mod = curve_97.modulus
    x = Poly.x(mod)
    # equal leading ratios make the top of (PS - QR)^2 vanish
    P, Q, R, S = x, x + 1, x + 2, x + 5
    top = leading_coefficient_system(P, Q, R, S, curve_97)
    assert top[2] == 0
    assert any(top)
    assert lemma2_check(P, Q, R, S, curve_97) == (4, 4, True)


def test_lemma1_fuzz_small():
    records = lemma1_fuzz(97, draws=120, seed=7)
    assert sum(r.draws for r in records) == 120
    assert all(r.failures == 0 for r in records)
    assert {r.case for r in records} >= {"1", "2", "3"}


def test_lemma2_fuzz_small():
    records = lemma2_fuzz(97, draws=120, seed=7)
    assert sum(r.draws for r in records) == 120
    assert all(r.passed for r in records)
    assert {r.case for r in records} >= {"I", "i", "ii", "iii", "iv", "iv-cancel"}


def test_fuzz_is_deterministic():
    assert lemma2_fuzz(5, draws=30, seed=1) == lemma2_fuzz(5, draws=30, seed=1)


@pytest.mark.slow
@pytest.mark.parametrize("p", [5, 97, 1009])
def test_lemma_fuzz_full(p):
    assert all(r.passed for r in lemma1_fuzz(p, draws=1000, seed=p))
    assert all(r.passed for r in lemma2_fuzz(p, draws=1000, seed=p))
