"""
isogeny_calculus.py

x-coordinate rational maps P(x)/Q(x) of endomorphisms, their degree
H(P, Q), and the sum/product relations

    (x1 - x2)^2 (x3 + x4) = 2(x1 x2 + a)(x1 + x2) + 4b
    (x1 - x2)^2 (x3 x4)   = x1^2 x2^2 - 2a x1 x2 - 4b(x1 + x2) + a^2

linking x1 = x(phi), x2 = x(psi) with x3 = x(phi + psi), x4 = x(phi - psi).
Writing x1 = P/Q, x2 = R/S the right-hand sides clear to the triple

    Q1 = (PR - aQS)^2 - 4b(PS + QR)QS
    Q2 = 2(PR + aQS)(PS + QR) + 4b(QS)^2
    Q3 = (PS - QR)^2

whose height is 2H(P, Q) + 2H(R, S). Only x-coordinates are represented.
"""

from dataclasses import dataclass, field
from functools import lru_cache
import logging
import random

from curve_group import Curve
from exceptions import (
    DegenerateSumError, IdentityViolation, SingularCurveError, UnsupportedInseparableError, UsageError,
)
from finite_field import FieldElement, as_modulus
from polynomial import (
    Poly, height, leading_coeff, lemma1_case, lemma1_check, poly_eval, poly_gcd,
    random_coprime_pair, random_coprime_pair_with_degrees,
)
from records import FuzzRecord, ParallelogramRecord

logger = logging.getLogger(__name__)

MAX_MULTIPLIER = 12


@dataclass(frozen=True)
class XMap:
    """Reduced x-map num/den: gcd(num, den) = 1 and den monic."""
    curve: object
    num: Poly
    den: Poly
    label: str = field(default='', compare=False)

    @property
    def degree(self):
        return height(self.num, self.den)


@dataclass(frozen=True)
class TripleQ:
    q1: Poly
    q2: Poly
    q3: Poly

    @property
    def height(self):
        return height(self.q1, self.q2, self.q3)

    def scale(self, c):
        return TripleQ(self.q1.scale(c), self.q2.scale(c), self.q3.scale(c))


def xmap_new(curve, num, den, label=''):
    """Store num/den in lowest terms with a monic denominator"""
    if den.is_zero():
        raise UsageError("x-map denominator is zero")
    if num.modulus != curve.modulus or den.modulus != curve.modulus:
        raise UsageError("x-map polynomials must live over the curve's field")
    g = poly_gcd(num, den)
    num, den = num // g, den // g
    inv = pow(den.coeffs[-1], -1, curve.p)
    return XMap(curve, num.scale(inv), den.scale(inv), label)


def xmap_degree(phi):
    return phi.degree


def identity_xmap(curve):
    return XMap(curve, Poly.x(curve.modulus), Poly.constant(curve.modulus, 1), '[1]')


def frobenius_xmap(curve):
    return XMap(curve, Poly.monomial(curve.modulus, 1, curve.p), Poly.constant(curve.modulus, 1), 'pi')


def xmap_eval(phi, x):
    """phi at a field element; None at a pole (the image point is INFINITY)"""
    d = poly_eval(phi.den, x)
    if isinstance(d, FieldElement):
        if d.is_zero():
            return None
        return poly_eval(phi.num, x) / d
    if d == 0:
        return None
    return poly_eval(phi.num, x) * pow(d, -1, phi.curve.p) % phi.curve.p


def xmap_compose(phi, psi):
    """x-map of phi o psi: substitute R/S into P/Q and clear S^d"""
    if phi.curve != psi.curve:
        raise UsageError("composition needs maps on the same curve")
    r, s = psi.num, psi.den
    d = max(phi.num.degree, phi.den.degree, 0)
    r_pows = [Poly.constant(r.modulus, 1)]
    s_pows = [Poly.constant(s.modulus, 1)]
    for _ in range(d):
        r_pows.append(r_pows[-1] * r)
        s_pows.append(s_pows[-1] * s)

    def homogenise(f):
        total = Poly(f.modulus)
        for i, c in enumerate(f.coeffs):
            if c:
                total = total + (r_pows[i] * s_pows[d - i]).scale(c)
        return total

    label = f"{phi.label}o{psi.label}" if phi.label and psi.label else ''
    return xmap_new(phi.curve, homogenise(phi.num), homogenise(phi.den), label)


def sum_product_triple(P, Q, R, S, a, b):
    """(Q1, Q2, Q3) for raw polynomials and curve coefficients a, b"""
    pr, qs = P * R, Q * S
    ps_qr = P * S + Q * R
    q1 = (pr - qs.scale(a)) ** 2 - (ps_qr * qs).scale(4 * b)
    q2 = ((pr + qs.scale(a)) * ps_qr).scale(2) + (qs * qs).scale(4 * b)
    q3 = (P * S - Q * R) ** 2
    return TripleQ(q1, q2, q3)


def compose_sum_product(phi, psi):
    """The triple encoding x(phi + psi) + x(phi - psi) and x(phi + psi) x(phi - psi)"""
    if phi.curve != psi.curve:
        raise UsageError("sum/product relations need maps on the same curve")
    if (phi.num * psi.den - psi.num * phi.den).is_zero():
        raise DegenerateSumError(f"x-maps {phi.label or phi} and {psi.label or psi} coincide")
    c = phi.curve
    return sum_product_triple(phi.num, phi.den, psi.num, psi.den, c.a, c.b)


def verify_u_constant(triple):
    """gcd(Q1, Q2, Q3) must be a nonzero constant.

    poly_gcd is monic, so a passing triple always returns 1; the scaling
    constant U itself is recovered by sum_difference_check.
    """
    g = poly_gcd(triple.q1, poly_gcd(triple.q2, triple.q3))
    if g.degree != 0:
        logger.error("non-constant common factor %s", g)
        raise IdentityViolation(f"gcd(Q1, Q2, Q3) = {g} is not constant")
    return leading_coeff(g)


def parallelogram_check(phi, psi):
    """d(phi + psi) + d(phi - psi) against 2d(phi) + 2d(psi)"""
    triple = compose_sum_product(phi, psi)
    verify_u_constant(triple)
    lhs = triple.height
    rhs = 2 * phi.degree + 2 * psi.degree
    c = phi.curve
    return ParallelogramRecord(c.p, c.a, c.b, phi.label, psi.label, lhs, rhs, True, lhs == rhs)


def _check_multiplier(curve, m):
    if isinstance(m, bool) or not isinstance(m, int) or not 1 <= m <= MAX_MULTIPLIER:
        raise UsageError(f"m must be an integer in [1, {MAX_MULTIPLIER}], got {m!r}")
    if m % curve.p == 0:
        raise UnsupportedInseparableError(f"p = {curve.p} divides m = {m}")


def doubling_xmap(curve):
    """x([2]P) = (x^4 - 2ax^2 - 8bx + a^2) / 4(x^3 + ax + b)"""
    mod, a, b = curve.modulus, curve.a, curve.b
    num = Poly(mod, (a * a, -8 * b, -2 * a, 0, 1))
    den = Poly(mod, (4 * b, 4 * a, 0, 4))
    return xmap_new(curve, num, den, '[2]')


@lru_cache(maxsize=64)
def _multiplication_chain(curve, m):
    # x([k+1]) = S(x, x([k])) - x([k-1]); the product relation is asserted alongside.
    chain = [None, identity_xmap(curve), doubling_xmap(curve)]
    ident = chain[1]
    for k in range(2, m):
        cur, prev = chain[k], chain[k - 1]
        triple = compose_sum_product(ident, cur)
        num = triple.q2 * prev.den - triple.q3 * prev.num
        den = triple.q3 * prev.den
        nxt = xmap_new(curve, num, den, f"[{k + 1}]")
        if nxt.num * prev.num * triple.q3 != triple.q1 * nxt.den * prev.den:
            raise IdentityViolation(f"product relation fails at [{k + 1}] on {curve!r}")
        chain.append(nxt)
    return tuple(chain[:m + 1])


def mult_by_m_xmap(curve, m):
    """x-map of multiplication by m from the sum/product recursion"""
    _check_multiplier(curve, m)
    return _multiplication_chain(curve, max(m, 2))[m]


def _division_polynomials(curve, top):
    """F_n with psi_n = F_n (n odd) and psi_n = y F_n (n even), y^2 eliminated"""
    mod, a, b = curve.modulus, curve.a, curve.b
    f = Poly(mod, (b, a, 0, 1))
    f2 = f * f
    half = pow(2, -1, curve.p)
    polys = {
        0: Poly(mod),
        1: Poly.constant(mod, 1),
        2: Poly.constant(mod, 2),
        3: Poly(mod, (-a * a, 12 * b, 6 * a, 0, 3)),
        4: Poly(mod, (-8 * b * b - a ** 3, -4 * a * b, -5 * a * a, 20 * b, 5 * a, 0, 1)).scale(4),
    }

    def F(n):
        if n in polys:
            return polys[n]
        k = n // 2
        if n % 2:
            if k % 2 == 0:
                value = f2 * F(k + 2) * F(k) ** 3 - F(k - 1) * F(k + 1) ** 3
            else:
                value = F(k + 2) * F(k) ** 3 - f2 * F(k - 1) * F(k + 1) ** 3
        else:
            value = F(k).scale(half) * (F(k + 2) * F(k - 1) ** 2 - F(k - 2) * F(k + 1) ** 2)
        polys[n] = value
        return value

    for n in range(top + 1):
        F(n)
    return polys, f


def division_poly_xmap(curve, m):
    """x([m]) = x - psi_{m-1} psi_{m+1} / psi_m^2, an independent route to mult_by_m_xmap"""
    _check_multiplier(curve, m)
    F, f = _division_polynomials(curve, m + 1)
    x = Poly.x(curve.modulus)
    fm2 = F[m] * F[m]
    if m % 2:
        num = x * fm2 - f * F[m - 1] * F[m + 1]
        den = fm2
    else:
        num = x * f * fm2 - F[m - 1] * F[m + 1]
        den = f * fm2
    return xmap_new(curve, num, den, f"[{m}]")


def resultant_identity_check(curve):
    """
    Expand (3x^2 + 4a)(x^4 - 2ax^2 - 8bx + a^2) - (3x^3 - 5ax - 27b)(x^3 + ax + b).
    It must be the constant 4a^3 + 27b^2, so the cubic and the quartic never
    share a root on a nonsingular curve.
    """
    mod, a, b = curve.modulus, curve.a, curve.b
    expansion = (Poly(mod, (4 * a, 0, 3)) * Poly(mod, (a * a, -8 * b, -2 * a, 0, 1))
                 - Poly(mod, (-27 * b, -5 * a, 0, 3)) * Poly(mod, (b, a, 0, 1)))
    if expansion.degree > 0:
        raise IdentityViolation(f"expansion {expansion} is not constant")
    value = expansion.coeffs[0] if expansion.coeffs else 0
    if value != curve.discriminant():
        raise IdentityViolation(f"constant {value} != 4a^3 + 27b^2 = {curve.discriminant()}")
    return FieldElement(mod, value)


def sum_difference_check(curve, m, n):
    """
    Recover (AC, AD + BC, BD) from x([m+n]) = A/B and x([m-n]) = C/D and show
    it equals U * (Q1, Q2, Q3) for the pair ([m], [n]) with U a nonzero constant.
    """
    if not 1 <= n < m:
        raise UsageError(f"need 1 <= n < m, got m={m}, n={n}")
    phi, psi = mult_by_m_xmap(curve, m), mult_by_m_xmap(curve, n)
    plus, minus = mult_by_m_xmap(curve, m + n), mult_by_m_xmap(curve, m - n)
    triple = compose_sum_product(phi, psi)
    A, B, C, D = plus.num, plus.den, minus.num, minus.den
    recovered = TripleQ(A * C, A * D + B * C, B * D)

    u = leading_coeff(recovered.q3) / leading_coeff(triple.q3)
    if triple.scale(u.u) != recovered:
        raise IdentityViolation(f"([{m}], [{n}]) on {curve!r}: products are not a constant multiple")
    if plus.degree + minus.degree != triple.height:
        raise IdentityViolation(f"d([{m + n}]) + d([{m - n}]) != H(Q1, Q2, Q3)")
    return u


def lemma2_case(P, Q, R, S):
    """Branch of the degree argument: 'I' when a numerator dominates, else i-iv"""
    dp, dq, dr, ds = P.degree, Q.degree, R.degree, S.degree
    if dr > ds or dp > dq:
        return "I"
    if dp == dq and dr < ds:
        return "i"
    if dr == ds and dp < dq:
        return "ii"
    if dp < dq and dr < ds:
        return "iii"
    return "iv"


def lemma2_check(P, Q, R, S, curve):
    """(lhs, rhs, ok) for H(Q1, Q2, Q3) = 2H(P, Q) + 2H(R, S)"""
    triple = sum_product_triple(P, Q, R, S, curve.a, curve.b)
    lhs = triple.height
    rhs = 2 * height(P, Q) + 2 * height(R, S)
    return lhs, rhs, lhs == rhs


def leading_coefficient_system(P, Q, R, S, curve):
    """Coefficients of Q1, Q2, Q3 at degree 2H(P, Q) + 2H(R, S)"""
    triple = sum_product_triple(P, Q, R, S, curve.a, curve.b)
    top = 2 * height(P, Q) + 2 * height(R, S)

    def coeff(f):
        return f.coeffs[top] if top < len(f.coeffs) else 0

    return coeff(triple.q1), coeff(triple.q2), coeff(triple.q3)


def _random_curve(rng, modulus):
    while True:
        try:
            return Curve(modulus, rng.randrange(modulus.p), rng.randrange(modulus.p))
        except SingularCurveError:
            continue


LEMMA1_STRATA = ("free", "1", "2", "3")
LEMMA2_STRATA = ("I", "i", "ii", "iii", "iv", "iv-cancel")


def _lemma1_draw(rng, stratum, max_deg, modulus):
    if stratum == "free":
        return random_coprime_pair(rng, max_deg, modulus) + random_coprime_pair(rng, max_deg, modulus)
    hi = rng.randint(1, max_deg)
    lo = rng.randint(0, hi - 1)
    if stratum == "1":
        da = rng.randint(0, max_deg)
        dc = rng.randint(0, max_deg)
        degs = (da, rng.randint(0, da), dc, rng.randint(0, dc))
    elif stratum == "2":
        dc = rng.randint(0, max_deg - 1)
        degs = (hi, lo, dc, rng.randint(dc + 1, max_deg))
    else:
        dd = rng.randint(0, max_deg - 1)
        degs = (lo, hi, rng.randint(dd + 1, max_deg), dd)
    a, b = random_coprime_pair_with_degrees(rng, degs[0], degs[1], modulus)
    c, d = random_coprime_pair_with_degrees(rng, degs[2], degs[3], modulus)
    return a, b, c, d


def lemma1_fuzz(p, draws=1000, seed=0, max_deg=8):
    """Stratified random check of H(AC, AD + BC, BD) = H(A, B) + H(C, D)"""
    modulus = as_modulus(p)
    rng = random.Random(seed)
    tally = {}
    for i in range(draws):
        a, b, c, d = _lemma1_draw(rng, LEMMA1_STRATA[i % len(LEMMA1_STRATA)], max_deg, modulus)
        case = lemma1_case(a, b, c, d)
        _, _, ok = lemma1_check(a, b, c, d)
        seen, bad = tally.get(case, (0, 0))
        tally[case] = (seen + 1, bad + (not ok))
        if not ok:
            logger.error("lemma1 failure over F_%d: %s, %s, %s, %s", modulus.p, a, b, c, d)
    return [FuzzRecord('lemma1', modulus.p, case, seen, bad)
            for case, (seen, bad) in sorted(tally.items())]


def _exact_pair(rng, dp, dq, modulus, lead_p=None, lead_q=None):
    return random_coprime_pair_with_degrees(rng, dp, dq, modulus, lead_p, lead_q)


def _lemma2_draw(rng, stratum, max_deg, modulus):
    def deg():
        return rng.randint(0, max_deg)

    def below(d):
        return rng.randint(0, d - 1)

    if stratum == "I":
        dr = rng.randint(1, max_deg)
        P, Q = _exact_pair(rng, deg(), deg(), modulus)
        R, S = _exact_pair(rng, dr, below(dr), modulus)
    elif stratum == "i":
        ds = rng.randint(1, max_deg)
        d = deg()
        P, Q = _exact_pair(rng, d, d, modulus)
        R, S = _exact_pair(rng, below(ds), ds, modulus)
    elif stratum == "ii":
        dq = rng.randint(1, max_deg)
        d = deg()
        P, Q = _exact_pair(rng, below(dq), dq, modulus)
        R, S = _exact_pair(rng, d, d, modulus)
    elif stratum == "iii":
        dq, ds = rng.randint(1, max_deg), rng.randint(1, max_deg)
        P, Q = _exact_pair(rng, below(dq), dq, modulus)
        R, S = _exact_pair(rng, below(ds), ds, modulus)
    else:
        d1, d2 = deg(), deg()
        P, Q = _exact_pair(rng, d1, d1, modulus)
        if stratum == "iv":
            R, S = _exact_pair(rng, d2, d2, modulus)
        else:
            # l(P)l(S) + l(Q)l(R) = 0 kills the top of PS + QR
            lp, lq = P.coeffs[-1], Q.coeffs[-1]
            lr = rng.randrange(1, modulus.p)
            ls = -lq * lr * pow(lp, -1, modulus.p) % modulus.p
            R, S = _exact_pair(rng, d2, d2, modulus, lr, ls)
    return P, Q, R, S


def lemma2_fuzz(p, draws=1000, seed=0, max_deg=6):
    """Stratified random check of H(Q1, Q2, Q3) = 2H(P, Q) + 2H(R, S) with random curves"""
    modulus = as_modulus(p)
    rng = random.Random(seed)
    tally = {}
    i = 0
    while i < draws:
        stratum = LEMMA2_STRATA[i % len(LEMMA2_STRATA)]
        P, Q, R, S = _lemma2_draw(rng, stratum, max_deg, modulus)
        if (P * S - Q * R).is_zero():
            continue
        curve = _random_curve(rng, modulus)
        _, _, ok = lemma2_check(P, Q, R, S, curve)
        triple = sum_product_triple(P, Q, R, S, curve.a, curve.b)
        if ok:
            try:
                verify_u_constant(triple)
            except IdentityViolation:
                ok = False
        label = stratum if stratum == "iv-cancel" else lemma2_case(P, Q, R, S)
        seen, bad = tally.get(label, (0, 0))
        tally[label] = (seen + 1, bad + (not ok))
        if not ok:
            logger.error("lemma2 failure on %r: %s, %s, %s, %s", curve, P, Q, R, S)
        i += 1
    return [FuzzRecord('lemma2', modulus.p, case, seen, bad)
            for case, (seen, bad) in sorted(tally.items())]
