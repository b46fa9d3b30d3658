"""
hasse.py

Point counting by the Legendre sum N = p + 1 + sum_x chi(x^3 + ax + b), the
Frobenius trace t = p + 1 - N, the degree form d(m + n*pi) = m^2 + mnt + n^2 p
on the lattice Z + Z*pi, and pointwise checks of the characteristic equation
phi^2 - tr(phi) phi + d(phi) = 0 on E(F_{p^2}). Sweeps run the bound t^2 <= 4p
over every nonsingular curve in a prime range.
"""

from concurrent.futures import ProcessPoolExecutor
import logging
import math
import time

import numpy as np
import pandas as pd

from curve_group import INFINITY, Point
from exceptions import IdentityViolation, OffCurveError, ResourceLimitError, UsageError
from finite_field import is_prime, legendre
from records import CountReport, SweepSummary

logger = logging.getLogger(__name__)

COUNT_LIMIT = 2 ** 32
NUMPY_COUNT_LIMIT = 2 ** 24
SWEEP_LIMIT = 2 ** 7
GRID_BOUND = 50


def _character_table(p):
    """chi(r) for every residue r, as an int8 array"""
    xs = np.arange(p, dtype=np.int64)
    is_square = np.zeros(p, dtype=bool)
    is_square[xs * xs % p] = True
    chi = np.where(is_square, 1, -1).astype(np.int8)
    chi[0] = 0
    return chi


def _cubic_values(p, a):
    """x^3 + ax mod p for every x"""
    xs = np.arange(p, dtype=np.int64)
    return (xs * xs % p * xs + a * xs) % p


def count_points(curve):
    """|E(F_p)| including INFINITY"""
    p, a, b = curve.p, curve.a, curve.b
    if p > COUNT_LIMIT:
        raise ResourceLimitError(f"point counting needs p <= 2^32, got {p}")
    if p < NUMPY_COUNT_LIMIT:
        chi = _character_table(p)
        values = (_cubic_values(p, a) + b) % p
        total = int(chi[values].sum(dtype=np.int64))
    else:
        total = sum(legendre(x * x * x + a * x + b, p) for x in range(p))
    return p + 1 + total


def trace(curve):
    return curve.p + 1 - count_points(curve)


def degree_form(curve, m, n, t=None):
    """d([m] + [n]pi) = m^2 + mnt + n^2 p"""
    if t is None:
        t = trace(curve)
    value = m * m + m * n * t + n * n * curve.p
    if value < 0:
        raise IdentityViolation(f"degree form is negative at ({m}, {n}) on {curve!r}")
    return value


def pairing_form(curve, first, second, t=None):
    """L(phi1, phi2) = d(phi1 + phi2) - d(phi1) - d(phi2) on Z + Z*pi"""
    if t is None:
        t = trace(curve)
    (m1, n1), (m2, n2) = first, second
    return (degree_form(curve, m1 + m2, n1 + n2, t)
            - degree_form(curve, m1, n1, t) - degree_form(curve, m2, n2, t))


def degree_form_grid_check(curve, bound=GRID_BOUND, t=None):
    """d(m + n*pi) > 0 for every (m, n) != (0, 0) with |m|, |n| <= bound"""
    if t is None:
        t = trace(curve)
    ms = np.arange(-bound, bound + 1, dtype=np.int64)
    m, n = np.meshgrid(ms, ms, indexing='ij')
    values = m * m + m * n * t + n * n * curve.p
    origin = (m == 0) & (n == 0)
    return bool((values[~origin] > 0).all() and values[origin].item() == 0)


def hasse_check(curve):
    n_points = count_points(curve)
    t = curve.p + 1 - n_points
    return CountReport(curve.p, curve.a, curve.b, n_points, t,
                       t * t <= 4 * curve.p, degree_form(curve, 1, -1, t))


def _sample_points(curve, sample_size, rng):
    points = curve.enumerate_points('quadratic')
    if sample_size is not None and sample_size < len(points):
        if rng is None:
            raise UsageError("sampling needs an rng")
        points = rng.sample(points, sample_size)
    return points


class _Endomorphism:
    """P -> [m]P + [n]pi(P) on one curve; callers check P is on the curve"""

    def __init__(self, curve, m, n):
        self.curve = curve
        self.m = m
        self.n = n

    def __call__(self, pt):
        c = self.curve
        if pt.is_infinity:
            return pt
        frob = Point(pt.x.frobenius(), pt.y.frobenius())
        return c._add(c._mul(self.m, pt), c._mul(self.n, frob))


def _checked(curve, points):
    for pt in points:
        if not curve.is_on_curve(pt):
            raise OffCurveError(f"{pt!r} is not on {curve!r}")
        yield pt


def _annihilates(curve, phi, tr, nrm, points):
    for pt in _checked(curve, points):
        image = phi(pt)
        total = curve._add(phi(image), curve._mul(-tr, image))
        total = curve._add(total, curve._mul(nrm, pt))
        if total != INFINITY:
            logger.error("characteristic equation fails at %r on %r", pt, curve)
            return False
    return True


def frobenius_char_equation_check(curve, sample_size=None, rng=None):
    """pi^2 - [t]pi + [p] kills every (sampled) point of E(F_{p^2})"""
    t = trace(curve)
    return _annihilates(curve, _Endomorphism(curve, 0, 1), t, curve.p,
                        _sample_points(curve, sample_size, rng))


def endomorphism_invariants(curve, m, n, t=None):
    """(tr, nrm) of [m] + [n]pi: tr = 2m + nt, nrm = d([m] + [n]pi)"""
    if t is None:
        t = trace(curve)
    return 2 * m + n * t, degree_form(curve, m, n, t)


def general_endo_char_check(curve, m, n, sample_size=None, rng=None):
    """phi^2 - [tr]phi + [nrm] kills every (sampled) point, phi = [m] + [n]pi"""
    if m == 0 and n == 0:
        raise UsageError("(m, n) = (0, 0) is not an isogeny")
    tr, nrm = endomorphism_invariants(curve, m, n)
    return _annihilates(curve, _Endomorphism(curve, m, n), tr, nrm,
                        _sample_points(curve, sample_size, rng))


def conjugate_endo_check(curve, m, n, points=None):
    """
    The conjugate phi' = [tr - m] - [n]pi has the same degree as phi, and
    phi(phi'(P)) = [d(phi)]P for every point.
    """
    if m == 0 and n == 0:
        raise UsageError("(m, n) = (0, 0) is not an isogeny")
    t = trace(curve)
    tr, nrm = endomorphism_invariants(curve, m, n, t)
    if degree_form(curve, tr - m, -n, t) != nrm:
        return False
    if points is None:
        points = curve.enumerate_points('quadratic')
    phi = _Endomorphism(curve, m, n)
    conj = _Endomorphism(curve, tr - m, -n)
    return all(phi(conj(pt)) == curve._mul(nrm, pt) for pt in _checked(curve, points))


def kernel_count_one_plus_pi(curve):
    """#{P in E(F_{p^2}) : pi(P) = -P}, the kernel of 1 + pi"""
    return sum(1 for pt in curve.enumerate_points('quadratic')
               if curve.frobenius_apply(pt) == curve.point_neg(pt))


def quadratic_count(curve):
    """|E(F_{p^2})| = p^2 + 1 - (t^2 - 2p)"""
    t = trace(curve)
    return curve.p ** 2 + 1 - (t * t - 2 * curve.p)


def _sweep_prime(p):
    """CountReports for every nonsingular (a, b) over F_p, a-major order"""
    chi = _character_table(p)
    bs = np.arange(p, dtype=np.int64)
    reports = []
    for a in range(p):
        values = (_cubic_values(p, a)[None, :] + bs[:, None]) % p
        sums = chi[values].sum(axis=1, dtype=np.int64)
        for b in range(p):
            if (4 * a ** 3 + 27 * b * b) % p == 0:
                continue
            n_points = p + 1 + int(sums[b])
            t = p + 1 - n_points
            reports.append(CountReport(p, a, b, n_points, t, t * t <= 4 * p, n_points))
    return reports


def sweep_primes(p_min, p_max):
    if p_min > p_max:
        raise UsageError(f"empty range: p_min={p_min} > p_max={p_max}")
    return [p for p in range(max(p_min, 5), p_max + 1) if is_prime(p)]


def exhaustive_sweep(p_min, p_max, workers=1):
    """Hasse bound over every nonsingular curve with p_min <= p <= p_max"""
    if p_max > SWEEP_LIMIT:
        raise ResourceLimitError(f"exhaustive sweep needs p_max <= 2^7, got {p_max}")
    primes = sweep_primes(p_min, p_max)
    started = time.perf_counter()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(_sweep_prime, primes))
    else:
        batches = [_sweep_prime(p) for p in primes]

    reports = []
    for p, batch in zip(primes, batches):
        logger.info("p = %d: %d curves", p, len(batch))
        for report in batch:
            if not report.bound_ok:
                logger.error("Hasse bound fails: %r", report)
        reports.extend(batch)
    logger.info("swept %d primes in %.2fs", len(primes), time.perf_counter() - started)
    return reports


def summarize_sweep(reports, p_min, p_max):
    """Aggregate a sweep into one SweepSummary"""
    if not reports:
        return SweepSummary(p_min, p_max, 0, 0, 0, 0, 0.0)
    df = pd.DataFrame([r.to_dict() for r in reports])
    df['ratio'] = df['t'].abs() / (2 * np.sqrt(df['p'].astype(float)))
    df['extremal'] = df['t'].abs() == df['p'].map(lambda p: math.isqrt(4 * p))
    return SweepSummary(
        p_min=p_min,
        p_max=p_max,
        primes=int(df['p'].nunique()),
        curves=len(df),
        failures=int((~df['bound_ok']).sum()),
        extremal_primes=int(df.groupby('p')['extremal'].any().sum()),
        max_ratio=float(df['ratio'].max()),
    )


