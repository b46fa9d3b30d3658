"""
zagier.py

The character sum S(p) = sum_x chi(x^3 - 35x + 98) over F_p. The curve
y^2 = x^3 - 35x + 98 has complex multiplication by sqrt(-7), so S(p) = 0 when
(p/7) = -1 and S(p) = +-2A with p = A^2 + 7B^2 when (p/7) = +1.
"""

from concurrent.futures import ProcessPoolExecutor
import logging
import math
import time

import numpy as np

from curve_group import Curve
from exceptions import IdentityViolation, ResourceLimitError, UsageError
from finite_field import as_modulus, is_prime, legendre
from hasse import trace
from records import Class7, Verdict, ZagierRecord

logger = logging.getLogger(__name__)

CM_A = -35
CM_B = 98
# 4(-35)^3 + 27 * 98^2 = 87808 = 2^8 * 7^3
CM_DISCRIMINANT = 87808
EXCLUDED_PRIMES = (2, 3, 7)
SWEEP_LIMIT = 10 ** 6
CROSS_CHECK_LIMIT = 10 ** 4


def char_sum(p, c1, c0):
    """sum_{x mod p} chi(x^3 + c1*x + c0), chi(0) = 0"""
    p = as_modulus(p).p
    xs = np.arange(p, dtype=np.int64)
    values = (xs * xs % p * xs + (c1 % p) * xs + c0) % p
    squares = np.zeros(p, dtype=bool)
    squares[xs * xs % p] = True
    chi = np.where(squares[values], 1, -1)
    chi[values == 0] = 0
    return int(chi.sum())


def bad_reduction_primes():
    """Prime divisors of 4a^3 + 27b^2 for (a, b) = (-35, 98)"""
    n = abs(4 * CM_A ** 3 + 27 * CM_B ** 2)
    primes = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            primes.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        primes.append(n)
    return tuple(primes)


def classify_prime_mod7(p):
    if p in EXCLUDED_PRIMES:
        return Class7.EXCLUDED
    return Class7.QR if legendre(p % 7, 7) == 1 else Class7.NQR


def represent_a2_7b2(p):
    """Nonnegative (A, B), B minimal positive, with A^2 + 7B^2 = p; None if there is none"""
    for b in range(1, math.isqrt(p // 7) + 1):
        rest = p - 7 * b * b
        a = math.isqrt(rest)
        if a * a == rest:
            return a, b
    return None


def representation_count(p):
    """#{(A, B) : A >= 0, B > 0, A^2 + 7B^2 = p}"""
    count = 0
    for b in range(1, math.isqrt(p // 7) + 1):
        rest = p - 7 * b * b
        if math.isqrt(rest) ** 2 == rest:
            count += 1
    return count


def zagier_verify(p):
    """One ZagierRecord; S is None for the excluded primes"""
    if not is_prime(p):
        raise UsageError(f"{p} is not prime")
    class7 = classify_prime_mod7(p)
    if class7 is Class7.EXCLUDED:
        return ZagierRecord(p, class7, None, None, None, Verdict.SKIPPED)

    s = char_sum(p, CM_A, CM_B)
    rep = represent_a2_7b2(p)
    a, b = rep if rep else (None, None)
    if class7 is Class7.NQR:
        verdict = Verdict.ZERO_OK if s == 0 else Verdict.FAIL
    elif rep is not None and abs(s) == 2 * a:
        verdict = Verdict.TWO_A_OK
    else:
        verdict = Verdict.FAIL
    if verdict is Verdict.FAIL:
        logger.error("p = %d (%s): S = %d, representation %s", p, class7.value, s, rep)
    return ZagierRecord(p, class7, s, a, b, verdict)


def _verify_with_trace(p):
    record = zagier_verify(p)
    if record.S is not None and p <= CROSS_CHECK_LIMIT:
        t = trace(Curve(p, CM_A, CM_B))
        if record.S != -t:
            logger.error("p = %d: S = %d but the curve has trace %d", p, record.S, t)
            raise IdentityViolation(f"S({p}) = {record.S} != -t = {-t}")
    return record


def zagier_sweep(p_max, workers=1):
    """Records for every prime p <= p_max, ordered by p"""
    if p_max > SWEEP_LIMIT:
        raise ResourceLimitError(f"zagier sweep needs p_max <= 10^6, got {p_max}")
    primes = [p for p in range(2, p_max + 1) if is_prime(p)]
    started = time.perf_counter()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_verify_with_trace, primes, chunksize=64))
    else:
        records = [_verify_with_trace(p) for p in primes]
    logger.info("verified %d primes up to %d in %.2fs", len(records), p_max,
                time.perf_counter() - started)
    return records
