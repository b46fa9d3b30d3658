"""
finite_field.py

Exact arithmetic in F_p and in the quadratic extension F_{p^2} = F_p(sqrt(s)),
where s is the smallest quadratic non-residue mod p. Also the Legendre symbol
and a deterministic Miller-Rabin primality test.

Residues are plain Python ints kept in [0, p); the modulus bound p < 2^61
keeps every product inside a double-width word.
"""

from dataclasses import dataclass
from functools import cached_property
import operator

from exceptions import FieldMismatchError, UsageError

MAX_MODULUS = 2 ** 61

# Complete witness set for n < 3.3 * 10^24, which covers every 64-bit input.
MILLER_RABIN_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Deterministic Miller-Rabin for all n < 2^64"""
    if n < 2:
        return False
    for q in MILLER_RABIN_WITNESSES:
        if n % q == 0:
            return n == q

    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1

    for a in MILLER_RABIN_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _modulus_int(p):
    return p.p if isinstance(p, PrimeModulus) else int(p)


def legendre(a, p):
    """Legendre symbol (a/p) in {-1, 0, 1} by Euler's criterion"""
    p = _modulus_int(p)
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def smallest_nonresidue(p):
    """Smallest positive quadratic non-residue mod p (linear search)."""
    p = _modulus_int(p)
    s = 2
    while legendre(s, p) != -1:
        s += 1
    return s


@dataclass(frozen=True)
class PrimeModulus:
    """An odd prime 3 < p < 2^61, validated once at construction."""
    p: int

    def __post_init__(self):
        if isinstance(self.p, bool) or not isinstance(self.p, int):
            raise UsageError(f"modulus must be an integer, got {self.p!r}")
        if self.p <= 3 or self.p >= MAX_MODULUS:
            raise UsageError(f"modulus must satisfy 3 < p < 2^61, got {self.p}")
        if not is_prime(self.p):
            raise UsageError(f"modulus {self.p} is not prime")

    @cached_property
    def nonresidue(self):
        return smallest_nonresidue(self.p)

    def element(self, u):
        return FieldElement(self, u)

    def ext_element(self, u, v=0):
        return FieldElement(self, u, v, extension=True)

    def zero(self, extension=False):
        return FieldElement(self, 0, 0, extension)

    def one(self, extension=False):
        return FieldElement(self, 1, 0, extension)

    def __int__(self):
        return self.p


def as_modulus(p):
    return p if isinstance(p, PrimeModulus) else PrimeModulus(int(p))


class FieldElement:
    """
    Element of F_p (extension=False) or of F_{p^2} (extension=True).

    The pair (u, v) stands for u + v*sqrt(s); base-field elements keep v = 0.
    Operands must share modulus and extension degree; plain ints are coerced.
    """
    __slots__ = ('modulus', 'u', 'v', 'extension')

    def __init__(self, modulus, u, v=0, extension=False):
        p = modulus.p
        self.modulus = modulus
        self.u = u % p
        self.v = v % p
        self.extension = extension
        if self.v and not extension:
            raise UsageError("base-field element cannot carry a sqrt(s) part")

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.modulus != self.modulus:
                raise FieldMismatchError(
                    f"modulus mismatch: {self.modulus.p} vs {other.modulus.p}")
            if other.extension != self.extension:
                raise FieldMismatchError("cannot mix F_p and F_p^2 elements")
            return other
        if isinstance(other, int):
            return FieldElement(self.modulus, other, 0, self.extension)
        return NotImplemented

    def _new(self, u, v):
        return FieldElement(self.modulus, u, v, self.extension)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._new(self.u + other.u, self.v + other.v)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._new(self.u - other.u, self.v - other.v)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return self._new(-self.u, -self.v)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.extension:
            return self._new(self.u * other.u, 0)
        s = self.modulus.nonresidue
        return self._new(self.u * other.u + s * self.v * other.v,
                         self.u * other.v + self.v * other.u)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        if not self.extension:
            return self._new(pow(self.u, e, self.modulus.p), 0)
        result = self.modulus.one(extension=True)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self):
        p = self.modulus.p
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if not self.extension:
            return self._new(pow(self.u, -1, p), 0)
        n_inv = pow(self.norm(), -1, p)
        return self._new(self.u * n_inv, -self.v * n_inv)

    def frobenius(self):
        """x -> x^p; conjugation u + v*sqrt(s) -> u - v*sqrt(s) on F_{p^2}."""
        if not self.extension:
            return self
        return self._new(self.u, -self.v)

    def norm(self):
        """x * x^p as an F_p residue"""
        if not self.extension:
            return self.u
        return (self.u * self.u - self.modulus.nonresidue * self.v * self.v) % self.modulus.p

    def is_square(self):
        if self.is_zero():
            return True
        return legendre(self.norm(), self.modulus.p) == 1

    def is_zero(self):
        return self.u == 0 and self.v == 0

    def lift(self):
        """The same value viewed in F_{p^2}."""
        if self.extension:
            return self
        return FieldElement(self.modulus, self.u, 0, extension=True)

    def __bool__(self):
        return not self.is_zero()

    def __int__(self):
        if self.v:
            raise UsageError("element outside F_p has no integer value")
        return self.u

    def __eq__(self, other):
        if isinstance(other, int):
            return not self.v and self.u == other % self.modulus.p
        if not isinstance(other, FieldElement):
            return NotImplemented
        return (self.modulus == other.modulus and self.extension == other.extension
                and self.u == other.u and self.v == other.v)

    def __hash__(self):
        return hash((self.modulus.p, self.u, self.v, self.extension))

    def __repr__(self):
        if self.extension:
            return f"FieldElement({self.u} + {self.v}*sqrt({self.modulus.nonresidue}) mod {self.modulus.p})"
        return f"FieldElement({self.u} mod {self.modulus.p})"


_ARITH_OPS = {'add': operator.add, 'sub': operator.sub, 'mul': operator.mul}


def field_arith(x, y, op):
    """Apply op in {'add', 'sub', 'mul'} to two elements of the same field"""
    if op not in _ARITH_OPS:
        raise UsageError(f"unknown field operation {op!r}")
    if not isinstance(x, FieldElement) or not isinstance(y, FieldElement):
        raise UsageError("field_arith expects two FieldElement operands")
    return _ARITH_OPS[op](x, y)


def field_inv(x):
    return x.inverse()


def field_pow(x, e):
    return x ** e


def field_frobenius(x):
    return x.frobenius()


def field_norm(x):
    return x.norm()


def field_is_square(x):
    return x.is_square()


def random_element(modulus, rng, extension=False):
    p = modulus.p
    v = rng.randrange(p) if extension else 0
    return FieldElement(modulus, rng.randrange(p), v, extension)
