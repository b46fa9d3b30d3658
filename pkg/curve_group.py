"""
curve_group.py

The curve y^2 = x^3 + ax + b over F_p (and its points over F_{p^2}): chord and
tangent group law in affine coordinates, scalar multiplication, exhaustive
point enumeration and the Frobenius action (x, y) -> (x^p, y^p).
"""

from dataclasses import dataclass
import logging

from exceptions import IdentityViolation, OffCurveError, ResourceLimitError, SingularCurveError, UsageError
from finite_field import FieldElement, as_modulus

logger = logging.getLogger(__name__)

ENUM_BASE_LIMIT = 2 ** 20
ENUM_QUADRATIC_LIMIT = 2 ** 10


@dataclass(frozen=True)
class Point:
    """Affine point, or the point at infinity when x and y are both None."""
    x: FieldElement = None
    y: FieldElement = None

    @property
    def is_infinity(self):
        return self.x is None

    @property
    def extension(self):
        return bool(self.x is not None and self.x.extension)

    def __repr__(self):
        if self.is_infinity:
            return "Point(INFINITY)"
        return f"Point({self.x!r}, {self.y!r})"


INFINITY = Point()


class Curve:
    """Nonsingular short Weierstrass curve over F_p, p > 3."""

    def __init__(self, p, a, b):
        self.modulus = as_modulus(p)
        self.p = self.modulus.p
        self.a = a % self.p
        self.b = b % self.p
        if self.discriminant() == 0:
            raise SingularCurveError(
                f"4a^3 + 27b^2 = 0 mod {self.p} for (a, b) = ({self.a}, {self.b})")

    def discriminant(self):
        """4a^3 + 27b^2 reduced mod p"""
        return (4 * self.a ** 3 + 27 * self.b ** 2) % self.p

    def rhs(self, x):
        return x * x * x + self.a * x + self.b

    def point(self, x, y):
        """Affine point from ints (F_p) or FieldElements; checked against the equation"""
        if isinstance(x, int):
            x = self.modulus.element(x)
        if isinstance(y, int):
            y = self.modulus.element(y)
        pt = Point(x, y)
        self._require_on_curve(pt)
        return pt

    def is_on_curve(self, pt):
        if pt.is_infinity:
            return True
        if pt.x.modulus != self.modulus or pt.y.modulus != self.modulus:
            return False
        if pt.x.extension != pt.y.extension:
            return False
        return pt.y * pt.y == self.rhs(pt.x)

    def _require_on_curve(self, pt):
        if not self.is_on_curve(pt):
            raise OffCurveError(f"{pt!r} is not on {self!r}")

    def point_neg(self, pt):
        if pt.is_infinity:
            return pt
        return Point(pt.x, -pt.y)

    def _add(self, P, Q):
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        if P.x == Q.x:
            if (P.y + Q.y).is_zero():
                return INFINITY
            lam = (3 * P.x * P.x + self.a) / (2 * P.y)
        else:
            lam = (Q.y - P.y) / (Q.x - P.x)
        x3 = lam * lam - P.x - Q.x
        y3 = lam * (P.x - x3) - P.y
        return Point(x3, y3)

    def point_add(self, P, Q):
        """Group sum; INFINITY is the identity"""
        self._require_on_curve(P)
        self._require_on_curve(Q)
        return self._add(P, Q)

    def _mul(self, m, pt):
        if m < 0:
            pt = self.point_neg(pt)
            m = -m
        result = INFINITY
        addend = pt
        while m:
            if m & 1:
                result = self._add(result, addend)
            addend = self._add(addend, addend)
            m >>= 1
        return result

    def scalar_mul(self, m, pt):
        """[m]P by double-and-add; negative m negates P first"""
        self._require_on_curve(pt)
        return self._mul(m, pt)

    def frobenius_apply(self, pt):
        """pi(x, y) = (x^p, y^p)"""
        self._require_on_curve(pt)
        if pt.is_infinity:
            return pt
        return Point(pt.x.frobenius(), pt.y.frobenius())

    def enumerate_points(self, ext='base'):
        """All points over F_p (ext='base') or F_{p^2} (ext='quadratic'), INFINITY first"""
        if ext == 'base':
            return self._enumerate_base()
        if ext == 'quadratic':
            return self._enumerate_quadratic()
        raise UsageError(f"ext must be 'base' or 'quadratic', got {ext!r}")

    def _enumerate_base(self):
        p = self.p
        if p > ENUM_BASE_LIMIT:
            raise ResourceLimitError(f"base enumeration needs p <= 2^20, got {p}")
        roots = {}
        for y in range(p):
            roots.setdefault(y * y % p, []).append(y)

        points = [INFINITY]
        element = self.modulus.element
        for x in range(p):
            r = (x * x * x + self.a * x + self.b) % p
            for y in roots.get(r, ()):
                points.append(Point(element(x), element(y)))
        return points

    def _enumerate_quadratic(self):
        p = self.p
        if p > ENUM_QUADRATIC_LIMIT:
            raise ResourceLimitError(f"F_p^2 enumeration needs p <= 2^10, got {p}")
        s = self.modulus.nonresidue
        roots = {}
        for yu in range(p):
            for yv in range(p):
                key = ((yu * yu + s * yv * yv) % p, 2 * yu * yv % p)
                roots.setdefault(key, []).append((yu, yv))

        ext = self.modulus.ext_element
        points = [INFINITY]
        for xu in range(p):
            for xv in range(p):
                x = ext(xu, xv)
                r = self.rhs(x)
                if not r.is_square():
                    continue
                ys = roots.get((r.u, r.v))
                if not ys:
                    raise IdentityViolation(f"norm test called {r!r} a square but no root exists")
                for yu, yv in ys:
                    points.append(Point(x, ext(yu, yv)))
        logger.debug("enumerated %d points over F_%d^2", len(points), p)
        return points

    def __eq__(self, other):
        if not isinstance(other, Curve):
            return NotImplemented
        return (self.p, self.a, self.b) == (other.p, other.a, other.b)

    def __hash__(self):
        return hash((self.p, self.a, self.b))

    def __repr__(self):
        return f"Curve(p={self.p}, a={self.a}, b={self.b})"


def curve_new(p, a, b):
    return Curve(p, a, b)


def singular_pair_count(p):
    """Number of (a, b) in F_p^2 with 4a^3 + 27b^2 = 0"""
    p = as_modulus(p).p
    cubes = [4 * a ** 3 % p for a in range(p)]
    squares = [27 * b * b % p for b in range(p)]
    return sum(1 for c in cubes for s in squares if (c + s) % p == 0)
