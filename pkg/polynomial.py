"""
polynomial.py

Dense univariate polynomials over F_p, Euclidean division and gcd, and the
height function H(Q_1, ..., Q_k) = max deg Q_j with the zero polynomial at
degree NEG_INF.
"""

import numpy as np

from exceptions import FieldMismatchError, UsageError
from finite_field import FieldElement, as_modulus

NEG_INF = float('-inf')

# Largest p for which c * g_j fits a signed 64-bit lane during division.
_NUMPY_DIVISION_LIMIT = 2 ** 31


def _convolve(f, g, p):
    if not f or not g:
        return []
    if (p - 1) ** 2 * min(len(f), len(g)) < 2 ** 63:
        out = np.convolve(np.array(f, dtype=np.int64), np.array(g, dtype=np.int64)) % p
        return [int(c) for c in out]
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return [c % p for c in out]


class Poly:
    """
    Polynomial over F_p, coeffs[i] holding the coefficient of x^i.

    Normal form: no trailing zeros, so the zero polynomial has coeffs == ().
    """
    __slots__ = ('modulus', 'coeffs')

    def __init__(self, modulus, coeffs=()):
        modulus = as_modulus(modulus)
        p = modulus.p
        cs = [int(c) % p for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.modulus = modulus
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls, modulus):
        return cls(modulus, (0, 1))

    @classmethod
    def constant(cls, modulus, c):
        return cls(modulus, (c,))

    @classmethod
    def monomial(cls, modulus, c, e):
        return cls(modulus, [0] * e + [c])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def _check(self, other):
        if isinstance(other, int):
            return Poly(self.modulus, (other,))
        if not isinstance(other, Poly):
            return NotImplemented
        if other.modulus != self.modulus:
            raise FieldMismatchError(
                f"polynomials over different fields: {self.modulus.p} vs {other.modulus.p}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Poly(self.modulus, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.modulus, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, int):
            return Poly(self.modulus, [c * other for c in self.coeffs])
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Poly(self.modulus, _convolve(self.coeffs, other.coeffs, self.modulus.p))

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise UsageError("negative polynomial power")
        result = Poly(self.modulus, (1,))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        return poly_divmod(self, other)

    def __floordiv__(self, other):
        return poly_divmod(self, other)[0]

    def __mod__(self, other):
        return poly_divmod(self, other)[1]

    def __call__(self, c):
        return poly_eval(self, c)

    def scale(self, c):
        return Poly(self.modulus, [x * c for x in self.coeffs])

    def monic(self):
        if not self.coeffs:
            return self
        return self.scale(pow(self.coeffs[-1], -1, self.modulus.p))

    def __eq__(self, other):
        if isinstance(other, int):
            return self == Poly(self.modulus, (other,))
        if not isinstance(other, Poly):
            return NotImplemented
        return self.modulus == other.modulus and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.modulus.p, self.coeffs))

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for e in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[e]
            if not c:
                continue
            if e == 0:
                terms.append(f"{c}")
            else:
                coef = "" if c == 1 else f"{c}*"
                power = "x" if e == 1 else f"x^{e}"
                terms.append(coef + power)
        return " + ".join(terms)

    def __repr__(self):
        return f"Poly({self} mod {self.modulus.p})"


def poly_arith(f, g, op):
    """op in {'add', 'sub', 'mul'}; both operands over the same F_p"""
    if not isinstance(f, Poly) or not isinstance(g, Poly):
        raise UsageError("poly_arith expects two Poly operands")
    if op == 'add':
        return f + g
    if op == 'sub':
        return f - g
    if op == 'mul':
        return f * g
    raise UsageError(f"unknown polynomial operation {op!r}")


def poly_divmod(f, g):
    """Return (q, r) with f = q*g + r and deg r < deg g"""
    g = f._check(g)
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    p = f.modulus.p
    dg = len(g.coeffs) - 1
    n = len(f.coeffs)
    if n <= dg:
        return Poly(f.modulus), f

    inv = pow(g.coeffs[-1], -1, p)
    q = [0] * (n - dg)
    if p < _NUMPY_DIVISION_LIMIT:
        r = np.array(f.coeffs, dtype=np.int64)
        gv = np.array(g.coeffs, dtype=np.int64)
        for k in range(n - dg - 1, -1, -1):
            c = int(r[k + dg]) * inv % p
            q[k] = c
            if c:
                r[k:k + dg + 1] = (r[k:k + dg + 1] - c * gv) % p
        rem = [int(c) for c in r[:dg]]
    else:
        rem = list(f.coeffs)
        for k in range(n - dg - 1, -1, -1):
            c = rem[k + dg] * inv % p
            q[k] = c
            if c:
                for j, gc in enumerate(g.coeffs):
                    rem[k + j] = (rem[k + j] - c * gc) % p
        rem = rem[:dg]
    return Poly(f.modulus, q), Poly(f.modulus, rem)


def poly_gcd(f, g):
    """Monic greatest common divisor"""
    g = f._check(g)
    if f.is_zero() and g.is_zero():
        raise UsageError("gcd(0, 0) is undefined")
    a, b = f, g
    while not b.is_zero():
        a, b = b, poly_divmod(a, b)[1]
    return a.monic()


def poly_eval(f, c):
    """Horner evaluation at an int residue or a FieldElement (F_p or F_p^2)"""
    if isinstance(c, FieldElement):
        acc = c.modulus.zero(c.extension)
    else:
        acc = 0
    for coeff in reversed(f.coeffs):
        acc = acc * c + coeff
    if isinstance(acc, int):
        return acc % f.modulus.p
    return acc


def poly_compose(f, g):
    """f(g(x))"""
    g = f._check(g)
    result = Poly(f.modulus)
    for coeff in reversed(f.coeffs):
        result = result * g + coeff
    return result


def height(*polys):
    """H(Q_1, ..., Q_k): the largest degree, NEG_INF when every Q_j is zero"""
    if not polys:
        raise UsageError("height needs at least one polynomial")
    return max(f.degree for f in polys)


def leading_coeff(f):
    if f.is_zero():
        raise UsageError("the zero polynomial has no leading coefficient")
    return FieldElement(f.modulus, f.coeffs[-1])


def random_poly(rng, deg, p, leading=None):
    """Polynomial of exact degree deg; the leading coefficient is forced when given"""
    modulus = as_modulus(p)
    if deg < 0:
        raise UsageError("random_poly needs deg >= 0")
    coeffs = [rng.randrange(modulus.p) for _ in range(deg)]
    top = leading % modulus.p if leading is not None else rng.randrange(1, modulus.p)
    if top == 0:
        raise UsageError("leading coefficient must be nonzero")
    return Poly(modulus, coeffs + [top])


def random_coprime_pair(rng, max_deg, p):
    """(F, G) with deg <= max_deg, not both zero, gcd(F, G) = 1; rejection sampling"""
    modulus = as_modulus(p)
    if max_deg < 0:
        raise UsageError("max_deg must be >= 0")
    while True:
        f = Poly(modulus, [rng.randrange(modulus.p) for _ in range(max_deg + 1)])
        g = Poly(modulus, [rng.randrange(modulus.p) for _ in range(max_deg + 1)])
        if f.is_zero() and g.is_zero():
            continue
        if poly_gcd(f, g) == 1:
            return f, g


def random_coprime_pair_with_degrees(rng, deg_f, deg_g, p, lead_f=None, lead_g=None):
    """Coprime pair of exact degrees deg_f, deg_g"""
    modulus = as_modulus(p)
    while True:
        f = random_poly(rng, deg_f, modulus, lead_f)
        g = random_poly(rng, deg_g, modulus, lead_g)
        if poly_gcd(f, g) == 1:
            return f, g


def lemma1_case(a, b, c, d):
    """Which branch of the degree argument applies to (A, B), (C, D)"""
    if (a * c).degree < (b * d).degree:
        return "mirror"
    if a.degree >= b.degree and c.degree >= d.degree:
        return "1"
    if a.degree > b.degree and c.degree < d.degree:
        return "2"
    return "3"


def lemma1_check(a, b, c, d):
    """(lhs, rhs, ok) for H(AC, AD + BC, BD) = H(A, B) + H(C, D)"""
    lhs = height(a * c, a * d + b * c, b * d)
    rhs = height(a, b) + height(c, d)
    return lhs, rhs, lhs == rhs
