"""Exact arithmetic in cyclotomic fields Q(zeta_M).

An element is a rational polynomial in zeta reduced modulo the M-th
cyclotomic polynomial. Polynomial arithmetic is delegated to FLINT.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd
import cmath

import flint


class CycField:
    """The field Q(zeta_M), zeta = exp(2 i pi / M)."""

    def __init__(self, M):
        if M < 1:
            raise ValueError("conductor must be positive")
        self.M = M
        self.phi = flint.fmpq_poly(flint.fmpz_poly.cyclotomic(M).coeffs())
        self.degree = self.phi.degree()
        self.zero = Cyc(self, flint.fmpq_poly())
        self.one = Cyc(self, flint.fmpq_poly([1]))
        self._gen = complex(cmath.exp(2j * cmath.pi / M))

    def __repr__(self):
        return f"CycField({self.M})"

    def __eq__(self, other):
        return isinstance(other, CycField) and other.M == self.M

    def __hash__(self):
        return hash(("CycField", self.M))

    def __call__(self, x):
        if isinstance(x, Cyc):
            return x.embed(self)
        if isinstance(x, (int, Fraction)):
            x = Fraction(x)
            return Cyc(self, flint.fmpq_poly([flint.fmpq(x.numerator, x.denominator)]))
        raise TypeError(f"cannot coerce {type(x).__name__} into {self}")

    def zeta(self, e=1):
        """zeta_M ** e for any integer e."""
        e %= self.M
        return _zeta_power(self.M, e)

    def root(self, num, den):
        """exp(2 i pi num/den); den must divide M (after reduction)."""
        f = Fraction(num, den)
        if (self.M * f.numerator) % f.denominator:
            raise ValueError(f"exp(2 i pi {f}) is not in Q(zeta_{self.M})")
        return self.zeta(self.M * f.numerator // f.denominator)

    def from_coeffs(self, coeffs):
        return Cyc(self, flint.fmpq_poly([flint.fmpq(Fraction(c).numerator, Fraction(c).denominator)
                                          for c in coeffs]))


@lru_cache(maxsize=None)
def field(M):
    return CycField(M)


@lru_cache(maxsize=4096)
def _zeta_power(M, e):
    F = field(M)
    coeffs = [0] * (e + 1)
    coeffs[e] = 1
    return Cyc(F, flint.fmpq_poly(coeffs))


class Cyc:
    """An element of Q(zeta_M); immutable."""

    __slots__ = ("F", "p")

    def __init__(self, F, p):
        self.F = F
        if p.degree() >= F.degree:
            p = p % F.phi
        self.p = p

    # coercion helpers
    def _other(self, y):
        if isinstance(y, Cyc):
            if y.F.M == self.F.M:
                return y
            raise TypeError(f"conductor mismatch: {self.F.M} vs {y.F.M}")
        if isinstance(y, (int, Fraction)):
            return self.F(y)
        return NotImplemented

    def __add__(self, y):
        y = self._other(y)
        if y is NotImplemented:
            return y
        return Cyc(self.F, self.p + y.p)

    __radd__ = __add__

    def __sub__(self, y):
        y = self._other(y)
        if y is NotImplemented:
            return y
        return Cyc(self.F, self.p - y.p)

    def __rsub__(self, y):
        y = self._other(y)
        if y is NotImplemented:
            return y
        return Cyc(self.F, y.p - self.p)

    def __neg__(self):
        return Cyc(self.F, -self.p)

    def __mul__(self, y):
        if isinstance(y, int):
            return Cyc(self.F, self.p * y)
        y = self._other(y)
        if y is NotImplemented:
            return y
        return Cyc(self.F, self.p * y.p)

    __rmul__ = __mul__

    def inverse(self):
        if self.p.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        g, s, _ = self.p.xgcd(self.F.phi)
        # g is a nonzero constant since phi is irreducible
        return Cyc(self.F, s / g.coeffs()[0])

    def __truediv__(self, y):
        y = self._other(y)
        if y is NotImplemented:
            return y
        return self * y.inverse()

    def __rtruediv__(self, y):
        y = self._other(y)
        if y is NotImplemented:
            return y
        return y * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        r = self.F.one
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def __eq__(self, y):
        y = self._other(y)
        if y is NotImplemented:
            return False
        return self.p == y.p

    def __hash__(self):
        return hash((self.F.M, tuple(str(c) for c in self.p.coeffs())))

    def is_zero(self):
        return self.p.is_zero()

    def __bool__(self):
        return not self.p.is_zero()

    def coeffs(self):
        """Rational coefficient vector of length phi(M)."""
        cs = [Fraction(int(c.p), int(c.q)) for c in self.p.coeffs()]
        return cs + [Fraction(0)] * (self.F.degree - len(cs))

    def embed(self, G):
        """Image in Q(zeta_{M'}) for M | M'."""
        if G.M == self.F.M:
            return self
        if G.M % self.F.M:
            raise ValueError(f"Q(zeta_{self.F.M}) does not embed in Q(zeta_{G.M})")
        step = G.M // self.F.M
        cs = self.p.coeffs()
        out = [0] * (step * (len(cs) - 1) + 1) if cs else []
        for i, c in enumerate(cs):
            out[step * i] = c
        return Cyc(G, flint.fmpq_poly(out))

    def __complex__(self):
        z = self.F._gen
        acc = 0j
        for c in reversed(self.p.coeffs()):
            acc = acc * z + float(c)
        return acc

    def rational(self):
        """The value as a Fraction if it is rational, else None."""
        if self.p.degree() <= 0:
            cs = self.p.coeffs()
            return Fraction(int(cs[0].p), int(cs[0].q)) if cs else Fraction(0)
        return None

    def __repr__(self):
        if self.p.is_zero():
            return "0"
        return f"Cyc[{self.F.M}]({self.p.str(var='z')})"


def common_field(*Ms):
    m = 1
    for x in Ms:
        m = m * x // gcd(m, x)
    return field(m)
