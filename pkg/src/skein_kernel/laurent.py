"""Multivariate Laurent polynomials and rational functions over Q(zeta_M).

Terms are stored as a dict from integer exponent tuples to nonzero
cyclotomic coefficients. Rational functions keep a numerator and a
denominator without gcd reduction; equality is tested by cross
multiplication and the valuation is a difference of lowest exponents,
which is well defined without reduction.
"""

from fractions import Fraction
import math

from .cyclotomic import Cyc

INF = math.inf


class LaurentPoly:
    __slots__ = ("F", "n", "terms")

    def __init__(self, F, n, terms=None):
        self.F = F
        self.n = n
        self.terms = {}
        if terms:
            for e, c in terms.items():
                if not c.is_zero():
                    self.terms[tuple(e)] = c

    @classmethod
    def const(cls, F, n, c):
        c = F(c) if not isinstance(c, Cyc) else c
        return cls(F, n, {(0,) * n: c})

    @classmethod
    def monomial(cls, F, n, exps, c=None):
        return cls(F, n, {tuple(exps): F.one if c is None else F(c)})

    @classmethod
    def var(cls, F, n, i):
        e = [0] * n
        e[i] = 1
        return cls.monomial(F, n, e)

    def _lift(self, y):
        if isinstance(y, LaurentPoly):
            if y.n != self.n or y.F.M != self.F.M:
                raise TypeError("incompatible Laurent polynomial rings")
            return y
        if isinstance(y, (int, Fraction, Cyc)):
            return LaurentPoly.const(self.F, self.n, y)
        return NotImplemented

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, y):
        y = self._lift(y)
        if y is NotImplemented:
            return y
        t = dict(self.terms)
        for e, c in y.terms.items():
            s = t.get(e)
            s = c if s is None else s + c
            if s.is_zero():
                t.pop(e, None)
            else:
                t[e] = s
        out = LaurentPoly(self.F, self.n)
        out.terms = t
        return out

    __radd__ = __add__

    def __neg__(self):
        out = LaurentPoly(self.F, self.n)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, y):
        y = self._lift(y)
        if y is NotImplemented:
            return y
        return self + (-y)

    def __rsub__(self, y):
        return (-self) + y

    def __mul__(self, y):
        if isinstance(y, RatFun):
            return NotImplemented
        y = self._lift(y)
        if y is NotImplemented:
            return y
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in y.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = t.get(e)
                t[e] = c1 * c2 if s is None else s + c1 * c2
        out = LaurentPoly(self.F, self.n)
        out.terms = {e: c for e, c in t.items() if not c.is_zero()}
        return out

    __rmul__ = __mul__

    def is_monomial(self):
        return len(self.terms) == 1

    def __pow__(self, k):
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial Laurent polynomial")
            (e, c), = self.terms.items()
            return LaurentPoly(self.F, self.n, {tuple(-a * (-k) for a in e): c.inverse() ** (-k)})
        r = LaurentPoly.const(self.F, self.n, 1)
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def __eq__(self, y):
        y = self._lift(y)
        if y is NotImplemented:
            return False
        return self.terms == y.terms

    def __hash__(self):
        return hash(tuple(sorted((e, hash(c)) for e, c in self.terms.items())))

    def valuation(self, i):
        if not self.terms:
            return INF
        return min(e[i] for e in self.terms)

    def degree(self, i):
        if not self.terms:
            return -INF
        return max(e[i] for e in self.terms)

    def evaluate(self, point):
        """Substitute values (Cyc or complex) for every variable."""
        acc = None
        for e, c in self.terms.items():
            v = c if not isinstance(point[0], complex) else complex(c)
            for x, a in zip(point, e):
                if a:
                    v = v * x ** a
            acc = v if acc is None else acc + v
        if acc is None:
            return 0j if point and isinstance(point[0], complex) else self.F.zero
        return acc

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join(f"X{i+1}^{a}" for i, a in enumerate(e) if a)
            parts.append(f"({c!r})" + ("*" + mono if mono else ""))
        return " + ".join(parts)


def _is_one(p):
    if len(p.terms) != 1:
        return False
    (e, c), = p.terms.items()
    return not any(e) and c == 1


class RatFun:
    """num/den with Laurent polynomial numerator and denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = LaurentPoly.const(num.F, num.n, 1)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if den.is_monomial() and not _is_one(den):
            num = num * den ** -1
            den = LaurentPoly.const(num.F, num.n, 1)
        self.num = num
        self.den = den

    @property
    def F(self):
        return self.num.F

    @property
    def n(self):
        return self.num.n

    def _lift(self, y):
        if isinstance(y, RatFun):
            return y
        if isinstance(y, LaurentPoly):
            return RatFun(y)
        if isinstance(y, (int, Fraction, Cyc)):
            return RatFun(LaurentPoly.const(self.F, self.n, y))
        return NotImplemented

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def __add__(self, y):
        y = self._lift(y)
        if y is NotImplemented:
            return y
        if self.den == y.den:
            return RatFun(self.num + y.num, self.den)
        return RatFun(self.num * y.den + y.num * self.den, self.den * y.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den)

    def __sub__(self, y):
        y = self._lift(y)
        if y is NotImplemented:
            return y
        return self + (-y)

    def __rsub__(self, y):
        return (-self) + y

    def __mul__(self, y):
        y = self._lift(y)
        if y is NotImplemented:
            return y
        if self.den == y.num and not y.num.is_zero():
            return RatFun(self.num, y.den)
        if y.den == self.num and not self.num.is_zero():
            return RatFun(y.num, self.den)
        return RatFun(self.num * y.num, self.den * y.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFun(self.den, self.num)

    def __truediv__(self, y):
        y = self._lift(y)
        if y is NotImplemented:
            return y
        return self * y.inverse()

    def __rtruediv__(self, y):
        y = self._lift(y)
        if y is NotImplemented:
            return y
        return y * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFun(self.num ** k, self.den ** k)

    def __eq__(self, y):
        y = self._lift(y)
        if y is NotImplemented:
            return False
        return (self.num * y.den) == (y.num * self.den)

    def __hash__(self):
        raise TypeError("RatFun is not hashable (no canonical reduced form)")

    def valuation(self, i):
        if self.num.is_zero():
            return INF
        return self.num.valuation(i) - self.den.valuation(i)

    def evaluate(self, point):
        d = self.den.evaluate(point)
        if isinstance(d, complex):
            if abs(d) < 1e-300:
                raise ZeroDivisionError("pole at evaluation point")
        elif d.is_zero():
            raise ZeroDivisionError("pole at evaluation point")
        return self.num.evaluate(point) / d

    def __repr__(self):
        return f"({self.num!r}) / ({self.den!r})"


def valuation(f, i):
    """Discrete valuation of f in variable i (lowest exponent)."""
    if isinstance(f, (LaurentPoly, RatFun)):
        return f.valuation(i)
    raise TypeError("valuation is defined on exact Laurent/rational functions")


def eval_complex(f, assignment):
    """Numeric value of an exact scalar at a complex assignment of its variables.

    assignment: sequence of complex values, one per variable (ignored for
    plain cyclotomic numbers, whose generator maps to exp(2 i pi / M)).
    """
    if isinstance(f, Cyc):
        return complex(f)
    if isinstance(f, (int, Fraction)):
        return complex(f)
    point = [complex(x) for x in assignment]
    return complex(f.evaluate(point))
