"""Root data, scalar rings and q-arithmetic.

Colors are measured in units of k: a module V_alpha is described by the
color c = alpha/k, so that q^{alpha/(2k)} = A^c.  Three rings share one
interface (``apow``, ``qpow``, ``is_zero``, ``one``/``zero``):

* ExactRing     values in Q(zeta_M), concrete rational colors;
* SymbolicRing  rational functions in formal variables u_i = A^{c_i};
* ApproxRing    complex doubles, arbitrary complex colors.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd
import cmath

from .cyclotomic import Cyc, field
from .laurent import LaurentPoly, RatFun


class NotRepresentable(ValueError):
    """An exponent that does not live in the active ring."""


class ModeMismatch(TypeError):
    pass


class RootData:
    """A = exp(2 i pi k'/N) with N odd; k = 2k', q = A^2."""

    def __init__(self, N, kprime=1):
        if N < 3 or N % 2 == 0:
            raise ValueError(f"N must be odd and >= 3, got {N}")
        if not (1 <= kprime <= N - 1) or gcd(kprime, N) != 1:
            raise ValueError(f"kprime must be in 1..N-1 and prime to N, got {kprime}")
        self.N = N
        self.kprime = kprime
        self.k = 2 * kprime

    def __eq__(self, other):
        return isinstance(other, RootData) and (self.N, self.kprime) == (other.N, other.kprime)

    def __hash__(self):
        return hash((self.N, self.kprime))

    def __repr__(self):
        return f"RootData(N={self.N}, kprime={self.kprime})"

    @property
    def H(self):
        """H_N in color units: {N-1-2n}."""
        return [self.N - 1 - 2 * n for n in range(self.N)]


class Aff:
    """Affine expression sum_i a_i c_i + b in symbolic colors c_i."""

    __slots__ = ("coef", "const")

    def __init__(self, coef=None, const=0):
        self.coef = {i: Fraction(a) for i, a in (coef or {}).items() if a}
        self.const = Fraction(const)

    @classmethod
    def var(cls, i):
        return cls({i: 1}, 0)

    def _lift(self, y):
        if isinstance(y, Aff):
            return y
        if isinstance(y, (int, Fraction)):
            return Aff({}, y)
        return NotImplemented

    def __add__(self, y):
        y = self._lift(y)
        if y is NotImplemented:
            return y
        c = dict(self.coef)
        for i, a in y.coef.items():
            c[i] = c.get(i, 0) + a
        return Aff(c, self.const + y.const)

    __radd__ = __add__

    def __neg__(self):
        return Aff({i: -a for i, a in self.coef.items()}, -self.const)

    def __sub__(self, y):
        y = self._lift(y)
        if y is NotImplemented:
            return y
        return self + (-y)

    def __rsub__(self, y):
        return (-self) + y

    def __mul__(self, s):
        if not isinstance(s, (int, Fraction)):
            return NotImplemented
        return Aff({i: a * s for i, a in self.coef.items()}, self.const * s)

    __rmul__ = __mul__

    def __truediv__(self, s):
        return self * (1 / Fraction(s))

    def is_const(self):
        return not self.coef

    def __eq__(self, y):
        y = self._lift(y)
        if y is NotImplemented:
            return False
        return self.coef == y.coef and self.const == y.const

    def __hash__(self):
        return hash((tuple(sorted(self.coef.items())), self.const))

    def __repr__(self):
        parts = [f"{a}*c{i}" for i, a in sorted(self.coef.items())]
        if self.const or not parts:
            parts.append(str(self.const))
        return " + ".join(parts)


def as_integer(x):
    """Integer value of a constant expression, or None."""
    if isinstance(x, Aff):
        if x.coef:
            return None
        x = x.const
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else None
    if isinstance(x, complex):
        if abs(x.imag) < 1e-12 and abs(x.real - round(x.real)) < 1e-12:
            return int(round(x.real))
        return None
    if isinstance(x, float):
        return int(round(x)) if abs(x - round(x)) < 1e-12 else None
    return None


class _Ring:
    mode = "?"

    def qpow(self, x):
        return self.apow(2 * x)

    def brace(self, x):
        return self.qpow(x) - self.qpow(-x)

    def __repr__(self):
        return f"{type(self).__name__}({self.root}, {self._tag()})"


class ExactRing(_Ring):
    """Exact values in Q(zeta_M); colors are rationals."""

    mode = "exact"

    def __init__(self, root, M=None):
        self.root = root
        M = root.N if M is None else M
        if M % root.N:
            raise ValueError("conductor must be a multiple of N")
        self.M = M
        self.F = field(M)
        self.one = self.F.one
        self.zero = self.F.zero

    def _tag(self):
        return f"M={self.M}"

    def __eq__(self, other):
        return isinstance(other, ExactRing) and other.root == self.root and other.M == self.M

    def __hash__(self):
        return hash(("exact", self.root, self.M))

    @classmethod
    def for_colors(cls, root, colors, extra_den=1):
        """Smallest ring containing A^c for every rational color c."""
        d = extra_den
        for c in colors:
            c = Fraction(c)
            d = d * c.denominator // gcd(d, c.denominator)
        return cls(root, root.N * d)

    def __call__(self, x):
        return self.F(x)

    def apow(self, x):
        if isinstance(x, Aff):
            if x.coef:
                raise NotRepresentable("symbolic exponent in an exact ring")
            x = x.const
        return _exact_apow(self.M, self.root.N, self.root.kprime, Fraction(x))

    def is_zero(self, x, scale=None):
        return x.is_zero()

    def to_complex(self, x):
        return complex(x)


@lru_cache(maxsize=65536)
def _exact_apow(M, N, kprime, x):
    t = x * kprime * M / N
    if t.denominator != 1:
        raise NotRepresentable(f"A^{x} is not in Q(zeta_{M})")
    return field(M).zeta(int(t))


class SymbolicRing(_Ring):
    """Rational functions in u_i = A^{c_i} over Q(zeta_M)."""

    mode = "exact"

    def __init__(self, root, nvars=1, M=None):
        self.root = root
        self.M = root.N if M is None else M
        self.F = field(self.M)
        self.nvars = nvars
        self.one = RatFun(LaurentPoly.const(self.F, nvars, 1))
        self.zero = RatFun(LaurentPoly(self.F, nvars))

    def _tag(self):
        return f"vars={self.nvars}, M={self.M}"

    def __eq__(self, other):
        return isinstance(other, SymbolicRing) and (other.root, other.M, other.nvars) == (self.root, self.M, self.nvars)

    def __hash__(self):
        return hash(("sym", self.root, self.M, self.nvars))

    def __call__(self, x):
        if isinstance(x, RatFun):
            return x
        if isinstance(x, LaurentPoly):
            return RatFun(x)
        return RatFun(LaurentPoly.const(self.F, self.nvars, x))

    def var(self, i):
        return RatFun(LaurentPoly.var(self.F, self.nvars, i))

    def color(self, i):
        """The symbolic color c_i, whose A-power is the variable u_i."""
        return Aff.var(i)

    def apow(self, x):
        if not isinstance(x, Aff):
            x = Aff({}, x)
        exps = [0] * self.nvars
        for i, a in x.coef.items():
            if a.denominator != 1:
                raise NotRepresentable(f"A^({x}) is not a Laurent monomial in u")
            exps[i] = int(a)
        c = _exact_apow(self.M, self.root.N, self.root.kprime, x.const)
        return RatFun(LaurentPoly.monomial(self.F, self.nvars, exps, c))

    def is_zero(self, x, scale=None):
        return x.is_zero()

    def to_complex(self, x, point):
        return complex(x.evaluate([complex(p) for p in point]))


class ApproxRing(_Ring):
    """Complex doubles with a relative zero test."""

    mode = "approx"

    def __init__(self, root, tol=1e-9):
        if tol <= 0:
            raise ValueError("tolerance must be positive")
        self.root = root
        self.tol = tol
        self.one = 1 + 0j
        self.zero = 0j

    def _tag(self):
        return f"tol={self.tol}"

    def __eq__(self, other):
        return isinstance(other, ApproxRing) and other.root == self.root and other.tol == self.tol

    def __hash__(self):
        return hash(("approx", self.root, self.tol))

    def __call__(self, x):
        if isinstance(x, Cyc):
            raise ModeMismatch("exact value passed to an approximate ring")
        return complex(x)

    def apow(self, x):
        if isinstance(x, Aff):
            if x.coef:
                raise NotRepresentable("symbolic exponent in an approximate ring")
            x = x.const
        return cmath.exp(2j * cmath.pi * self.root.kprime * complex(x) / self.root.N)

    def is_zero(self, x, scale=1.0):
        return abs(x) <= self.tol * (1 + scale)

    def to_complex(self, x):
        return complex(x)


# ---------------------------------------------------------------- q-arithmetic

def _range_length(a, b, N):
    d = as_integer(a - b)
    if d is None:
        raise ValueError(f"{a} - {b} is not an integer")
    if not 0 <= d <= N - 1:
        raise ValueError(f"range length {d} outside 0..{N-1}")
    return d


def brace(ring, z):
    """{z} = q^z - q^{-z}."""
    return ring.brace(z)


def qnum(ring, z):
    """[z] = {z}/{1}."""
    return ring.brace(z) / ring.brace(1)


def brace_fac(ring, n):
    if n < 0:
        raise ValueError("negative factorial")
    r = ring.one
    for j in range(1, n + 1):
        r = r * ring.brace(j)
    return r


def qfac(ring, n):
    r = ring.one
    for j in range(1, n + 1):
        r = r * qnum(ring, j)
    return r


def brace_range(ring, a, b):
    """{a, b} = {a}{a-1}...{b+1}; a - b in 0..N-1."""
    d = _range_length(a, b, ring.root.N)
    r = ring.one
    for j in range(d):
        r = r * ring.brace(a - j)
    return r


def qbinom(ring, a, b):
    """{a, b} / {a-b}!."""
    d = _range_length(a, b, ring.root.N)
    return brace_range(ring, a, b) / brace_fac(ring, d)
