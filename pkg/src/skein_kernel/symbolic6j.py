"""6j-symbols as rational functions of three formal variables.

The variables X1, X2, X3 stand for A^a, A^b, A^g (A^c = q^{c/2}) of the
three colors.  Every coefficient of the calculus is a Laurent polynomial or
a rational function in these, so the whole closed formula can be written
once with formal variables and specialized afterwards.  Distinct
valuations in X1 of the two summands would prove the sum is not
identically zero; the certificate reports whether they are distinct and
witnesses R != 0 independently through its exact numerator.
"""

from fractions import Fraction

from .laurent import INF
from .scalars import SymbolicRing, qbinom


class SixjFunction:
    """R = (F1 + F2) / D_{0,m,0} together with the summands."""

    def __init__(self, ring, m, e1, e2, F1, F2, norm, sign):
        self.ring = ring
        self.m = m
        self.e1 = e1
        self.e2 = e2
        self.F1 = F1
        self.F2 = F2
        self.norm = norm
        self.sign = sign

    @property
    def theta1(self):
        return (self.e1 - 1) // 2

    @property
    def R(self):
        r = (self.F1 + self.F2) / self.norm
        return -r if self.sign < 0 else r

    def valuations(self, var=0):
        return self.F1.valuation(var), self.F2.valuation(var)

    @property
    def boundary(self):
        """Inner support index outside 0..N-1: R vanishes identically."""
        mp = self.m + (self.e1 + self.e2) // 2
        return not 0 <= mp <= self.ring.root.N - 1

    def certificate(self):
        """Valuation table in X1 next to the values the argument predicts.

        ``matches`` compares with the predicted valuations; ``distinct`` is
        the valuation proof of R != 0; ``R_nonzero`` is decided separately
        from the exact numerator of R.
        """
        N = self.ring.root.N
        t1 = self.theta1
        v1, v2 = self.valuations(0)
        expected = (7 * t1 - 2 * N + 5, 7 * t1 - 2 * N + 10)
        return {
            "m": self.m, "eps1": self.e1, "eps2": self.e2, "theta1": t1,
            "v_F1": _jsonable(v1), "v_F2": _jsonable(v2),
            "expected_v_F1": expected[0], "expected_v_F2": expected[1],
            "matches": (v1, v2) == expected,
            "distinct": v1 != v2,
            "boundary": self.boundary,
            "R_nonzero": not self.R.num.is_zero(),
        }

    def evaluate(self, point):
        return self.R.evaluate(point)


def _jsonable(v):
    return None if v == INF else int(v)


class _Calc:
    """The formal coefficient functions, with X arguments as RatFun values."""

    def __init__(self, ring):
        self.ring = ring
        self.N = ring.root.N
        self.q = ring.qpow(1)

    def qp(self, x):
        return self.ring.qpow(Fraction(x))

    def kk(self, n, X):
        r = X ** -1 * self.qp(Fraction(n * (n - 1), 2))
        for l in range(1, n + 1):
            r = r * (X ** 2 * self.qp(-l) - X ** -2 * self.qp(l))
        return r

    def f(self, a, b, X):
        if b < 0:
            raise ValueError("negative length")
        r = self.ring.one
        for l in range(1, b + 1):
            r = r * (X ** 2 * self.qp(a - l) - X ** -2 * self.qp(l - a))
            r = r / self.ring.brace(l)
        return r

    def binom(self, a, b):
        if b < 0 or b > a:
            return self.ring.zero
        return qbinom(self.ring, a, b)

    def CC(self, i, j, n, m, X1, X2, X3):
        N = self.N
        if not all(0 <= t <= N - 1 for t in (i, j, n, m)) or i + j - n != m:
            return self.ring.zero
        pre = X1 ** -i * X2 ** j * self.qp(Fraction(i * i - j * j, 2))
        pre = pre * self.f(0, N - 1 - m, X3) / self.f(0, n, X3)
        total = self.ring.zero
        for z in range(n + 1):
            w = n - z
            t = self.binom(i + j - n, i - z)
            if t.is_zero():
                continue
            t = t * self.qp(Fraction(-n * (2 * z - n), 2)) * X3 ** (2 * z - n)
            t = t * self.f(z - i, z, X1) * self.f(w - j, w, X2)
            total = total - t if z % 2 else total + t
        return pre * total

    def DD(self, i, j, n, m, X1, X2, X3):
        C = self.CC(i, j, n, m, X1, X2, X3)
        if C.is_zero():
            return C
        return self.kk(n, X3) / (self.kk(i, X1) * self.kk(j, X2)) * C

    def EE(self, i, j, n, m, X1, X2, X3):
        N = self.N
        C = self.CC(N - 1 - j, N - 1 - i, N - 1 - n, N - 1 - m, X2 ** -1, X1 ** -1, X3 ** -1)
        if C.is_zero():
            return C
        return self.kk(i, X1) * self.kk(j, X2) / self.kk(n, X3) * C


def sixj_symbolic(root, m, e1, e2, M=None, literal=False):
    """The rational function of the closed 6j formula for one (m, e1, e2).

    The S_1 edge carries the integer color N-2, whose variable is the
    constant q^{-1}; kk_{N-2} and kk_{N-1} vanish there.  That normalizer
    sits in the denominator of the D factor and the numerator of the E
    factor, so it is cancelled before specializing.  Unless ``literal`` is set the result is
    multiplied by (-1)^{m'} to match the equivariant matrices.
    """
    N = root.N
    if e1 not in (1, -1) or e2 not in (1, -1):
        raise ValueError("epsilons must be +1 or -1")
    if not 0 <= m <= N - 1:
        raise ValueError(f"m must lie in 0..{N-1}")
    ring = SymbolicRing(root, 3, M=M)
    c = _Calc(ring)
    X1, X2, X3 = ring.var(0), ring.var(1), ring.var(2)
    Ae1, Ae2 = ring.apow(e1), ring.apow(e2)
    Y1, Y2 = X1 * Ae1, X2 * Ae2
    qinv = c.qp(-1)
    t1 = (e1 - 1) // 2
    t2 = m + (e2 + 1) // 2
    mp = m + (e1 + e2) // 2
    m_left = (2 * N - 3 - e1) // 2      # support index of (a, N-2; a+e1)
    m_right = (2 * N - 3 + e2) // 2     # support index of (N-2, b+e2; b)
    F = []
    for n in (0, 1):
        i, j, mid = t1 + n, t2 - n, N - 2 + n
        if not (0 <= i < N and 0 <= j < N and 0 <= mp < N):
            F.append(ring.zero)
            continue
        top = c.DD(i, j, 0, mp, Y1, Y2, X3)
        left = c.kk(i, Y1) / c.kk(0, X1) * c.CC(0, mid, i, m_left, X1, qinv, Y1)
        right = c.kk(j, Y2) / c.kk(m, X2) * c.CC(
            N - 1 - j, N - 1 - mid, N - 1 - m, N - 1 - m_right, Y2 ** -1, qinv ** -1, X2 ** -1)
        # kk_mid(q^{-1}) = 0 would divide the left factor and multiply the
        # right one; it is left out of both
        F.append(top * left * right)
    norm = c.DD(0, m, 0, m, X1, X2, X3)
    sign = 1 if literal or mp % 2 == 0 else -1
    return SixjFunction(ring, m, e1, e2, F[0], F[1], norm, sign)


def valuation_table(root):
    """Certificates for every (m, e1, e2)."""
    out = []
    for m in range(root.N):
        for e1 in (1, -1):
            for e2 in (1, -1):
                out.append(sixj_symbolic(root, m, e1, e2).certificate())
    return out
