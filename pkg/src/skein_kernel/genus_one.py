"""Genus one: the quantum torus, its involution and its N-dimensional reps.

Elements of the quantum torus XY = qYX are stored in the normal order
X^a Y^b.  The skein algebra of the torus sits inside as the part fixed by
Theta (X -> X^{-1}, Y -> Y^{-1}); the two simple closed curves lambda, mu
go to X + X^{-1} and Y + Y^{-1}.
"""

from fractions import Fraction
import random

from .linalg import Mat, rref
from .scalars import ExactRing, RootData


class QTorus:
    """sum c_{a,b} X^a Y^b over a scalar ring; q = ring.qpow(1)."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms=None):
        self.ring = ring
        self.terms = {}
        for k, v in (terms or {}).items():
            self._add(k, v)

    def _add(self, k, v):
        s = self.terms.get(k)
        s = v if s is None else s + v
        if self.ring.is_zero(s, 1.0):
            self.terms.pop(k, None)
        else:
            self.terms[k] = s

    @classmethod
    def X(cls, ring, a=1):
        return cls(ring, {(a, 0): ring.one})

    @classmethod
    def Y(cls, ring, b=1):
        return cls(ring, {(0, b): ring.one})

    @classmethod
    def const(cls, ring, c):
        return cls(ring, {(0, 0): ring.one * c})

    def __add__(self, other):
        other = self._coerce(other)
        out = QTorus(self.ring, self.terms)
        for k, v in other.terms.items():
            out._add(k, v)
        return out

    __radd__ = __add__

    def __neg__(self):
        return QTorus(self.ring, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def _coerce(self, other):
        if isinstance(other, QTorus):
            return other
        return QTorus.const(self.ring, other)

    def __mul__(self, other):
        if not isinstance(other, QTorus):
            return QTorus(self.ring, {k: v * other for k, v in self.terms.items()})
        out = QTorus(self.ring)
        for (a, b), u in self.terms.items():
            for (c, d), v in other.terms.items():
                # Y^b X^c = q^{-bc} X^c Y^b
                out._add((a + c, b + d), u * v * self.ring.qpow(-b * c))
        return out

    def __rmul__(self, other):
        return QTorus(self.ring, {k: other * v for k, v in self.terms.items()})

    def __pow__(self, n):
        out = QTorus.const(self.ring, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        diff = self - other
        return not diff.terms

    def __repr__(self):
        return " + ".join(f"({v})X^{a}Y^{b}" for (a, b), v in sorted(self.terms.items())) or "0"


def qtorus_mul(u, v):
    return u * v


def theta(u):
    """The involution X -> X^{-1}, Y -> Y^{-1}; X^a Y^b -> X^{-a} Y^{-b}."""
    return QTorus(u.ring, {(-a, -b): v for (a, b), v in u.terms.items()})


def theta_plus_part(u):
    return (u + theta(u)) * Fraction(1, 2)


def theta_minus_part(u):
    return (u - theta(u)) * Fraction(1, 2)


def fgs_lambda(ring):
    return QTorus(ring, {(1, 0): ring.one, (-1, 0): ring.one})


def fgs_mu(ring):
    return QTorus(ring, {(0, 1): ring.one, (0, -1): ring.one})


def fgs(ring, word):
    """Image of a noncommutative polynomial in lambda, mu.

    ``word`` is a string over {"l", "m"} (a monomial) or a list of
    (coefficient, string) pairs.
    """
    if isinstance(word, str):
        word = [(1, word)]
    gens = {"l": fgs_lambda(ring), "m": fgs_mu(ring)}
    out = QTorus(ring)
    for c, w in word:
        t = QTorus.const(ring, c)
        for ch in w:
            if ch not in gens:
                raise ValueError(f"unknown generator {ch!r}")
            t = t * gens[ch]
        out = out + t
    return out


def chebyshev_poly(x, n, one):
    """T_n(x) for anything with + - * (T_0 = 2, T_1 = x)."""
    t0, t1 = one * 2, x
    if n == 0:
        return t0
    for _ in range(n - 1):
        t0, t1 = t1, x * t1 - t0
    return t1


# ------------------------------------------------------------------ representations

def angle_ring(root, *angles):
    """Exact ring containing q and exp(2 i pi r) for the given rational r."""
    d = 1
    for r in angles:
        r = Fraction(r)
        d = d * r.denominator // _gcd(d, r.denominator)
    return ExactRing(root, root.N * d)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def unit(ring, r):
    """exp(2 i pi r) in the ring."""
    if ring.mode == "exact":
        return ring.F.root(Fraction(r), 1)
    import cmath
    return cmath.exp(2j * cmath.pi * complex(r))


def toroidal_UW(ring):
    """U e_i = q^i e_i and W e_i = e_{i+1} on C^N."""
    N = ring.root.N
    U = Mat.diag(ring, [ring.qpow(i) for i in range(N)])
    W = Mat(ring, N, N)
    for i in range(N):
        W[(i + 1) % N, i] = ring.one
    return U, W


def _mat_power(M, k):
    n = M.rows
    if k < 0:
        # U and W are unitary permutation/diagonal matrices: use the period
        k %= M.ring.root.N
    out = Mat.identity(M.ring, n)
    for _ in range(k):
        out = out @ M
    return out


def rep_rxy(x, y, u):
    """Matrix of u under X -> xU, Y -> yW."""
    ring = u.ring
    if ring.is_zero(x, 1.0) or ring.is_zero(y, 1.0):
        raise ValueError("x and y must be nonzero")
    N = ring.root.N
    U, W = toroidal_UW(ring)
    out = Mat(ring, N, N)
    for (a, b), c in u.terms.items():
        s = c * (x ** a if a >= 0 else (1 / x) ** (-a)) * (y ** b if b >= 0 else (1 / y) ** (-b))
        out = out + (_mat_power(U, a) @ _mat_power(W, b)).scale(s)
    return out


def theta_matrix(ring):
    """theta(e_i) = e_{-i}."""
    N = ring.root.N
    T = Mat(ring, N, N)
    for i in range(N):
        T[(-i) % N, i] = ring.one
    return T


def half_basis(ring, sign):
    """Columns v_i = e_i + sign e_{-i}: i = 0..(N-1)/2 for +, 1..(N-1)/2 for -."""
    N = ring.root.N
    idx = range(0, (N + 1) // 2) if sign > 0 else range(1, (N + 1) // 2)
    P = Mat(ring, N, len(idx))
    for k, i in enumerate(idx):
        P[i % N, k] = P[i % N, k] + ring.one
        P[(-i) % N, k] = P[(-i) % N, k] + ring.one * sign
    return P, list(idx)


def restrict(M, P, idx):
    """Matrix of M on the span of the columns of P (which must be invariant)."""
    ring = M.ring
    N = M.rows
    img = M @ P
    out = Mat(ring, P.cols, P.cols)
    for k in range(P.cols):
        for r, i in enumerate(idx):
            # the coefficient of v_i is the e_i coordinate, halved for v_0
            c = img[i % N, k]
            out[r, k] = c / 2 if i == 0 else c
    if not (P @ out).equals(img):
        raise ValueError("subspace is not invariant")
    return out


def pi_pm(ring, e1, e2, sign):
    """(lambda, mu) matrices of pi^{sign}_{e1, e2} on V^{sign}."""
    if e1 not in (1, -1) or e2 not in (1, -1):
        raise ValueError("epsilons must be +1 or -1")
    P, idx = half_basis(ring, sign)
    x, y = ring.one * e1, ring.one * e2
    lam = restrict(rep_rxy(x, y, fgs_lambda(ring)), P, idx)
    mu = restrict(rep_rxy(x, y, fgs_mu(ring)), P, idx)
    return lam, mu


def algebra_dimension(mats):
    """Exact dimension of the unital algebra generated by square matrices."""
    ring = mats[0].ring
    n = mats[0].rows

    def vec(M):
        return {i * n + j: v for (i, j), v in M.items()}

    def reduce(v, basis):
        v = dict(v)
        for r, p in basis:
            f = v.get(p)
            if f is None:
                continue
            for j, w in r.items():
                t = v.get(j)
                t = -(f * w) if t is None else t - f * w
                if ring.is_zero(t, 1.0):
                    v.pop(j, None)
                else:
                    v[j] = t
        return v

    basis = []          # (row normalized at pivot, pivot)
    elems = []
    frontier = [Mat.identity(ring, n)]
    while frontier:
        nxt = []
        for M in frontier:
            v = reduce(vec(M), basis)
            if not v:
                continue
            p = min(v)
            inv = ring.one / v[p]
            r = {j: w * inv for j, w in v.items()}
            # keep earlier rows reduced at the new pivot
            basis = [(_elim(b, r, p, ring), q) for b, q in basis]
            basis.append((r, p))
            elems.append(M)
            nxt.extend(G @ M for G in mats)
        frontier = nxt
    return len(basis)


def _elim(b, r, p, ring):
    f = b.get(p)
    if f is None:
        return b
    b = dict(b)
    for j, w in r.items():
        t = b.get(j)
        t = -(f * w) if t is None else t - f * w
        if ring.is_zero(t, 1.0):
            b.pop(j, None)
        else:
            b[j] = t
    return b


def span_dimension(mats):
    """Dimension of the linear span of the given matrices."""
    ring = mats[0].ring
    n = mats[0].cols
    rows = [{i * n + j: v for (i, j), v in M.items()} for M in mats]
    _, piv = rref(ring, [r for r in rows if r], mats[0].rows * n)
    return len(piv)


def theta_plus_basis_images(ring, x, y):
    """r_{x,y}(X^a Y^b + X^{-a} Y^{-b}) for a, b in 0..N-1."""
    N = ring.root.N
    out = []
    for a in range(N):
        for b in range(N):
            z = QTorus(ring, {(a, b): ring.one}) + QTorus(ring, {(-a, -b): ring.one})
            out.append(rep_rxy(x, y, z))
    return out


def classify(ring, x, y):
    """Which of the two families the genus-one representation at (x, y) falls in."""
    N = ring.root.N
    if ring.is_zero(x, 1.0) or ring.is_zero(y, 1.0):
        raise ValueError("x and y must be nonzero")
    xN, yN = x ** N, y ** N
    lam = rep_rxy(x, y, fgs_lambda(ring))
    mu = rep_rxy(x, y, fgs_mu(ring))
    corner = [(s1, s2) for s1 in (1, -1) for s2 in (1, -1)
              if ring.is_zero(xN - s1, 1.0) and ring.is_zero(yN - s2, 1.0)]
    if not corner:
        dim = algebra_dimension([lam, mu])
        return {"family": "generic", "dimension": N,
                "shadow": (xN + 1 / xN, yN + 1 / yN),
                "burnside_dimension": dim, "irreducible": dim == N * N}
    e1, e2 = corner[0]
    if not (ring.is_zero(x - e1, 1.0) and ring.is_zero(y - e2, 1.0)):
        # x^N = +-1 but x != +-1: r_{x,y} o fgs is conjugate to the corner case
        dim = algebra_dimension([lam, mu])
        return {"family": "conjugate-corner", "dimension": N, "burnside_dimension": dim,
                "irreducible": dim == N * N}
    parts = {}
    for sign, name in ((1, "plus"), (-1, "minus")):
        L, M = pi_pm(ring, e1, e2, sign)
        d = L.rows
        bd = algebra_dimension([L, M]) if d else 0
        parts[name] = {"dimension": d, "burnside_dimension": bd, "irreducible": bd == d * d}
    image = span_dimension(theta_plus_basis_images(ring, x, y))
    generated = algebra_dimension([lam, mu])
    return {"family": "central", "eps": (e1, e2), "parts": parts,
            "image_dimension": image, "generated_dimension": generated,
            "expected_image_dimension": ((N + 1) ** 2 + (N - 1) ** 2) // 4}


def random_angles(rng=None, count=10, dens=(7, 11, 13, 17)):
    rng = rng or random.Random(0)
    out = []
    while len(out) < count:
        d = rng.choice(dens)
        out.append((Fraction(rng.randrange(1, d), d), Fraction(rng.randrange(1, d), d)))
    return out
