"""Sparse matrices over the scalar rings, plus exact elimination."""

import numpy as np


class Mat:
    """rows x cols matrix stored as {row: {col: value}} with no zeros kept."""

    __slots__ = ("rows", "cols", "ring", "d")

    def __init__(self, ring, rows, cols, entries=None):
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self.d = {}
        if entries:
            for (i, j), v in entries.items():
                self[i, j] = v

    @classmethod
    def identity(cls, ring, n):
        m = cls(ring, n, n)
        for i in range(n):
            m.d[i] = {i: ring.one}
        return m

    @classmethod
    def diag(cls, ring, values):
        m = cls(ring, len(values), len(values))
        for i, v in enumerate(values):
            m[i, i] = v
        return m

    def _nz(self, v):
        if isinstance(v, complex):
            return v != 0
        return not v.is_zero()

    def __setitem__(self, ij, v):
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError((i, j))
        if self._nz(v):
            self.d.setdefault(i, {})[j] = v
        else:
            r = self.d.get(i)
            if r is not None:
                r.pop(j, None)
                if not r:
                    del self.d[i]

    def __getitem__(self, ij):
        i, j = ij
        return self.d.get(i, {}).get(j, self.ring.zero)

    def items(self):
        for i, r in self.d.items():
            for j, v in r.items():
                yield (i, j), v

    def nnz(self):
        return sum(len(r) for r in self.d.values())

    def copy(self):
        m = Mat(self.ring, self.rows, self.cols)
        m.d = {i: dict(r) for i, r in self.d.items()}
        return m

    def __add__(self, other):
        self._same_shape(other)
        m = self.copy()
        for (i, j), v in other.items():
            m[i, j] = m[i, j] + v
        return m

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, s):
        m = Mat(self.ring, self.rows, self.cols)
        for (i, j), v in self.items():
            m[i, j] = v * s
        return m

    def _same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"cannot compose {self.shape} @ {other.shape}")
        m = Mat(self.ring, self.rows, other.cols)
        od = other.d
        for i, r in self.d.items():
            acc = {}
            for k, a in r.items():
                ok = od.get(k)
                if not ok:
                    continue
                for j, b in ok.items():
                    p = a * b
                    s = acc.get(j)
                    acc[j] = p if s is None else s + p
            row = {j: v for j, v in acc.items() if self._nz(v)}
            if row:
                m.d[i] = row
        return m

    def T(self):
        m = Mat(self.ring, self.cols, self.rows)
        for (i, j), v in self.items():
            m.d.setdefault(j, {})[i] = v
        return m

    def kron(self, other):
        m = Mat(self.ring, self.rows * other.rows, self.cols * other.cols)
        for (i, j), a in self.items():
            for (k, l), b in other.items():
                m[i * other.rows + k, j * other.cols + l] = a * b
        return m

    def apply(self, vec):
        """Matrix times a sparse vector {index: value}."""
        out = {}
        for i, r in self.d.items():
            acc = None
            for j, a in r.items():
                b = vec.get(j)
                if b is None:
                    continue
                acc = a * b if acc is None else acc + a * b
            if acc is not None and self._nz(acc):
                out[i] = acc
        return out

    def is_zero(self):
        if not self.d:
            return True
        if self.ring.mode == "approx":
            return all(abs(v) <= self.ring.tol for _, v in self.items())
        return False

    def max_abs(self):
        return max((abs(complex(v)) for _, v in self.items()), default=0.0)

    def equals(self, other, rel=None):
        """Exact equality, or relative closeness in approx mode."""
        self._same_shape(other)
        diff = self - other
        if self.ring.mode != "approx":
            return not diff.d
        scale = max(self.max_abs(), other.max_abs(), 1.0)
        tol = self.ring.tol if rel is None else rel
        return diff.max_abs() <= tol * scale

    def is_scalar(self):
        """(True, s) if the matrix is s * identity."""
        if self.rows != self.cols:
            return False, None
        s = self[0, 0]
        return self.equals(Mat.identity(self.ring, self.rows).scale(s)), s

    def to_dense(self):
        return [[self[i, j] for j in range(self.cols)] for i in range(self.rows)]

    def to_numpy(self, point=None):
        a = np.zeros((self.rows, self.cols), dtype=complex)
        for (i, j), v in self.items():
            a[i, j] = complex(v) if point is None else complex(v.evaluate(point))
        return a

    def __repr__(self):
        return f"Mat({self.rows}x{self.cols}, nnz={self.nnz()})"


def compose(*ms):
    out = ms[0]
    for m in ms[1:]:
        out = out @ m
    return out


def rref(ring, rows, ncols):
    """Row-reduce a list of sparse rows ({col: value}); returns (rows, pivots)."""
    rows = [dict(r) for r in rows if r]
    pivots = []
    out = []
    for col in range(ncols):
        piv = None
        for idx, r in enumerate(rows):
            v = r.get(col)
            if v is not None and not ring.is_zero(v):
                piv = idx
                break
        if piv is None:
            continue
        r = rows.pop(piv)
        inv = ring.one / r[col]
        r = {j: v * inv for j, v in r.items()}
        new_rows = []
        for s in rows:
            f = s.get(col)
            if f is not None:
                s = dict(s)
                for j, v in r.items():
                    t = s.get(j)
                    t = -(f * v) if t is None else t - f * v
                    if ring.is_zero(t):
                        s.pop(j, None)
                    else:
                        s[j] = t
            if s:
                new_rows.append(s)
        rows = new_rows
        for k, s in enumerate(out):
            f = s.get(col)
            if f is not None:
                s = dict(s)
                for j, v in r.items():
                    t = s.get(j)
                    t = -(f * v) if t is None else t - f * v
                    if ring.is_zero(t):
                        s.pop(j, None)
                    else:
                        s[j] = t
                out[k] = s
        out.append(r)
        pivots.append(col)
    return out, pivots


def rank(m):
    rows = [m.d[i] for i in sorted(m.d)]
    _, piv = rref(m.ring, rows, m.cols)
    return len(piv)


def nullspace(m):
    """Basis of the kernel of m as sparse column vectors."""
    rows = [m.d[i] for i in sorted(m.d)]
    red, piv = rref(m.ring, rows, m.cols)
    pivset = set(piv)
    basis = []
    for free in range(m.cols):
        if free in pivset:
            continue
        v = {free: m.ring.one}
        for r, p in zip(red, piv):
            c = r.get(free)
            if c is not None:
                v[p] = -c
        basis.append(v)
    return basis


def inverse(m):
    """Inverse of a square matrix by elimination on [m | I]."""
    n = m.rows
    if m.cols != n:
        raise ValueError("inverse of a non-square matrix")
    rows = []
    for i in range(n):
        r = dict(m.d.get(i, {}))
        r[n + i] = m.ring.one
        rows.append(r)
    red, piv = rref(m.ring, rows, 2 * n)
    if piv[:n] != list(range(n)) or len(piv) < n or any(p >= n for p in piv[:n]):
        raise ZeroDivisionError("singular matrix")
    out = Mat(m.ring, n, n)
    for r, p in zip(red, piv):
        for j, v in r.items():
            if j >= n:
                out[p, j - n] = v
    return out
