"""Skein representations of closed surfaces on graph-coloring bases.

A surface of genus g is the boundary of a thickened trivalent graph G.
Basis vectors are colorings of the edges: each edge carries one of N lifts
of its boundary value omega, all congruent to omega mod 2 and lying in
(-N, N].  The lift label j in Z/N is the residue of c - omega mod N, so a
shift of an edge color by +-1 followed by the transparency wrap c -> c -+ N
is j -> j +- 1.

Pants curves act diagonally.  A transverse curve beta running along a cycle
of G acts by fusing an S_1 strand into every edge it follows and sliding the
resulting S_1 triangles through every vertex it passes, one 6j-symbol per
vertex.
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from itertools import product
import math
import random

import numpy as np

from .graph_calculus import (DegenerateSystem, Inadmissible, normalize_triple,
                             sixj_closed, sixj_oracle, support_index)
from .linalg import Mat
from .scalars import ApproxRing, ExactRing, RootData, qbinom


class FixtureError(ValueError):
    pass


class OmegaError(ValueError):
    pass


# ------------------------------------------------------------------ graphs

@dataclass
class TriGraph:
    vertices: list
    edges: dict                      # id -> (src, dst), in enumeration order
    rotation: dict = dc_field(default_factory=dict)

    @property
    def edge_ids(self):
        return list(self.edges)

    def incident(self, v):
        """[(edge, +1 if it points into v else -1)], one entry per half-edge."""
        out = []
        for e, (s, t) in self.edges.items():
            if t == v:
                out.append((e, 1))
            if s == v:
                out.append((e, -1))
        return out

    def components(self, skip=None):
        adj = {v: set() for v in self.vertices}
        for e, (s, t) in self.edges.items():
            if e != skip:
                adj[s].add(t)
                adj[t].add(s)
        seen, count = set(), 0
        for v in self.vertices:
            if v in seen:
                continue
            count += 1
            stack = [v]
            while stack:
                w = stack.pop()
                if w not in seen:
                    seen.add(w)
                    stack.extend(adj[w] - seen)
        return count

    @property
    def betti(self):
        return len(self.edges) - len(self.vertices) + self.components()

    def separating_edges(self):
        return [e for e in self.edges if self.components(skip=e) > 1]

    def validate(self):
        for v in self.vertices:
            if len(self.incident(v)) != 3:
                raise FixtureError(f"vertex {v} is not trivalent")
        for e, (s, t) in self.edges.items():
            if s == t:
                raise FixtureError(f"edge {e} is a loop")
            if s not in self.vertices or t not in self.vertices:
                raise FixtureError(f"edge {e} has an unknown endpoint")
        if self.components() != 1:
            raise FixtureError("graph is not connected")
        if self.separating_edges():
            raise FixtureError(f"separating edges {self.separating_edges()}")


@dataclass
class BetaCurve:
    """A curve following a cycle of G.

    ``crossings`` lists (edge, sign) in the order the curve follows them;
    sign +1 means the edge is run from its source to its target.
    """
    id: str
    crossings: list
    flanks: list = None

    def cycle(self, graph):
        return {e: s for e, s in self.crossings}

    def walk(self, graph):
        """[(vertex, arriving edge, leaving edge, third edge)] along the curve."""
        cr = self.crossings
        if not cr:
            raise FixtureError(f"{self.id}: no crossed edges")
        if len({e for e, _ in cr}) != len(cr):
            raise FixtureError(f"{self.id}: an edge is crossed twice")
        steps = []
        for k, (e, s) in enumerate(cr):
            if s not in (1, -1):
                raise FixtureError(f"{self.id}: sign of {e} must be +-1")
            nxt, s2 = cr[(k + 1) % len(cr)]
            src, dst = graph.edges[e]
            head = dst if s > 0 else src
            src2, dst2 = graph.edges[nxt]
            tail2 = src2 if s2 > 0 else dst2
            if head != tail2:
                raise FixtureError(f"{self.id}: {e} and {nxt} do not meet")
            others = [f for f, _ in graph.incident(head)]
            for f in (e, nxt):
                others.remove(f)
            steps.append((head, e, nxt, others[0]))
        return steps

    def validate(self, graph):
        steps = self.walk(graph)
        if self.flanks is not None:
            found = sorted(t for *_, t in steps)
            if sorted(self.flanks) != found:
                raise FixtureError(f"{self.id}: flanks {self.flanks} do not match the graph ({found})")
        return steps


@dataclass
class SurfacePreset:
    genus: int
    graph: TriGraph
    beta_curves: list

    @property
    def pants_curves(self):
        return [f"gamma_{e}" for e in self.graph.edge_ids]

    def curve(self, cid):
        for b in self.beta_curves:
            if b.id == cid:
                return b
        raise KeyError(cid)

    def validate(self):
        g = self.graph
        g.validate()
        if len(g.vertices) != 2 * self.genus - 2 or len(g.edges) != 3 * self.genus - 3:
            raise FixtureError("vertex/edge counts do not match the genus")
        if g.betti != self.genus:
            raise FixtureError(f"first Betti number {g.betti} != genus {self.genus}")
        for b in self.beta_curves:
            b.validate(g)
        return self


def preset(g):
    """Built-in graphs for genus 2 (theta) and 3 (doubled ladder)."""
    if g < 2:
        raise ValueError("genus must be at least 2")
    if g == 2:
        graph = TriGraph(["v1", "v2"], {"e1": ("v1", "v2"), "e2": ("v1", "v2"), "e3": ("v1", "v2")})
        betas = [BetaCurve("beta_1", [("e1", 1), ("e2", -1)], ["e3", "e3"]),
                 BetaCurve("beta_2", [("e2", 1), ("e3", -1)], ["e1", "e1"])]
    elif g == 3:
        # doubled pairs A=B and C=D joined by e5 (B -> C) and e6 (D -> A)
        graph = TriGraph(["A", "B", "C", "D"], {
            "e1": ("A", "B"), "e2": ("A", "B"), "e3": ("C", "D"),
            "e4": ("C", "D"), "e5": ("B", "C"), "e6": ("D", "A")})
        betas = [BetaCurve("beta_1", [("e1", 1), ("e2", -1)], ["e5", "e6"]),
                 BetaCurve("beta_2", [("e3", 1), ("e4", -1)], ["e5", "e6"]),
                 BetaCurve("beta_3", [("e1", 1), ("e5", 1), ("e3", 1), ("e6", 1)],
                           ["e2", "e4", "e4", "e2"])]
    else:
        raise ValueError("no built-in graph for genus > 3; load a fixture")
    return SurfacePreset(g, graph, betas).validate()


def preset_from_json(doc):
    """SurfacePreset from the fixture dictionary format."""
    try:
        verts = list(doc["vertices"])
        edges = {e["id"]: (e["src"], e["dst"]) for e in doc["edges"]}
        betas = [BetaCurve(b["id"], [(c["edge"], int(c["sign"])) for c in b["crossings"]],
                           b.get("flanks")) for b in doc.get("beta", [])]
    except (KeyError, TypeError) as exc:
        raise FixtureError(f"malformed fixture: {exc}") from None
    g = len(edges) // 3 + 1
    return SurfacePreset(g, TriGraph(verts, edges, doc.get("rotation", {})), betas).validate()


def preset_to_json(p):
    """Inverse of preset_from_json."""
    g = p.graph
    return {
        "vertices": list(g.vertices),
        "edges": [{"id": e, "src": s, "dst": t} for e, (s, t) in g.edges.items()],
        "rotation": dict(g.rotation),
        "beta": [{"id": b.id, "crossings": [{"edge": e, "sign": sg} for e, sg in b.crossings],
                  "flanks": list(b.flanks or [])} for b in p.beta_curves],
    }


# ------------------------------------------------------------------ omega and basis

def check_omega(p, omega):
    """Normalize omega to {edge: Fraction or complex}; raise if outside the allowed set."""
    edges = p.graph.edge_ids
    if isinstance(omega, dict):
        vals = [omega[e] for e in edges]
    else:
        vals = list(omega)
    if len(vals) != len(edges):
        raise OmegaError(f"expected {len(edges)} values of omega")
    out = {}
    for e, w in zip(edges, vals):
        w = w if isinstance(w, complex) else Fraction(w)
        two = 2 * w
        if isinstance(two, complex):
            if abs(two.imag) < 1e-12 and abs(two.real - round(two.real)) < 1e-12:
                raise OmegaError(f"omega({e}) lies in Z/2")
        elif two.denominator == 1:
            raise OmegaError(f"omega({e}) = {w} lies in Z/2")
        out[e] = w
    for v in p.graph.vertices:
        s = sum(sig * out[e] for e, sig in p.graph.incident(v))
        if isinstance(s, complex):
            bad = abs(s.imag) > 1e-12 or abs(s.real - round(s.real)) > 1e-12
        else:
            bad = s.denominator != 1
        if bad:
            raise OmegaError(f"omega summed at vertex {v} is {s}, not an integer")
    return out


def lift(N, w, j):
    """The color c = w mod 2, c = w + j mod N, with -N < Re c <= N."""
    x = 2 * ((j * pow(2, -1, N)) % N)
    c = w + x
    re = c.real if isinstance(c, complex) else c
    shift = 2 * N * math.floor((N - re) / (2 * N))
    return c + shift


@dataclass
class Basis:
    preset: SurfacePreset
    N: int
    omega: dict
    labels: list

    def __len__(self):
        return len(self.labels)

    def colors(self, label):
        return {e: lift(self.N, self.omega[e], j) for e, j in zip(self.preset.graph.edge_ids, label)}

    def index(self, label):
        # lexicographic order on (Z/N)^E
        i = 0
        for j in label:
            i = i * self.N + j % self.N
        return i


def enumerate_basis(p, omega, N):
    """All N^{3g-3} colorings, ordered lexicographically by lift label."""
    om = check_omega(p, omega)
    labels = list(product(range(N), repeat=len(p.graph.edges)))
    return Basis(p, N, om, labels)


def make_ring(root, omega, mode="exact", tol=1e-11):
    if mode == "approx":
        return ApproxRing(root, tol)
    vals = [w for w in omega.values()]
    if any(isinstance(w, complex) for w in vals):
        raise OmegaError("exact mode needs rational omega")
    return ExactRing.for_colors(root, vals)


# ------------------------------------------------------------------ 6j cache

class CacheMismatch(RuntimeError):
    pass


class SixjCache:
    """Memo for normalized 6j evaluations, with hit counts.

    Values served from the persistent store are recomputed for a random
    subsample (rate ``spot_rate``, and always the first one) and must agree
    exactly, or within the ring tolerance in approx mode.
    """

    def __init__(self, method="closed", store=None, spot_rate=0.05, seed=0):
        import random
        self.method = method
        self.store = store          # optional persistent layer with get/put
        self.memo = {}
        self.hits = 0
        self.misses = 0
        self.store_hits = 0
        self.spot_checks = 0
        self.spot_rate = spot_rate
        self._rng = random.Random(seed)

    def _compute(self, ring, a, b, g, e1, e2):
        fn = sixj_oracle if self.method == "oracle" else sixj_closed
        return fn(ring, a, b, g, e1, e2)

    def __call__(self, ring, a, b, g, e1, e2):
        g, _ = normalize_triple(ring.root, a, b, g)
        key = (ring, a, b, g, e1, e2)
        v = self.memo.get(key)
        if v is not None:
            self.hits += 1
            return v
        if self.store is not None:
            v = self.store.get(ring, a, b, g, e1, e2, self.method)
            if v is not None:
                self.hits += 1
                self.store_hits += 1
                if self.store_hits == 1 or self._rng.random() < self.spot_rate:
                    self.spot_checks += 1
                    fresh = self._compute(ring, a, b, g, e1, e2)
                    if not ring.is_zero(fresh - v):
                        raise CacheMismatch(f"stored 6j value for {(a, b, g, e1, e2)} is stale")
                self.memo[key] = v
                return v
        self.misses += 1
        v = self._compute(ring, a, b, g, e1, e2)
        self.memo[key] = v
        if self.store is not None:
            self.store.put(ring, a, b, g, e1, e2, self.method, v)
        return v


def is_structural_zero(root, a, b, g, e1, e2):
    """True when the inner vertex of the relation leaves the support band.

    Then the S_1 triangle maps into a summand of V_a (x) V_b that does not
    exist, and the 6j-symbol is zero for every value of the colors.
    """
    g, _ = normalize_triple(root, a, b, g)
    m = support_index(root, a, b, g)
    return not 0 <= m + (e1 + e2) // 2 <= root.N - 1


# ------------------------------------------------------------------ operators

@dataclass
class CurveOperator:
    curve: str
    matrix: Mat
    omega: dict
    sign: int = -1
    wraps: int = 0
    zero_entries: list = dc_field(default_factory=list)


GAMMA_CONVENTIONS = ("plain", "skein")


def gamma_eigenvalue(ring, c, convention="plain"):
    """Eigenvalue of a pants curve on a basis vector whose edge has color c.

    "plain": -(e^{2 i pi c/N} + e^{-2 i pi c/N}).
    "skein": -(q^c + q^{-c}), the S_1 loop value around V_{kc}; this is the
    one for which the beta operators satisfy the skein relations.
    """
    if convention not in GAMMA_CONVENTIONS:
        raise ValueError(f"unknown gamma convention {convention!r}")
    N = ring.root.N
    num = Fraction(c) * (ring.root.k if convention == "skein" else 1)
    if ring.mode == "exact":
        z = ring.F.root(num, N)
        return -(z + z.inverse())
    import cmath
    z = cmath.exp(2j * cmath.pi * complex(num) / N)
    return -(z + 1 / z)


def gamma_operator(e, basis, ring, convention="plain"):
    vals = [gamma_eigenvalue(ring, basis.colors(l)[e], convention) for l in basis.labels]
    return CurveOperator(f"gamma_{e}", Mat.diag(ring, vals), basis.omega)


def _in_color(graph, v, e, colors):
    s, t = graph.edges[e]
    return colors[e] if t == v else -colors[e]


def _into(graph, v, e):
    return 1 if graph.edges[e][1] == v else -1


@lru_cache(maxsize=65536)
def fusion_coefficient(ring, c):
    """1 / qbinom(c + N - 1, c): the weight of V_c in the fusion with S_1."""
    return ring.one / qbinom(ring, c + ring.root.N - 1, c)


def beta_operator(beta, basis, ring, sixj=None):
    """Matrix of the transverse curve beta.

    Column c holds x_eta on c + eta for every sign vector eta on the crossed
    edges: the product over crossed edges of the inverse fusion
    coefficients, the product over visited vertices of one 6j-symbol, and
    the curve sign -1.
    """
    sixj = sixj or SixjCache()
    graph = basis.preset.graph
    N = basis.N
    steps = beta.walk(graph)
    crossed = [e for e, _ in beta.crossings]
    pos = {e: k for k, e in enumerate(graph.edge_ids)}
    M = Mat(ring, len(basis), len(basis))
    zeros = []
    for col, label in enumerate(basis.labels):
        old = basis.colors(label)
        for eta in product((1, -1), repeat=len(crossed)):
            shift = dict(zip(crossed, eta))
            new = {e: old[e] + shift.get(e, 0) for e in old}
            x = -ring.one
            for e in crossed:
                x = x * fusion_coefficient(ring, new[e])
            for v, arr, lea, third in steps:
                a = _in_color(graph, v, arr, new)
                b = _in_color(graph, v, lea, new)
                g = -_in_color(graph, v, third, new)
                e1 = -_into(graph, v, arr) * shift[arr]
                e2 = -_into(graph, v, lea) * shift[lea]
                try:
                    s = sixj(ring, a, b, g, e1, e2)
                except DegenerateSystem as exc:
                    raise DegenerateSystem(f"{beta.id}: 6j at ({a}, {b}, {g}; {e1}, {e2}): {exc}") from None
                x = x * s
            target = list(label)
            for e, h in shift.items():
                target[pos[e]] = (target[pos[e]] + h) % N
            row = basis.index(target)
            if ring.is_zero(x, 1.0):
                zeros.append((col, row))
                continue
            M[row, col] = M[row, col] + x
    return CurveOperator(beta.id, M, basis.omega, wraps=len(basis) * 2 ** len(crossed),
                         zero_entries=zeros)


def all_operators(basis, ring, sixj=None, convention="plain"):
    sixj = sixj or SixjCache()
    ops = [gamma_operator(e, basis, ring, convention) for e in basis.preset.graph.edge_ids]
    ops += [beta_operator(b, basis, ring, sixj) for b in basis.preset.beta_curves]
    return ops


# ------------------------------------------------------------------ Chebyshev and shadows

def chebyshev_of(X, n=None):
    """T_n(X) by T_{k+2} = X T_{k+1} - T_k, T_0 = 2, T_1 = X; n defaults to N."""
    mat = X.matrix if isinstance(X, CurveOperator) else X
    n = mat.ring.root.N if n is None else n
    I = Mat.identity(mat.ring, mat.rows)
    t0, t1 = I.scale(2), mat
    if n == 0:
        return t0
    for _ in range(n - 1):
        t0, t1 = t1, mat @ t1 - t0
    return t1


@dataclass
class Certificate:
    kind: str
    passed: bool
    payload: dict


def _scalar_deviation(T):
    s = T[0, 0]
    dev = 0.0
    for (i, j), v in T.items():
        d = v - s if i == j else v
        dev = max(dev, abs(complex(d)))
    for i in range(T.rows):
        if i not in T.d or i not in T.d[i]:
            dev = max(dev, abs(complex(s)))
    return s, dev


def shadow_certificate(ops, tol=None):
    """T_N of every operator must be a scalar matrix."""
    results = {}
    ok = True
    for op in ops:
        T = chebyshev_of(op)
        scalar, s = T.is_scalar()
        if T.ring.mode == "approx" and tol is not None:
            s0, dev = _scalar_deviation(T)
            scalar = dev <= tol * max(1.0, T.max_abs())
        s0, dev = _scalar_deviation(T)
        results[op.curve] = {"scalar": bool(scalar), "value": s0, "deviation": dev}
        ok = ok and scalar
    return Certificate("Shadow", ok, results)


def expected_gamma_shadow(ring, w, convention="plain"):
    """T_N of the gamma eigenvalue: -(e^{2 i pi w} + ...), times k for "skein"."""
    num = Fraction(w) * (ring.root.k if convention == "skein" else 1)
    if ring.mode == "exact":
        z = ring.F.root(num, 1)
        return -(z + z.inverse())
    import cmath
    z = cmath.exp(2j * cmath.pi * complex(num))
    return -(z + 1 / z)


def skein_relation_residual(x, y, root):
    """Relative residual of the once-intersecting curve relation.

    For curves x, y meeting once in a one-holed torus, the product-to-sum rule
    forces (q + q^-1) yxy - y^2 x - x y^2 = (q - q^-1)^2 x. Takes numpy arrays.
    """
    import cmath
    import numpy as np
    q = cmath.exp(2j * cmath.pi * root.k / root.N)
    lhs = (q + 1 / q) * (y @ x @ y) - y @ y @ x - x @ y @ y
    rhs = (q - 1 / q) ** 2 * x
    return float(np.abs(lhs - rhs).max() / max(np.abs(x).max(), 1e-300))


# ------------------------------------------------------------------ Y(omega)

def yset(p, omega, N, ring, sixj=None):
    """Every 6j-symbol that must be nonzero for irreducibility, evaluated.

    Tuples run over vertices, lifts of the three adjacent edges (oriented into
    the vertex), signs eta_u, shifts eps_v with even sum and the two S_1
    directions.  Inadmissible tuples are skipped.  Tuples whose inner vertex
    leaves the support band vanish for every omega; they are counted
    separately and do not enter the verdict.
    """
    sixj = sixj or SixjCache()
    om = check_omega(p, omega)
    graph = p.graph
    eps_set = [e for e in product((-1, 0, 1), repeat=3) if sum(e) % 2 == 0]
    values = []
    structural = 0
    seen = set()
    for v in graph.vertices:
        inc = graph.incident(v)
        for js in product(range(N), repeat=3):
            cols = [sig * lift(N, om[e], j) for (e, sig), j in zip(inc, js)]
            for eta in product((1, -1), repeat=3):
                for eps in eps_set:
                    a = eta[0] * cols[0] + eps[0]
                    b = eta[1] * cols[1] + eps[1]
                    g = eta[2] * cols[2] + eps[2]
                    for e1, e2 in product((1, -1), repeat=2):
                        try:
                            gn, _ = normalize_triple(ring.root, a, b, g)
                        except Inadmissible:
                            continue
                        key = (a, b, gn, e1, e2)
                        if key in seen:
                            continue
                        seen.add(key)
                        if is_structural_zero(ring.root, a, b, gn, e1, e2):
                            structural += 1
                            continue
                        values.append((key, sixj(ring, a, b, gn, e1, e2)))
    zeros = [k for k, x in values if ring.is_zero(x, 1.0)]
    return Certificate("YsetNonvanishing", not zeros, {
        "count": len(values), "structural_zeros": structural,
        "zeros": zeros, "values": values})


def find_omega(p, N, rng=None, dens=(5, 7, 9, 11, 13), tries=50):
    """Random rational omega with the vertex conditions and 0 not in Y(omega)."""
    rng = rng or random.Random(0)
    root = RootData(N)
    free = _free_edges(p)
    for _ in range(tries):
        vals = {e: Fraction(rng.randrange(1, 2 * d), d) for e, d in
                zip(free, (rng.choice(dens) for _ in free))}
        om = _complete_omega(p, vals)
        if om is None:
            continue
        try:
            om = check_omega(p, om)
        except OmegaError:
            continue
        ring = make_ring(root, om)
        cert = yset(p, om, N, ring)
        if cert.passed:
            return om, cert
    raise RuntimeError("no omega found")


def _free_edges(p):
    """Edges outside a spanning tree: omega is free there, forced elsewhere."""
    g = p.graph
    parent = {v: v for v in g.vertices}

    def find(v):
        while parent[v] != v:
            v = parent[v]
        return v
    tree = []
    for e, (s, t) in g.edges.items():
        a, b = find(s), find(t)
        if a != b:
            parent[a] = b
            tree.append(e)
    return [e for e in g.edges if e not in tree]


def _complete_omega(p, vals):
    """Fill tree edges so that the signed sum at every vertex is 0."""
    g = p.graph
    om = dict(vals)
    todo = [e for e in g.edges if e not in om]
    while todo:
        progress = False
        for v in g.vertices:
            inc = g.incident(v)
            unknown = [(e, s) for e, s in inc if e not in om]
            if len(unknown) == 1:
                e, s = unknown[0]
                om[e] = -sum(sig * om[f] for f, sig in inc if f in om) * s
                todo.remove(e)
                progress = True
        if not progress:
            return None
    return {e: om[e] for e in g.edges}


# ------------------------------------------------------------------ generation

def _lattice_det(rows, n):
    """|det| of the lattice spanned by integer rows in Z^n (0 if not full rank)."""
    rows = [list(r) for r in rows if any(r)]
    det = 1
    for col in range(n):
        live = [r for r in rows if r[col]]
        if not live:
            return 0
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            piv = live[0]
            for r in live[1:]:
                f = r[col] // piv[col]
                for k in range(n):
                    r[k] -= f * piv[k]
            live = [r for r in live if r[col]]
        piv = live[0]
        det *= abs(piv[col])
        rows = [r for r in rows if r is not piv and any(r)]
    return det


def generation_certificate(p, N):
    """Do the shifts eta of all beta curves generate (Z/N)^E?"""
    edges = p.graph.edge_ids
    gens = []
    for b in p.beta_curves:
        crossed = [e for e, _ in b.crossings]
        for eta in product((1, -1), repeat=len(crossed)):
            sh = dict(zip(crossed, eta))
            gens.append([sh.get(e, 0) for e in edges])
    rows = gens + [[N if i == k else 0 for k in range(len(edges))] for i in range(len(edges))]
    det = _lattice_det(rows, len(edges))
    index = N ** len(edges) // math.gcd(det, N ** len(edges)) if det else None
    return Certificate("Generation", det == 1, {"generators": gens, "lattice_det": det,
                                               "subgroup_order": index})


# ------------------------------------------------------------------ Burnside

def _prime_for(M, start=2 ** 20):
    """Smallest prime p = 1 mod M above start (kept below 2^21 when possible)."""
    p = (start // M) * M + 1
    while p <= start or not _is_prime(p):
        p += M
    return p


def _is_prime(n):
    if n < 2:
        return False
    for d in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % d == 0:
            return n == d
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _primitive_root_of_unity(M, p):
    primes = [f for f in range(2, M + 1) if M % f == 0 and _is_prime(f)]
    for g in range(2, p):
        r = pow(g, (p - 1) // M, p)
        if all(pow(r, M // f, p) != 1 for f in primes):
            return r
    raise ValueError("no primitive root of unity")


class ModP:
    """Reduction Q(zeta_M) -> F_p, zeta -> r, for a prime p = 1 mod M."""

    def __init__(self, M):
        self.M = M
        self.p = _prime_for(M)
        self.r = _primitive_root_of_unity(M, self.p)

    def __call__(self, x):
        p = self.p
        acc = 0
        for c in reversed(x.coeffs()):
            den = c.denominator % p
            if den == 0:
                raise ZeroDivisionError("denominator divisible by p")
            acc = (acc * self.r + c.numerator * pow(den, -1, p)) % p
        return acc

    def matrix(self, m):
        a = np.zeros((m.rows, m.cols), dtype=np.int64)
        for (i, j), v in m.items():
            a[i, j] = self(v)
        return a


def _matmul_mod(a, b, p, chunk=1024):
    """a @ b mod p without int64 overflow (entries below p < 2^21)."""
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for k in range(0, a.shape[1], chunk):
        out = (out + a[:, k:k + chunk] @ b[k:k + chunk]) % p
    return out


def _rref_mod(a, p):
    """(rows, pivots) of the reduced row echelon form of a over F_p."""
    a = a.copy() % p
    rows, cols = a.shape
    piv = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if len(nz) == 0:
            continue
        k = r + nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        f = a[:, c].copy()
        f[r] = 0
        mask = f != 0
        if mask.any():
            a[mask] = (a[mask] - np.outer(f[mask], a[r]) % p) % p
        piv.append(c)
        r += 1
    return a[:r], piv


def _span_closure_modp(gens, p, n, max_rounds=None):
    """Dimension of the unital algebra generated by gens over F_p.

    Keeps a reduced echelon basis E of the span; each round multiplies the
    directions added in the previous round by every generator and keeps
    what E does not already contain.
    """
    E = np.eye(n, dtype=np.int64).reshape(1, n * n)
    piv = [0]
    fresh = E
    history = [1]
    rounds = 0
    while len(fresh):
        rounds += 1
        if max_rounds is not None and rounds > max_rounds:
            break
        mats = fresh.reshape(-1, n, n)
        cand = np.concatenate([np.stack([_matmul_mod(g, m, p) for m in mats]).reshape(-1, n * n)
                               for g in gens])
        cand = (cand - _matmul_mod(cand[:, piv], E, p)) % p
        cand = cand[cand.any(axis=1)]
        if not len(cand):
            break
        R, rpiv = _rref_mod(cand, p)
        E = (E - _matmul_mod(E[:, rpiv], R, p)) % p
        E = np.concatenate([E, R])
        piv = piv + rpiv
        order = np.argsort(piv)
        E = E[order]
        piv = [piv[k] for k in order]
        fresh = R
        history.append(len(E))
    return len(E), history


def burnside_certificate(ops, method=None, tol=None):
    """Is the algebra generated by the operators all of End(V)?

    Exact operators are reduced modulo a prime p = 1 mod M and the algebra
    span is grown by left multiplication until it is stable; full rank mod p
    implies full rank over Q(zeta_M).  Approximate operators use the
    structure of the problem instead: if the pants operators span the
    diagonal algebra (numeric rank of their joint spectrum), the algebra is
    spanned by the matrix units on the transitive closure of the support
    relation of the generators, so its dimension is the size of that
    closure, computed at threshold tol.
    """
    mats = [op.matrix if isinstance(op, CurveOperator) else op for op in ops]
    n = mats[0].rows
    ring = mats[0].ring
    method = method or ("modp" if ring.mode == "exact" else "support")
    if method == "modp":
        red = ModP(ring.M)
        gens = [red.matrix(m) for m in mats]
        dim, hist = _span_closure_modp(gens, red.p, n)
        return Certificate("Burnside", dim == n * n, {
            "method": "modp", "prime": red.p, "zeta_image": red.r, "dimension": dim,
            "target": n * n, "history": hist})
    tol = tol or 1e-8
    return _burnside_support(mats, n, tol)


def diagonal_rank(mats, tol):
    """Numeric dimension of the algebra generated by the diagonal operators."""
    diags = [m for m in mats if all(i == j for (i, j), _ in m.items())]
    if not diags:
        return 0
    n = diags[0].rows
    cols = [np.array([complex(d[i, i]) for i in range(n)]) for d in diags]
    Q = np.ones((n, 1), dtype=complex) / math.sqrt(n)
    fresh = Q
    while fresh.shape[1]:
        cand = np.concatenate([c[:, None] * fresh for c in cols], axis=1)
        cand = cand - Q @ (Q.conj().T @ cand)
        norms = np.linalg.norm(cand, axis=0)
        cand = cand[:, norms > tol * max(1.0, norms.max(initial=0.0))]
        if not cand.shape[1]:
            break
        U, sv, _ = np.linalg.svd(cand, full_matrices=False)
        keep = sv > tol * max(sv[0], 1.0)
        fresh = U[:, keep]
        fresh = fresh - Q @ (Q.conj().T @ fresh)
        fresh, _ = np.linalg.qr(fresh)
        Q = np.concatenate([Q, fresh], axis=1)
        if Q.shape[1] >= n:
            break
    return min(Q.shape[1], n)


def _burnside_support(mats, n, tol):
    drank = diagonal_rank(mats, tol)
    reach = np.eye(n, dtype=bool)
    for m in mats:
        scale = max(m.max_abs(), 1.0)
        for (i, j), v in m.items():
            if abs(complex(v)) > tol * scale:
                reach[i, j] = True
    # transitive closure by repeated squaring
    while True:
        nxt = (reach.astype(np.int32) @ reach.astype(np.int32)) > 0
        if (nxt == reach).all():
            break
        reach = nxt
    dim = int(reach.sum()) if drank == n else None
    return Certificate("Burnside", drank == n and dim == n * n, {
        "method": "support", "tolerance": tol, "diagonal_rank": drank,
        "dimension": dim, "target": n * n})
