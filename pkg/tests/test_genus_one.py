import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from skein_kernel import genus_one as g1
from skein_kernel.linalg import Mat
from skein_kernel.scalars import ExactRing, RootData
from skein_kernel.skein_rep import chebyshev_of

RING = ExactRing(RootData(5))
small = st.integers(-3, 3)
monomial = st.tuples(small, small, st.integers(-2, 2).filter(bool))
poly = st.lists(monomial, min_size=1, max_size=3).map(
    lambda ts: sum((g1.QTorus(RING, {(a, b): RING.one * c}) for a, b, c in ts), g1.QTorus(RING)))


@settings(max_examples=30, deadline=None)
@given(poly, poly, poly)
def test_qtorus_associative(u, v, w):
    assert (u * v) * w == u * (v * w)


@settings(max_examples=30, deadline=None)
@given(poly, poly)
def test_theta_is_an_involutive_automorphism(u, v):
    assert g1.theta(g1.theta(u)) == u
    assert g1.theta(u * v) == g1.theta(u) * g1.theta(v)
    assert g1.theta_plus_part(u) + g1.theta_minus_part(u) == u


def test_commutation():
    X, Y = g1.QTorus.X(RING), g1.QTorus.Y(RING)
    assert X * Y == (Y * X) * RING.qpow(1)


def test_fgs_generators_and_product():
    lam, mu = g1.fgs(RING, "l"), g1.fgs(RING, "m")
    assert lam == g1.fgs_lambda(RING) and mu == g1.fgs_mu(RING)
    assert g1.theta(lam * mu) == lam * mu
    # four corners in normal order, all with coefficient one
    assert sorted((lam * mu).terms) == [(-1, -1), (-1, 1), (1, -1), (1, 1)]
    assert all(v == RING.one for v in (lam * mu).terms.values())
    with pytest.raises(ValueError):
        g1.fgs(RING, "lz")


@pytest.mark.parametrize("N", [3, 5, 7])
def test_chebyshev_threading(N):
    ring = ExactRing(RootData(N))
    T = g1.chebyshev_poly(g1.fgs_lambda(ring), N, g1.QTorus.const(ring, 1))
    assert T == g1.QTorus.X(ring, N) + g1.QTorus.X(ring, -N)


@pytest.mark.parametrize("N", [3, 5])
def test_rep_is_a_homomorphism(N):
    r, s = Fraction(2, 7), Fraction(3, 11)
    ring = g1.angle_ring(RootData(N), r, s)
    x, y = g1.unit(ring, r), g1.unit(ring, s)
    X, Y = g1.QTorus.X(ring), g1.QTorus.Y(ring)
    for u, v in ((X, Y), (Y, X), (X + Y, X * Y)):
        assert g1.rep_rxy(x, y, u * v).equals(g1.rep_rxy(x, y, u) @ g1.rep_rxy(x, y, v))


@pytest.mark.parametrize("N", [3, 5])
def test_shadow_of_lambda(N):
    for r, s in g1.random_angles(random.Random(N), 3):
        ring = g1.angle_ring(RootData(N), r, s)
        x, y = g1.unit(ring, r), g1.unit(ring, s)
        T = chebyshev_of(g1.rep_rxy(x, y, g1.fgs_lambda(ring)), N)
        assert T.equals(Mat.identity(ring, N).scale(x ** N + (1 / x) ** N))


@pytest.mark.parametrize("N", [3, 5, 7])
def test_corner_classification(N):
    ring = ExactRing(RootData(N))
    for e1 in (1, -1):
        for e2 in (1, -1):
            c = g1.classify(ring, ring.one * e1, ring.one * e2)
            assert c["family"] == "central"
            assert c["parts"]["plus"]["dimension"] == (N + 1) // 2
            assert c["parts"]["minus"]["dimension"] == (N - 1) // 2
            assert c["parts"]["plus"]["irreducible"] and c["parts"]["minus"]["irreducible"]
            assert c["image_dimension"] == c["expected_image_dimension"]


def test_generic_point_is_irreducible():
    r, s = Fraction(1, 7), Fraction(2, 7)
    ring = g1.angle_ring(RootData(3), r, s)
    c = g1.classify(ring, g1.unit(ring, r), g1.unit(ring, s))
    assert c["family"] == "generic" and c["irreducible"]


def test_theta_matrix_intertwines():
    ring = ExactRing(RootData(5))
    T = g1.theta_matrix(ring)
    lam = g1.rep_rxy(ring.one, ring.one, g1.fgs_lambda(ring))
    assert (T @ lam).equals(lam @ T)


def test_zero_parameters_rejected():
    with pytest.raises(ValueError):
        g1.rep_rxy(RING.zero, RING.one, g1.fgs_lambda(RING))
    with pytest.raises(ValueError):
        g1.pi_pm(RING, 2, 1, 1)
