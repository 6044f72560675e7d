from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from skein_kernel import graph_calculus as gc
from skein_kernel.category import build_V, is_equivariant, tensor
from skein_kernel.scalars import ApproxRing, ExactRing, RootData

# denominators prime to every N used here keep q-integers away from zero
colors = st.builds(lambda n, d: Fraction(n, d), st.integers(-28, 28), st.sampled_from([5, 7])).filter(
    lambda c: c.denominator > 1)


def ring_for(N, *cs):
    return ExactRing.for_colors(RootData(N), list(cs))


@given(st.sampled_from([3, 5, 7]), st.integers(-60, 60))
def test_sigma_defect_decomposition(N, two_s):
    root = RootData(N)
    s = Fraction(two_s, 2)
    try:
        n, r = gc.sigma_defect(root, s)
    except gc.Inadmissible:
        # nothing in n*N/2 + H_N reaches s
        assert all((two_s - n * N) % 4 != (2 * (N - 1)) % 4 or abs(two_s - n * N) > 2 * (N - 1)
                   for n in range(-60, 61))
        return
    assert Fraction(n * N, 2) + r == s
    assert r in root.H


def test_sigma_defect_rejects_non_half_integers():
    with pytest.raises(gc.Inadmissible):
        gc.sigma_defect(RootData(3), Fraction(1, 3))


@given(colors, colors, st.sampled_from([-2, 0, 2]))
def test_support_index_range(a, b, h):
    root = RootData(3)
    m = gc.support_index(root, a, b, a + b - h)
    assert 0 <= m <= 2
    with pytest.raises(gc.Inadmissible):
        gc.support_index(root, a, b, a + b - 4)


def test_coefE_matches_its_definition():
    N, a, b = 3, Fraction(1, 5), Fraction(2, 5)
    ring = ring_for(N, a, b)
    g = a + b
    m = gc.support_index(ring.root, a, b, g)
    for i in range(N):
        for j in range(N):
            n = i + j - m
            if not 0 <= n < N:
                continue
            direct = (gc.kappa(ring, i, a) * gc.kappa(ring, j, b) / gc.kappa(ring, n, g)
                      * gc.coefC(ring, N - 1 - j, N - 1 - i, N - 1 - n, -b, -a, -g))
            assert gc.coefE(ring, i, j, n, a, b, g) == direct


@pytest.mark.parametrize("N", [3, 5])
def test_y_maps_are_equivariant(N):
    a, b = Fraction(2, 5), Fraction(-6, 5)
    ring = ring_for(N, a, b)
    T = tensor(build_V(ring, a), build_V(ring, b))
    for h in ring.root.H:
        g = a + b + h
        assert is_equivariant(gc.build_Y_up(ring, a, b, g), build_V(ring, g), T)
        assert is_equivariant(gc.build_Y_down(ring, a, b, g), T, build_V(ring, g))


def test_theta_is_cut_independent():
    N, a, b = 5, Fraction(1, 5), Fraction(7, 5)
    ring = ring_for(N, a, b)
    for h in ring.root.H:
        g = a + b + h
        t = gc.theta(ring, a, b, g, "g")
        assert t == gc.theta(ring, a, b, g, "a") == gc.theta(ring, a, b, g, "b")


def test_identity_suite_small():
    rep = gc.identity_suite(RootData(3), gc.sample_pairs(count=3, seed=5))
    assert rep, "suite ran nothing"
    for family, (passed, total) in rep.items():
        assert passed == total, family


def test_sample_pairs_are_typical():
    for a, b in gc.sample_pairs(count=20, den=7, seed=1):
        assert all(x.denominator > 1 for x in (a, b, a + b, a - b))


@settings(max_examples=25, deadline=None)
@given(colors, colors, st.sampled_from([-2, 0, 2]), st.sampled_from([1, -1]), st.sampled_from([1, -1]))
def test_oracle_agrees_with_closed_formula(a, b, h, e1, e2):
    g = a + b - h
    assume(all(x.denominator > 1 for x in (a + b, g)))
    ring = ring_for(3, a, b)
    try:
        o = gc.sixj_oracle(ring, a, b, g, e1, e2)
    except gc.DegenerateSystem:
        assume(False)
    assert o == gc.sixj_closed(ring, a, b, g, e1, e2)


def test_oracle_agrees_in_approx_mode():
    ring = ApproxRing(RootData(5), 1e-10)
    a, b = 0.31 + 0.05j, -0.77
    for h in ring.root.H:
        for e1 in (1, -1):
            for e2 in (1, -1):
                o = gc.sixj_oracle(ring, a, b, a + b - h, e1, e2)
                c = gc.sixj_closed(ring, a, b, a + b - h, e1, e2)
                assert abs(o - c) <= 1e-9 * max(1.0, abs(c))


def test_structural_zero_at_band_edge():
    # inner support index m + (e1+e2)/2 leaves 0..N-1
    N, a, b = 3, Fraction(1, 5), Fraction(2, 7)
    ring = ring_for(N, a, b)
    for h, e in ((-2, -1), (2, 1)):
        g = a + b - h
        assert gc.support_index(ring.root, a, b, g) == (0 if e < 0 else N - 1)
        assert gc.sixj_closed(ring, a, b, g, e, e).is_zero()
        assert gc.sixj_oracle(ring, a, b, g, e, e).is_zero()
        assert not gc.sixj_closed(ring, a, b, g, e, -e).is_zero()


def test_normalize_triple_absorbs_defect():
    root = RootData(3)
    a, b = Fraction(1, 5), Fraction(2, 7)
    g, n = gc.normalize_triple(root, a, b, a + b + Fraction(3, 2) + 2)
    assert n != 0
    assert a + b - g in root.H


def test_bad_epsilon():
    ring = ring_for(3, Fraction(1, 5))
    with pytest.raises(gc.Inadmissible):
        gc.sixj_oracle(ring, Fraction(1, 5), Fraction(1, 5), Fraction(2, 5), 2, 1)
