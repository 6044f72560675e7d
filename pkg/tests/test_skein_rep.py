from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from skein_kernel import skein_rep as sr
from skein_kernel.acceptance import build_ops
from skein_kernel.fixtures import shipped_omega, shipped_preset
from skein_kernel.scalars import RootData


@pytest.mark.parametrize("g,N,n", [(2, 3, 27), (2, 5, 125), (3, 3, 729)])
def test_basis_size(g, N, n):
    B = sr.enumerate_basis(shipped_preset(g), shipped_omega(g), N)
    assert len(B) == n
    assert [B.index(lab) for lab in B.labels] == list(range(n))


@given(st.sampled_from([3, 5, 7]),
       st.builds(Fraction, st.integers(-40, 40), st.sampled_from([5, 7, 9])),
       st.integers(0, 20))
def test_lift_congruences(N, w, j):
    c = sr.lift(N, w, j)
    assert (c - w) % 2 == 0
    assert (c - w - j) % N == 0
    assert -N < c <= N


def test_builtin_presets_match_fixtures():
    for g in (2, 3):
        assert sr.preset_to_json(sr.preset(g)) == sr.preset_to_json(shipped_preset(g))
        again = sr.preset_from_json(sr.preset_to_json(shipped_preset(g)))
        assert sr.preset_to_json(again) == sr.preset_to_json(shipped_preset(g))


def test_check_omega_rejections():
    p = shipped_preset(2)
    with pytest.raises(sr.OmegaError):
        sr.check_omega(p, [Fraction(1, 5), Fraction(2, 7)])
    with pytest.raises(sr.OmegaError):
        sr.check_omega(p, [Fraction(1, 2), Fraction(1, 3), Fraction(1, 6)])
    with pytest.raises(sr.OmegaError):
        sr.check_omega(p, [Fraction(1, 5), Fraction(2, 7), Fraction(1, 3)])


def test_bad_preset_is_rejected():
    doc = sr.preset_to_json(shipped_preset(2))
    doc["beta"][0]["crossings"][1]["edge"] = "e1"
    with pytest.raises(sr.FixtureError):
        sr.preset_from_json(doc)


@pytest.fixture(scope="module")
def g2n3():
    return build_ops(2, 3)


def test_gamma_is_diagonal(g2n3):
    B, ring, ops = g2n3
    for op in ops[:3]:
        assert all(i == j for (i, j), _ in op.matrix.items())
        e = op.curve[len("gamma_"):]
        for lab in B.labels:
            i = B.index(lab)
            assert op.matrix[i, i] == sr.gamma_eigenvalue(ring, B.colors(lab)[e])


def test_beta_sparsity(g2n3):
    _, _, ops = g2n3
    for op in ops[3:]:
        counts = {}
        for (i, j), _ in op.matrix.items():
            counts[j] = counts.get(j, 0) + 1
        assert max(counts.values()) <= 4


def test_disjoint_curves_commute(g2n3):
    _, _, ops = g2n3
    d = {o.curve: o.matrix for o in ops}
    assert (d["gamma_e3"] @ d["beta_1"]).equals(d["beta_1"] @ d["gamma_e3"])
    assert (d["gamma_e1"] @ d["beta_2"]).equals(d["beta_2"] @ d["gamma_e1"])


@pytest.mark.parametrize("conv", sr.GAMMA_CONVENTIONS)
def test_shadows_are_scalar(conv):
    B, ring, ops = build_ops(2, 3, convention=conv)
    cert = sr.shadow_certificate(ops)
    assert cert.passed
    for e in B.preset.graph.edge_ids:
        assert cert.payload[f"gamma_{e}"]["value"] == sr.expected_gamma_shadow(ring, B.omega[e], conv)


@pytest.mark.parametrize("N", [3, 5])
def test_once_intersecting_relation_selects_convention(N):
    res = {}
    for conv in sr.GAMMA_CONVENTIONS:
        _, ring, ops = build_ops(2, N, mode="approx", convention=conv)
        d = {o.curve: o.matrix.to_numpy() for o in ops}
        res[conv] = max(sr.skein_relation_residual(d[x], d[y], ring.root)
                        for x, y in (("gamma_e1", "beta_1"), ("gamma_e3", "beta_2")))
    assert res["skein"] < 1e-9
    assert res["plain"] > 1e-3


def test_residual_on_toroidal_pair():
    # X = U + U^-1, Y = W + W^-1 on C^N satisfy the relation exactly
    root = RootData(5)
    q = np.exp(2j * np.pi * root.k / root.N)
    U = np.diag([q ** i for i in range(5)])
    W = np.roll(np.eye(5), 1, axis=0)
    x, y = U + np.linalg.inv(U), W + W.T
    assert sr.skein_relation_residual(x, y, root) < 1e-12
    assert sr.skein_relation_residual(x, x @ y, root) > 1e-3


def test_yset_and_generation_g2():
    p, om = shipped_preset(2), shipped_omega(2)
    ring = sr.make_ring(RootData(3), om)
    assert sr.yset(p, om, 3, ring).passed
    assert sr.generation_certificate(p, 3).passed


def test_burnside_routes_agree(g2n3):
    # exact mod-p closure and the approximate support route, on the same data
    _, _, ops = g2n3
    exact = sr.burnside_certificate(ops)
    _, _, approx = build_ops(2, 3, mode="approx")
    supp = sr.burnside_certificate(approx, method="support", tol=1e-9)
    assert exact.payload["dimension"] == supp.payload["dimension"] == 729


def test_cache_counts_hits():
    cache = sr.SixjCache()
    build_ops(2, 3, sixj=cache)
    first = cache.misses
    build_ops(2, 3, sixj=cache)
    assert cache.misses == first and cache.hits >= first


def test_unknown_convention():
    _, ring, _ = build_ops(2, 3, mode="approx")
    with pytest.raises(ValueError):
        sr.gamma_eigenvalue(ring, Fraction(1, 5), "other")
