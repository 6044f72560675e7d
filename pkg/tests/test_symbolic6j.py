from fractions import Fraction

import pytest

from skein_kernel import graph_calculus as gc
from skein_kernel.scalars import ExactRing, RootData
from skein_kernel.symbolic6j import sixj_symbolic, valuation_table


@pytest.mark.parametrize("N", [3, 5])
def test_symbolic_specializes_to_closed(N):
    root = RootData(N)
    a, b = Fraction(2, 5), Fraction(-9, 7)
    ring = ExactRing.for_colors(root, [a, b])
    for h in root.H:
        g = a + b - h
        m = gc.support_index(root, a, b, g)
        for e1 in (1, -1):
            for e2 in (1, -1):
                S = sixj_symbolic(root, m, e1, e2, M=ring.M)
                val = S.evaluate([ring.apow(a), ring.apow(b), ring.apow(g)])
                assert val == gc.sixj_closed(ring, a, b, g, e1, e2)


@pytest.mark.parametrize("N", [3, 5])
def test_R_vanishes_exactly_on_the_boundary(N):
    for c in valuation_table(RootData(N)):
        assert c["R_nonzero"] != c["boundary"]


@pytest.mark.parametrize("N", [3, 5])
def test_certificate_fields(N):
    c = sixj_symbolic(RootData(N), 1, 1, -1).certificate()
    assert c["expected_v_F1"] == 7 * c["theta1"] - 2 * N + 5
    assert c["expected_v_F2"] == 7 * c["theta1"] - 2 * N + 10
    assert set(c) >= {"v_F1", "v_F2", "matches", "distinct", "R_nonzero", "boundary"}


@pytest.mark.xfail(strict=True, reason="the stated valuation formula does not match the computed summands")
@pytest.mark.parametrize("N", [3, 5])
def test_valuations_match_stated_formula(N):
    assert all(c["matches"] for c in valuation_table(RootData(N)))


def test_bad_arguments():
    with pytest.raises(ValueError):
        sixj_symbolic(RootData(3), 0, 2, 1)
    with pytest.raises(ValueError):
        sixj_symbolic(RootData(3), 3, 1, 1)
