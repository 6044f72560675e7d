import json
from fractions import Fraction

import pytest
from click.testing import CliRunner
from hypothesis import given, settings, strategies as st

from skein_kernel import graph_calculus as gc
from skein_kernel import store
from skein_kernel.cli import main
from skein_kernel.linalg import Mat
from skein_kernel.scalars import ApproxRing, ExactRing, RootData
from skein_kernel.skein_rep import CacheMismatch, SixjCache

RING = ExactRing(RootData(3), 15)
rationals = st.fractions(-50, 50, max_denominator=30)


@given(st.lists(rationals, min_size=1, max_size=6))
def test_exact_scalar_round_trip(cs):
    x = RING.F.from_coeffs(cs)
    back = store.scalar_from_json(json.loads(json.dumps(store.scalar_to_json(x))), RING)
    assert back == x


@given(st.complex_numbers(max_magnitude=1e6, allow_nan=False, allow_infinity=False))
def test_approx_scalar_round_trip(z):
    assert store.scalar_from_json(store.scalar_to_json(z)) == z


def test_scalar_embeds_into_larger_field():
    small = ExactRing(RootData(3))
    x = small.qpow(1)
    assert store.scalar_from_json(store.scalar_to_json(x), RING) == RING.qpow(1)


@settings(max_examples=20)
@given(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 2)), rationals.filter(bool)),
       st.booleans())
def test_matrix_round_trip(entries, dense):
    M = Mat(RING, 4, 3)
    for (i, j), v in entries.items():
        M[i, j] = RING.one * v
    doc = json.loads(json.dumps(store.matrix_to_json(M, dense)))
    assert store.matrix_from_json(doc, RING).equals(M)


def test_disk_store(tmp_path):
    ring = ExactRing.for_colors(RootData(3), [Fraction(1, 5), Fraction(2, 7)])
    disk = store.DiskSixjStore(tmp_path)
    args = (Fraction(1, 5), Fraction(2, 7), Fraction(17, 35), 1, -1, "closed")
    assert disk.get(ring, *args) is None
    v = ring.qpow(1) + 3
    disk.put(ring, *args, v)
    assert disk.get(ring, *args) == v
    other = ApproxRing(RootData(3), 1e-9)
    assert disk.get(other, *args) is None


def _fill(tmp_path):
    ring = ExactRing.for_colors(RootData(3), [Fraction(1, 5), Fraction(2, 7)])
    a, b = Fraction(1, 5), Fraction(2, 7)
    cache = SixjCache(store=store.DiskSixjStore(tmp_path))
    v = cache(ring, a, b, a + b, 1, -1)
    return ring, a, b, v


def test_cache_reads_back_and_detects_tampering(tmp_path):
    ring, a, b, v = _fill(tmp_path)
    fresh = SixjCache(store=store.DiskSixjStore(tmp_path))
    assert fresh(ring, a, b, a + b, 1, -1) == v
    assert fresh.store_hits == 1 and fresh.spot_checks == 1
    (path,) = list(tmp_path.glob("*/*.json"))
    doc = json.loads(path.read_text())
    doc["value"] = store.scalar_to_json(v + 1)
    path.write_text(json.dumps(doc))
    with pytest.raises(CacheMismatch):
        SixjCache(store=store.DiskSixjStore(tmp_path))(ring, a, b, a + b, 1, -1)


# ------------------------------------------------------------------ CLI

@pytest.fixture
def run(tmp_path):
    runner = CliRunner()

    def go(*args):
        return runner.invoke(main, ["--cache-dir", str(tmp_path), *args])
    return go


def test_sixj_cross_validates(run):
    r = run("sixj", "1/5", "2/7", "-53/35", "1", "-1", "--cross-validate")
    assert r.exit_code == 0, r.output
    doc = json.loads(r.output)
    assert doc["schema"] == store.SCHEMA and doc["agree"]
    ring = ExactRing.for_colors(RootData(3), [Fraction(1, 5), Fraction(2, 7)])
    want = gc.sixj_closed(ring, Fraction(1, 5), Fraction(2, 7), Fraction(-53, 35), 1, -1)
    assert store.scalar_from_json(doc["value"], ring) == want


@pytest.mark.parametrize("args", [
    ("sixj", "1/5", "2/7", "-53/35", "2", "1"),
    ("sixj", "1/5", "2/7", "3", "1", "1"),
    ("sixj", "x", "2/7", "3", "1", "1"),
])
def test_sixj_bad_input_exit_2(run, args):
    assert run(*args).exit_code == 2


def test_rep_and_cache_hits(run):
    r1 = run("rep", "--genus", "2", "--curve", "beta_1")
    assert r1.exit_code == 0, r1.output
    d1 = json.loads(r1.output)
    assert d1["cache"]["misses"] > 0 and d1["cache"]["store_hits"] == 0
    d2 = json.loads(run("rep", "--genus", "2", "--curve", "beta_1").output)
    assert d2["cache"]["misses"] == 0 and d2["cache"]["store_hits"] == d1["cache"]["misses"]
    assert d2["cache"]["spot_checks"] >= 1
    assert d1["operators"] == d2["operators"]


def test_rep_gamma_diagonal_csv(run):
    r = run("--format", "csv", "rep", "--genus", "2", "--curve", "gamma_e1")
    assert r.exit_code == 0
    rows = [l for l in r.output.splitlines() if l and not l.startswith(("#", "row"))]
    assert len(rows) == 27
    assert all(l.split(",")[0] == l.split(",")[1] for l in rows)


def test_rep_bad_omega(run, tmp_path):
    bad = tmp_path / "omega.json"
    bad.write_text(json.dumps({"omega": ["1/2", "1/3", "1/6"]}))
    assert run("rep", "--genus", "2", "--omega", str(bad)).exit_code == 2
    assert run("rep", "--genus", "2", "--omega", str(tmp_path / "missing.json")).exit_code == 2


def test_irreducible_genus_two(run, tmp_path):
    om = tmp_path / "om.json"
    om.write_text(json.dumps({"omega": ["1/5", "2/7", "-17/35"]}))
    r = run("irreducible", "--omega", str(om))
    assert r.exit_code == 0, r.output


def test_verify_exit_codes(run):
    assert run("verify", "--criterion", "6").exit_code == 0
    assert run("verify", "--suite", "valuations").exit_code == 1


def test_genus1_corner(run):
    doc = json.loads(run("genus1", "--x", "1", "--y", "-1").output)
    assert doc["family"] == "central"
    assert doc["parts"]["plus"]["dimension"] == 2
