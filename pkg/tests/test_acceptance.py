"""End-to-end acceptance checks, one group of tests per criterion."""

import itertools
import json
import time
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest
from conftest import AXIAL_6x16, CENTERED_6x16, DATA, GRAPH_FIXTURES, harmonic_3x7_display

from etfforge import cli
from etfforge.bridge import (
    centroidal_complement_params,
    etf_to_srg_centroidal,
    etf_to_srg_traditional,
    integrality_report,
    rbibd_srg_params,
    srg_descend,
    srg_to_etf_centroidal,
    srg_to_etf_traditional,
    traditional_dimension,
)
from etfforge.fixtures import DIFFERENCE_SETS, icosahedral, mercedes_benz
from etfforge.frames import Centroidal, classify_centroidal, coherence, naimark_complement, search_unimodular_sign
from etfforge.frames import welch_bound
from etfforge.harmonic import harmonic_etf, translate_difference_set
from etfforge.srg import SrgParams, common_neighbor_params, complement_params, feasibility, is_centroidal_type
from etfforge.srg import verify_srg


def run_cli(capsys, *argv):
    code = cli.run(list(argv))
    return code, capsys.readouterr().out


def load_cli_etf(path):
    d = json.loads(path.read_text())
    entries = np.array(d["synthesis"], dtype=float)
    return entries[..., 0] + 1j * entries[..., 1] if d["field"] == "complex" else entries


# -- 1 ----------------------------------------------------------------------


@pytest.mark.criterion(1, "golden matrices: 3x7 harmonic, centered and axial 6x16 Steiner")
def test_golden_harmonic_3x7(tmp_path, capsys):
    out = tmp_path / "h.json"
    assert run_cli(capsys, "construct", "harmonic", "--group", "7", "--set", "1,2,4", "--out", str(out))[0] == 0
    assert np.max(np.abs(load_cli_etf(out) - harmonic_3x7_display())) <= 1e-9


@pytest.mark.criterion(1, "golden matrices: 3x7 harmonic, centered and axial 6x16 Steiner")
@pytest.mark.parametrize("mode,golden", [("centered", CENTERED_6x16), ("axial", AXIAL_6x16)])
def test_golden_steiner_6x16(tmp_path, capsys, mode, golden):
    out = tmp_path / f"{mode}.json"
    code, _ = run_cli(capsys, "construct", "steiner", "--bibd", "bibd_4_2", "--mode", mode, "--out", str(out))
    assert code == 0
    assert np.max(np.abs(load_cli_etf(out) - golden / np.sqrt(3))) <= 1e-9


# -- 2 ----------------------------------------------------------------------


@pytest.mark.criterion(2, "Welch optimality of every constructed ETF")
@pytest.mark.parametrize(
    "name",
    ["harmonic_3x7", "harmonic_4x7", "steiner_centered", "steiner_axial", "naimark_10x16", "fano_centered", "fano_complex"],
)
def test_welch_optimality(request, name):
    if name == "naimark_10x16":
        etf = naimark_complement(request.getfixturevalue("steiner_centered"))
    else:
        etf = request.getfixturevalue(name)
    expected_shape = {
        "harmonic_3x7": (3, 7),
        "harmonic_4x7": (4, 7),
        "steiner_centered": (6, 16),
        "steiner_axial": (6, 16),
        "naimark_10x16": (10, 16),
        "fano_centered": (7, 28),
        "fano_complex": (7, 28),
    }[name]
    assert (etf.m, etf.n) == expected_shape
    phi = etf.synthesis
    m, n = phi.shape
    assert abs(coherence(etf) - welch_bound(m, n)) <= 1e-8
    frame_op = phi @ phi.conj().T
    assert np.max(np.abs(frame_op - (n / m) * np.eye(m))) <= 1e-8
    if name == "fano_complex":
        assert etf.field == "complex"


# -- 3 ----------------------------------------------------------------------


@pytest.mark.criterion(3, "difference-set translates: Axial iff 0 in the translate")
@pytest.mark.parametrize("base", ["z7_124", "z7_0356"])
def test_translates_classification(base):
    ds = DIFFERENCE_SETS[base]
    wrong = 0
    for shift in range(7):
        t = translate_difference_set(ds, shift)
        kind = classify_centroidal(harmonic_etf(t)).kind
        expected = Centroidal.AXIAL if 0 in t.elements else Centroidal.CENTERED
        wrong += kind is not expected
    assert wrong == 0


# -- 4 and 5 ----------------------------------------------------------------

BRIDGE_CASES = [
    ("fano_centered", (28, 12, 6, 4), ("centered", 7, Fraction(1, 3))),
    ("steiner_axial", (16, 10, 6, 6), ("axial", 6, Fraction(1, 3))),
    ("steiner_centered", (16, 6, 2, 2), ("centered", 6, Fraction(1, 3))),
]


@pytest.mark.criterion(4, "centroidal bridge forward, exact verify_srg")
@pytest.mark.parametrize("name,params,_", BRIDGE_CASES)
def test_centroidal_forward(request, name, params, _):
    a, cp = etf_to_srg_centroidal(request.getfixturevalue(name))
    assert tuple(cp.params) == params
    assert tuple(verify_srg(a)) == params


@pytest.mark.criterion(5, "centroidal bridge backward with exact (mode, m, beta) and bit-exact roundtrip")
@pytest.mark.parametrize("name,_,expected", BRIDGE_CASES)
def test_centroidal_backward_roundtrip(request, name, _, expected):
    a, _cp = etf_to_srg_centroidal(request.getfixturevalue(name))
    res = srg_to_etf_centroidal(a)
    assert (res.mode, res.m, res.beta) == expected
    assert isinstance(res.beta, Fraction)
    again, _ = etf_to_srg_centroidal(res.etf)
    assert np.array_equal(again, a)


# -- 6 ----------------------------------------------------------------------


@pytest.mark.criterion(6, "traditional bridge: SRG(15,8,4,4), m = 6, Gram-sign roundtrip")
def test_traditional_roundtrip(steiner_centered):
    a0, p = etf_to_srg_traditional(steiner_centered)
    assert tuple(p) == (15, 8, 4, 4) and 2 * p.mu == p.k
    assert traditional_dimension(p) == 6
    etf = srg_to_etf_traditional(a0)
    assert (etf.m, etf.n) == (6, 16)
    a0_again, _ = etf_to_srg_traditional(etf)
    assert np.array_equal(a0_again, a0)


# -- 7 ----------------------------------------------------------------------


@pytest.mark.criterion(7, "SRG table from BIBDs regenerated end to end")
def test_table1_matches_golden(capsys):
    code, out = run_cli(capsys, "table1")
    assert code == 0
    assert out == (DATA / "table1_golden.txt").read_text()


@pytest.mark.criterion(7, "SRG table from BIBDs regenerated end to end")
def test_table1_pipeline_sources():
    rows = cli.table1_rows()
    assert len(rows) == 12
    parameter_only = [row["bibd"][:2] for row in rows if row["source"] == "parameters"]
    assert parameter_only == [(39, 3)]
    for row in rows:
        v, k = row["bibd"][:2]
        assert row["srg"] == tuple(rbibd_srg_params(v, k))


# -- 8 ----------------------------------------------------------------------


@pytest.mark.criterion(8, "nonexistence ledger: Krein/absolute failures and descents")
@pytest.mark.parametrize("params", [(28, 18, 12, 10), (1128, 644, 400, 324)])
def test_infeasible(params):
    f = feasibility(params)
    assert f.parameter_relation
    assert f.fails_krein or f.fails_absolute


@pytest.mark.criterion(8, "nonexistence ledger: Krein/absolute failures and descents")
@pytest.mark.parametrize(
    "src,dst",
    [((1128, 560, 316, 240), (1127, 640, 396, 320)), ((16, 6, 2, 2), (15, 8, 4, 4)), ((16, 10, 6, 6), (15, 8, 4, 4))],
)
def test_descend(src, dst):
    assert tuple(srg_descend(SrgParams(*src))) == dst


# -- 9 ----------------------------------------------------------------------


@pytest.mark.criterion(9, "oracle-backed property suites")
def test_verify_srg_matches_brute_force_on_random_regular_graphs():
    rng_seeds = range(90)
    checked = 0
    for seed in rng_seeds:
        n = 6 + seed % 11
        d = 2 + seed % 4
        if (n * d) % 2 or d >= n - 1:
            continue
        g = nx.random_regular_graph(d, n, seed=seed)
        a = nx.to_numpy_array(g, dtype=int)
        oracle = common_neighbor_params(a)
        try:
            got = verify_srg(a)
        except ValueError:
            got = None
        assert got == oracle
        checked += 1
    assert checked >= 60


@pytest.mark.criterion(9, "oracle-backed property suites")
def test_verify_srg_matches_brute_force_on_small_fixtures(steiner_centered, steiner_axial):
    graphs = [a for a in GRAPH_FIXTURES.values() if len(a) <= 16]
    graphs += [etf_to_srg_centroidal(e)[0] for e in (steiner_centered, steiner_axial)]
    graphs.append(etf_to_srg_traditional(steiner_centered)[0])
    for a in graphs:
        assert verify_srg(a) == common_neighbor_params(a)


@pytest.mark.criterion(9, "oracle-backed property suites")
def test_centroidal_type_equivalence_brute_force():
    count = 0
    for v in range(2, 41):
        for k, lam, mu in itertools.product(range(1, v - 1), range(v), range(v)):
            if lam >= k or mu > k or k * (k - lam - 1) != (v - k - 1) * mu:
                continue
            count += 1
            lhs = v == 4 * k - 2 * lam - 2 * mu
            rhs = 2 * mu * (v - 2 * k - 1) == k * (v - 2 * k - 2)
            assert lhs == rhs, (v, k, lam, mu)
    assert count > 1000


@pytest.mark.criterion(9, "oracle-backed property suites")
def test_complement_involutions_on_centroidal_fixtures():
    fixtures = {tuple(verify_srg(a)) for a in GRAPH_FIXTURES.values()}
    fixtures |= {(16, 6, 2, 2), (16, 10, 6, 6), (28, 12, 6, 4), (28, 15, 6, 10), (1128, 560, 316, 240)}
    centroidal = [SrgParams(*p) for p in sorted(fixtures) if is_centroidal_type(SrgParams(*p)).flag]
    assert len(centroidal) >= 5
    for p in centroidal:
        assert complement_params(complement_params(p)) == p
        hat = centroidal_complement_params(p)
        if hat is not None:
            assert centroidal_complement_params(hat) == p


# -- 10 ---------------------------------------------------------------------


@pytest.mark.criterion(10, "integrality conditions")
def test_integrality():
    r = integrality_report(6, 16)
    assert (r.inv_beta, r.inv_beta_tilde) == (3, 5)
    assert r.inv_beta_odd_integer and r.inv_beta_tilde_odd_integer
    assert integrality_report(3, 6).redundancy_two_perfect_square is False
    assert integrality_report(5, 10).redundancy_two_perfect_square is True


# -- 11 ---------------------------------------------------------------------


def _z2x4_translate_without_zero():
    ds = DIFFERENCE_SETS["z2x4_mcfarland"]
    shift = next(s for s in range(16) if 0 not in translate_difference_set(ds, s).elements)
    return harmonic_etf(translate_difference_set(ds, shift))


@pytest.mark.criterion(11, "sign search finds the all-ones vector, and nothing for the 3x6")
def test_sign_search(steiner_centered, steiner_axial):
    ones = lambda n: tuple([1] * n)  # noqa: E731
    centered = [steiner_centered, mercedes_benz(), _z2x4_translate_without_zero()]
    axial = [steiner_axial, harmonic_etf(DIFFERENCE_SETS["z2x4_mcfarland"])]
    for a in GRAPH_FIXTURES.values():
        p = verify_srg(a)
        if is_centroidal_type(p).flag and p.v <= 16:
            res = srg_to_etf_centroidal(a)
            (centered if res.mode == "centered" else axial).append(res.etf)
    start = time.perf_counter()
    for etf in centered:
        assert classify_centroidal(etf).kind is Centroidal.CENTERED
        assert ones(etf.n) in search_unimodular_sign(etf)[0]
    for etf in axial:
        assert classify_centroidal(etf).kind is Centroidal.AXIAL
        assert ones(etf.n) in search_unimodular_sign(etf)[1]
    null_hits, row_hits = search_unimodular_sign(icosahedral())
    assert null_hits == [] and row_hits == []
    assert time.perf_counter() - start < 10
