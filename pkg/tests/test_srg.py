import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from etfforge.srg import (
    SrgError,
    SrgParams,
    adjacency,
    common_neighbor_params,
    complement_params,
    feasibility,
    graph_complement,
    is_centroidal_type,
    verify_srg,
)
from conftest import GRAPH_FIXTURES, lattice_graph, paley_graph


def test_checked_parameters():
    assert SrgParams.checked(16, 6, 2, 2) == (16, 6, 2, 2)
    with pytest.raises(SrgError):
        SrgParams.checked(16, 6, 2, 3)
    with pytest.raises(SrgError):
        SrgParams.checked(5, 4, 3, 0)
    assert str(SrgParams(5, 2, 0, 1)) == "SRG(5,2,0,1)"


def test_adjacency_validation():
    with pytest.raises(SrgError):
        adjacency([[0, 1], [0, 0]])
    with pytest.raises(SrgError):
        adjacency([[1, 0], [0, 0]])
    with pytest.raises(SrgError):
        adjacency([[0, 2], [2, 0]])
    with pytest.raises(TypeError):
        adjacency(np.zeros((2, 2)))


def test_verify_srg_examples(steiner_centered):
    assert verify_srg(paley_graph(5)) == (5, 2, 0, 1)
    path = np.diag([1, 1, 1], 1)
    with pytest.raises(SrgError, match="regular"):
        verify_srg(path + path.T)
    with pytest.raises(SrgError):
        verify_srg(np.zeros((4, 4), dtype=int))


EXPECTED = {
    "C5": (5, 2, 0, 1),
    "L3": (9, 4, 1, 2),
    "petersen": (10, 3, 0, 1),
    "paley13": (13, 6, 2, 3),
    "T6": (15, 8, 4, 4),
    "L4": (16, 6, 2, 2),
    "L4c": (16, 9, 4, 6),
    "clebsch": (16, 5, 0, 2),
    "paley17": (17, 8, 3, 4),
    "T7": (21, 10, 5, 4),
    "L5": (25, 8, 3, 2),
    "T8": (28, 12, 6, 4),
    "T8c": (28, 15, 6, 10),
    "paley29": (29, 14, 6, 7),
    "L6": (36, 10, 4, 2),
    "L6c": (36, 25, 16, 20),
}


@pytest.mark.parametrize("name", sorted(GRAPH_FIXTURES))
def test_graph_fixtures(name):
    a = GRAPH_FIXTURES[name]
    p = verify_srg(a)
    assert p == EXPECTED[name]
    assert p == common_neighbor_params(a)
    assert verify_srg(graph_complement(a)) == complement_params(p)


def test_complements():
    assert complement_params(SrgParams(16, 6, 2, 2)) == (16, 9, 4, 6)
    assert complement_params(SrgParams(28, 12, 6, 4)) == (28, 15, 6, 10)
    c5 = paley_graph(5)
    comp = graph_complement(c5)
    assert verify_srg(comp) == (5, 2, 0, 1)
    assert np.array_equal(graph_complement(comp), c5)
    assert verify_srg(graph_complement(lattice_graph(4))) == (16, 9, 4, 6)


def test_centroidal_type():
    assert is_centroidal_type(SrgParams(16, 6, 2, 2)) == (True, "centered")
    assert is_centroidal_type(SrgParams(28, 18, 12, 10)) == (True, "axial")
    assert is_centroidal_type(SrgParams(15, 8, 4, 4)) == (False, None)


def test_feasibility_examples():
    assert feasibility((5, 2, 0, 1)).passes
    for p in [(28, 18, 12, 10), (1128, 644, 400, 324)]:
        f = feasibility(p)
        assert f.parameter_relation and not f.passes
        assert f.fails_krein or f.fails_absolute


@pytest.mark.parametrize("name", sorted(GRAPH_FIXTURES))
def test_feasibility_passes_on_existing_graphs(name):
    assert feasibility(EXPECTED[name]).passes


def _relation_tuples(max_v):
    out = []
    for v in range(4, max_v + 1):
        for k in range(1, v - 1):
            for lam in range(k):
                for mu in range(1, k + 1):
                    # keep tuples whose complement parameters are nonnegative too
                    if k * (k - lam - 1) == (v - k - 1) * mu and v - 2 * k - 2 + mu >= 0 and v - 2 * k + lam >= 0:
                        out.append(SrgParams(v, k, lam, mu))
    return out


RELATION_TUPLES = _relation_tuples(60)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(RELATION_TUPLES))
def test_complement_algebra(p):
    c = complement_params(p)
    assert complement_params(c) == p
    ctype, cctype = is_centroidal_type(p), is_centroidal_type(c)
    assert ctype.flag == cctype.flag
    assert (c.v - 2 * c.k - 1) == -(p.v - 2 * p.k - 1)
    if ctype.flag:
        assert 2 * p.mu * (p.v - 2 * p.k - 1) == p.k * (p.v - 2 * p.k - 2)
