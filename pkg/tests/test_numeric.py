import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from etfforge.designs import hadamard
from etfforge.numeric import (
    DimensionError,
    common_neighbor_counts,
    conj_transpose,
    eigh,
    int_matmul,
    matmul,
    perfect_square_root,
    prime_power,
    row_space_complement_basis,
)
from conftest import harmonic_3x7_display

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


def test_matmul_small_cases():
    swap = np.array([[0, 1], [1, 0]])
    assert np.array_equal(matmul(np.eye(2), np.eye(2)), np.eye(2))
    assert np.array_equal(matmul(swap, swap), np.eye(2))
    h = hadamard(4).entries
    assert np.array_equal(matmul(h, h.T), 4 * np.eye(4))


def test_matmul_shape_error():
    with pytest.raises(DimensionError):
        matmul(np.ones((2, 3)), np.ones((2, 3)))


def test_conj_transpose():
    a = np.arange(6.0).reshape(2, 3)
    assert np.array_equal(conj_transpose(a), a.T)
    assert conj_transpose(np.array([[1j]]))[0, 0] == -1j
    phi = harmonic_3x7_display()
    assert np.array_equal(conj_transpose(conj_transpose(phi)), phi)


@settings(max_examples=40, deadline=None)
@given(arrays(np.float64, (3, 4), elements=finite), arrays(np.float64, (4, 2), elements=finite))
def test_conj_transpose_reverses_products(a, b):
    lhs = conj_transpose(matmul(a, b))
    rhs = matmul(conj_transpose(b), conj_transpose(a))
    assert np.allclose(lhs, rhs, atol=1e-9)


def test_eigh_examples():
    vals, _ = eigh(np.eye(3))
    assert np.allclose(vals, 1)
    vals, _ = eigh(np.ones((4, 4)))
    assert np.allclose(vals, [0, 0, 0, 4])
    phi = harmonic_3x7_display()
    vals, _ = eigh(phi.conj().T @ phi)
    assert np.allclose(vals, [0] * 4 + [7 / 3] * 3, atol=1e-9)


def test_eigh_rejects_non_hermitian():
    with pytest.raises(ValueError):
        eigh(np.array([[0.0, 1.0], [0.0, 0.0]]))


@pytest.mark.parametrize("size", [1, 5, 17, 64])
def test_eigh_reconstruction(size):
    rng = np.random.default_rng(size)
    x = rng.normal(size=(size, size)) + 1j * rng.normal(size=(size, size))
    g = x + x.conj().T
    vals, vecs = eigh(g)
    assert np.all(np.diff(vals) >= 0)
    recon = vecs @ np.diag(vals) @ vecs.conj().T
    assert np.max(np.abs(g - recon)) <= 10 * 1e-9 * np.max(np.abs(g))


def test_row_space_complement_basis():
    c = row_space_complement_basis(np.array([[1.0, 0.0]]))
    assert np.allclose(np.abs(c), [[0, 1]])
    phi = harmonic_3x7_display()
    c = row_space_complement_basis(phi)
    assert c.shape == (4, 7)
    assert np.max(np.abs(phi @ c.conj().T)) <= 1e-9
    stacked = np.vstack([phi / np.linalg.norm(phi, axis=1, keepdims=True), c])
    assert np.allclose(stacked @ stacked.conj().T, np.eye(7), atol=1e-9)
    with pytest.raises(ValueError):
        row_space_complement_basis(np.eye(3))


def test_int_matmul_exact_and_overflow_safe():
    a = np.array([[2**40, 1], [0, 1]], dtype=np.int64)
    prod = int_matmul(a, a)
    assert prod[0, 0] == 2**80
    assert int_matmul(np.eye(3, dtype=int), np.eye(3, dtype=int)).dtype == np.int64
    with pytest.raises(TypeError):
        int_matmul(np.ones((2, 2)), np.ones((2, 2)))


@pytest.mark.parametrize("v", [1, 7, 64, 65, 130])
def test_common_neighbor_counts_matches_matmul(v):
    rng = np.random.default_rng(v)
    a = np.triu(rng.integers(0, 2, size=(v, v)), 1)
    a = a + a.T
    assert np.array_equal(common_neighbor_counts(a), a @ a)


def test_integer_helpers():
    assert perfect_square_root(64) == 8
    assert perfect_square_root(63) is None
    assert perfect_square_root(-4) is None
    assert prime_power(27) == (3, 3)
    assert prime_power(12) is None
    assert prime_power(1) is None
