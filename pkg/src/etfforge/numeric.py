"""Dense linear algebra kernel.

Floating matrices are plain ``numpy`` arrays (``float64`` or ``complex128``);
exact integer matrices are ``int64`` arrays whose products are guarded
against overflow, falling back to Python integers (``dtype=object``) when a
product could exceed 62 bits.
"""

from __future__ import annotations

import math

import numpy as np

DEFAULT_TOL = 1e-9

_INT64_SAFE = 2**62


class DimensionError(ValueError):
    """Raised when matrix shapes are not conformable."""


def as_matrix(a) -> np.ndarray:
    """Coerce to a 2-D floating array, keeping complex entries complex."""
    arr = np.asarray(a)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise DimensionError(f"expected a non-empty 2-D matrix, got shape {arr.shape}")
    if np.iscomplexobj(arr):
        return arr.astype(np.complex128)
    return arr.astype(np.float64)


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def conj_transpose(a) -> np.ndarray:
    return as_matrix(a).conj().T


def is_real(a, tol: float = DEFAULT_TOL) -> bool:
    arr = np.asarray(a)
    return not np.iscomplexobj(arr) or bool(np.max(np.abs(arr.imag), initial=0.0) <= tol)


def realify(a, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Drop imaginary parts that are zero within ``tol``."""
    arr = as_matrix(a)
    if np.iscomplexobj(arr) and is_real(arr, tol):
        return np.ascontiguousarray(arr.real)
    return arr


def max_abs(a) -> float:
    return float(np.max(np.abs(a), initial=0.0))


def eigh(g, tol: float = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a self-adjoint matrix, eigenvalues ascending."""
    g = as_matrix(g)
    if g.shape[0] != g.shape[1]:
        raise DimensionError(f"eigh needs a square matrix, got {g.shape}")
    if max_abs(g - g.conj().T) > tol:
        raise ValueError("matrix is not self-adjoint within tolerance")
    herm = (g + g.conj().T) / 2
    values, vectors = np.linalg.eigh(herm)
    return values, vectors


def row_space_complement_basis(phi, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal rows spanning the orthogonal complement of ``phi``'s row space.

    The returned ``(n-m) x n`` matrix ``c`` satisfies ``phi @ c.conj().T == 0``.
    """
    phi = as_matrix(phi)
    m, n = phi.shape
    if m >= n:
        raise ValueError(f"need m < n for a proper complement, got {m}x{n}")
    _, s, vh = np.linalg.svd(phi, full_matrices=True)
    if s[-1] <= tol:
        raise ValueError("input does not have full row rank within tolerance")
    return vh[m:]


# -- exact integer matrices -------------------------------------------------


def as_int_matrix(a) -> np.ndarray:
    arr = np.asarray(a)
    if arr.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got shape {arr.shape}")
    if arr.dtype == object:
        if not all(isinstance(x, (int, np.integer)) for x in arr.flat):
            raise TypeError("integer matrix has non-integer entries")
        return arr
    if not np.issubdtype(arr.dtype, np.integer):
        if np.issubdtype(arr.dtype, np.bool_):
            return arr.astype(np.int64)
        raise TypeError(f"expected integer entries, got dtype {arr.dtype}")
    return arr.astype(np.int64)


def int_matmul(a, b) -> np.ndarray:
    """Exact integer product; switches to Python integers if int64 could overflow."""
    a, b = as_int_matrix(a), as_int_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    if a.dtype != object and b.dtype != object:
        bound = int(np.max(np.abs(a), initial=0)) * int(np.max(np.abs(b), initial=0)) * a.shape[1]
        if bound < _INT64_SAFE:
            return a @ b
    return a.astype(object) @ b.astype(object)


def common_neighbor_counts(adj01) -> np.ndarray:
    """Exact ``A @ A`` for a symmetric 0/1 matrix via bit-packed popcounts."""
    a = np.asarray(adj01)
    v = a.shape[0]
    packed = np.packbits(a.astype(np.uint8), axis=1)
    width = -(-packed.shape[1] // 8) * 8
    words = np.zeros((v, width), dtype=np.uint8)
    words[:, : packed.shape[1]] = packed
    words = words.view(np.uint64)
    out = np.empty((v, v), dtype=np.int64)
    for i in range(v):
        out[i] = np.bitwise_count(words[i] & words).sum(axis=1)
    return out


# -- integer helpers --------------------------------------------------------


def perfect_square_root(x) -> int | None:
    """Integer square root of ``x`` if ``x`` is a perfect square, else ``None``."""
    if x < 0 or int(x) != x:
        return None
    x = int(x)
    r = math.isqrt(x)
    return r if r * r == x else None


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, e)`` with ``q == p**e`` for prime ``p``, or ``None``."""
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e = 0
    while q % p == 0:
        q //= p
        e += 1
    return (p, e) if q == 1 else None
