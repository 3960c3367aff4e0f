"""Equiangular tight frames: verification, centroidal symmetry and transformations."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .numeric import (
    DEFAULT_TOL,
    as_matrix,
    eigh,
    is_real,
    max_abs,
    perfect_square_root,
    realify,
    row_space_complement_basis,
)


class EtfError(ValueError):
    """Raised when an input is not a valid frame for the requested operation."""


@dataclass(frozen=True)
class Etf:
    """A frame of ``n`` unit vectors in F^m, stored as its m x n synthesis matrix.

    Columns must have unit norm; ``field == "real"`` forces real entries.
    Use :func:`verify_etf` to check tightness and equiangularity.
    """

    synthesis: np.ndarray
    field: str = "real"
    provenance: str = ""
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        if self.field not in ("real", "complex"):
            raise EtfError(f"unknown field {self.field!r}")
        phi = as_matrix(self.synthesis)
        if self.field == "real":
            if not is_real(phi, self.tol):
                raise EtfError("real frame has entries with nonzero imaginary part")
            phi = np.ascontiguousarray(phi.real)
        m, n = phi.shape
        if m > n:
            raise EtfError(f"need m <= n, got {m}x{n}")
        norms = np.sum(np.abs(phi) ** 2, axis=0)
        if max_abs(norms - 1.0) > self.tol:
            raise EtfError("frame vectors must have unit norm")
        phi = phi.copy()
        phi.setflags(write=False)
        object.__setattr__(self, "synthesis", phi)

    @classmethod
    def from_matrix(cls, phi, provenance: str = "", tol: float = DEFAULT_TOL) -> "Etf":
        """Build an Etf, tagging it real when every imaginary part vanishes."""
        phi = as_matrix(phi)
        field = "real" if is_real(phi, tol) else "complex"
        return cls(realify(phi, tol), field, provenance, tol)

    @property
    def m(self) -> int:
        return self.synthesis.shape[0]

    @property
    def n(self) -> int:
        return self.synthesis.shape[1]

    @property
    def gram(self) -> np.ndarray:
        phi = self.synthesis
        return phi.conj().T @ phi

    def replace(self, synthesis, provenance: str | None = None) -> "Etf":
        field = "real" if self.field == "real" and is_real(synthesis, self.tol) else "complex"
        return Etf(synthesis, field, self.provenance if provenance is None else provenance, self.tol)


@dataclass(frozen=True)
class EtfReport:
    is_tight: bool
    alpha: float
    is_equiangular: bool
    beta_observed: float
    welch_bound: float
    meets_welch: bool
    max_tightness_residual: float
    max_equiangularity_residual: float


class Centroidal(enum.Enum):
    CENTERED = "Centered"
    AXIAL = "Axial"
    NEITHER = "Neither"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class CentroidalClass:
    kind: Centroidal
    gram_row_sum_residual: float
    exact: bool = False


def welch_bound(m: int, n: int) -> float:
    if n < 2 or m < 1 or m > n:
        raise ValueError(f"Welch bound needs 1 <= m <= n and n >= 2, got m={m}, n={n}")
    return math.sqrt((n - m) / (m * (n - 1)))


def exact_beta(m: int, n: int) -> Fraction | None:
    """The Welch bound as an exact fraction, when m(n-1)/(n-m) is a perfect square."""
    if m >= n:
        return None
    inv_sq = Fraction(m * (n - 1), n - m)
    num = perfect_square_root(inv_sq.numerator)
    den = perfect_square_root(inv_sq.denominator)
    if num is None or den is None:
        return None
    return Fraction(den, num)


def _matrix_of(etf) -> np.ndarray:
    return etf.synthesis if isinstance(etf, Etf) else as_matrix(etf)


def coherence(etf) -> float:
    phi = _matrix_of(etf)
    n = phi.shape[1]
    if n < 2:
        raise EtfError("coherence needs at least two vectors")
    g = np.abs(phi.conj().T @ phi)
    np.fill_diagonal(g, 0.0)
    return float(g.max())


def verify_etf(etf, tol: float = DEFAULT_TOL) -> EtfReport:
    """Check tightness, equiangularity and Welch optimality. Accepts an Etf or raw matrix."""
    phi = _matrix_of(etf)
    m, n = phi.shape
    alpha = n / m
    frame_op = phi @ phi.conj().T
    tight_res = max_abs(frame_op - alpha * np.eye(m))
    g = phi.conj().T @ phi
    diag_res = max_abs(np.diag(g) - 1.0)
    moduli = np.abs(g[~np.eye(n, dtype=bool)])
    if n >= 2:
        beta_obs = float(moduli.mean())
        angle_res = max(diag_res, max_abs(moduli - beta_obs))
        welch = welch_bound(m, n) if m <= n else float("nan")
    else:
        beta_obs, angle_res, welch = 0.0, diag_res, 0.0
    is_tight = tight_res <= tol
    is_equi = angle_res <= tol
    meets = is_tight and is_equi and m <= n and abs(beta_obs - welch) <= tol
    return EtfReport(is_tight, alpha, is_equi, beta_obs, welch, meets, tight_res, angle_res)


def sign_pattern(gram: np.ndarray, beta: float, tol: float = DEFAULT_TOL) -> np.ndarray | None:
    """Snap a real Gram matrix's off-diagonal entries to +-1 (0 on the diagonal).

    Returns ``None`` if some entry is not within ``tol`` of ``+beta`` or ``-beta``.
    """
    g = np.asarray(gram)
    if np.iscomplexobj(g):
        if not is_real(g, tol):
            return None
        g = g.real
    n = g.shape[0]
    off = ~np.eye(n, dtype=bool)
    plus = np.abs(g - beta) <= tol
    minus = np.abs(g + beta) <= tol
    if beta <= tol or not np.all((plus | minus)[off]):
        return None
    signs = np.where(plus, 1, -1).astype(np.int64)
    np.fill_diagonal(signs, 0)
    return signs


def classify_centroidal(etf: Etf, tol: float = DEFAULT_TOL) -> CentroidalClass:
    report = verify_etf(etf, tol)
    if not report.meets_welch:
        raise EtfError("input fails ETF verification")
    m, n = etf.m, etf.n
    g = etf.gram
    row_sums = g.sum(axis=1)
    centered_res = max_abs(row_sums)
    axial_res = max_abs(row_sums - n / m)

    beta = exact_beta(m, n)
    if etf.field == "real" and beta is not None:
        signs = sign_pattern(g, float(beta), tol)
        if signs is not None:
            # every row of G is 1 + beta * (row of signs)
            sums = {1 + beta * int(s) for s in signs.sum(axis=1)}
            if sums == {0}:
                return CentroidalClass(Centroidal.CENTERED, centered_res, exact=True)
            if sums == {Fraction(n, m)}:
                return CentroidalClass(Centroidal.AXIAL, axial_res, exact=True)
            return CentroidalClass(Centroidal.NEITHER, min(centered_res, axial_res), exact=True)

    if centered_res <= n * tol:
        return CentroidalClass(Centroidal.CENTERED, centered_res)
    if axial_res <= n * tol:
        return CentroidalClass(Centroidal.AXIAL, axial_res)
    return CentroidalClass(Centroidal.NEITHER, min(centered_res, axial_res))


def transform(etf: Etf, unitary=None, permutation: Sequence[int] | None = None) -> Etf:
    """Columns become ``U @ phi[:, perm[i]]`` (0-based permutation)."""
    phi = etf.synthesis
    m, n = phi.shape
    if unitary is None:
        unitary = np.eye(m)
    u = as_matrix(unitary)
    if u.shape != (m, m):
        raise EtfError(f"unitary must be {m}x{m}, got {u.shape}")
    if max_abs(u.conj().T @ u - np.eye(m)) > etf.tol:
        raise EtfError("matrix is not unitary within tolerance")
    perm = list(range(n)) if permutation is None else [int(i) for i in permutation]
    if sorted(perm) != list(range(n)):
        raise EtfError("permutation is not a bijection on the frame indices")
    return etf.replace(u @ phi[:, perm])


def sign_vectors(etf: Etf, z: Sequence[complex]) -> Etf:
    z = np.asarray(z)
    if z.shape != (etf.n,):
        raise EtfError(f"need {etf.n} signs, got shape {z.shape}")
    if max_abs(np.abs(z) - 1.0) > etf.tol:
        raise EtfError("signing scalars must be unimodular")
    if etf.field == "real":
        if not is_real(z, etf.tol):
            raise EtfError("real frames can only be signed by +-1")
        z = np.sign(z.real)
    return etf.replace(etf.synthesis * z[None, :])


def canonical_sign_first(etf: Etf) -> Etf:
    """Negate columns so every inner product with the first vector is positive."""
    if etf.field != "real":
        raise EtfError("canonical signing is defined for real frames only")
    first = etf.synthesis[:, 0] @ etf.synthesis
    if np.any(np.abs(first[1:]) <= etf.tol):
        raise EtfError("some vector is orthogonal to the first; cannot sign")
    z = np.where(first < 0, -1.0, 1.0)
    z[0] = 1.0
    return etf.replace(etf.synthesis * z[None, :])


def naimark_complement(etf: Etf, tol: float = DEFAULT_TOL) -> Etf:
    """An (n-m) x n ETF with unit-norm columns whose Gram complements the input's."""
    m, n = etf.m, etf.n
    if m >= n:
        raise EtfError("Naimark complement needs m < n")
    basis = row_space_complement_basis(etf.synthesis, tol)
    phi = math.sqrt(n / (n - m)) * basis
    if etf.field == "real":
        phi = phi.real
    return Etf(phi, etf.field, f"naimark({etf.provenance})", etf.tol)


def gram_to_synthesis(g, tol: float = DEFAULT_TOL, provenance: str = "") -> Etf:
    """Factor an ETF Gram matrix as Phi* Phi with Phi = sqrt(alpha) V*."""
    g = as_matrix(g)
    n = g.shape[0]
    values, vectors = eigh(g, tol)
    if max_abs(np.diag(g) - 1.0) > tol:
        raise EtfError("Gram matrix must have unit diagonal")
    off = np.abs(g[~np.eye(n, dtype=bool)])
    if off.size and max_abs(off - off.mean()) > tol:
        raise EtfError("off-diagonal entries do not have constant modulus")
    alpha = float(values[-1])
    m_real = n / alpha
    m = round(m_real)
    if abs(m_real - m) > tol * n:
        raise EtfError(f"Gram trace / alpha = {m_real} is not an integer")
    if max_abs(g @ g - alpha * g) > tol * n:
        raise EtfError("G^2 != alpha G: not the Gram matrix of a tight frame")
    top = vectors[:, n - m :]
    phi = math.sqrt(alpha) * top.conj().T
    return Etf.from_matrix(phi, provenance, tol)


def search_unimodular_sign(
    etf: Etf, max_n: int = 24, tol: float = DEFAULT_TOL, chunk: int = 1 << 14
) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Exhaustively test every z in {+-1}^n with z_1 = +1.

    Returns ``(null_space_hits, row_space_hits)``: signings making the frame
    centered (``Phi z == 0``) and axial (``z`` in the row space of ``Phi``).
    Both lists are sorted.
    """
    if etf.field != "real":
        raise EtfError("sign search is defined for real frames only")
    m, n = etf.m, etf.n
    if n > max_n:
        raise EtfError(f"n = {n} exceeds the search cap of {max_n}")
    phi = etf.synthesis
    proj = (m / n) * (phi.T @ phi)
    bits = np.arange(n - 1, dtype=np.int64)
    null_hits, row_hits = [], []
    total = 1 << (n - 1)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        tail = 1 - 2 * ((idx[:, None] >> bits[None, :]) & 1)
        z = np.hstack([np.ones((idx.size, 1), dtype=np.int64), tail]).astype(np.float64)
        in_null = np.max(np.abs(z @ phi.T), axis=1) <= n * tol
        in_row = np.max(np.abs(z @ proj - z), axis=1) <= n * tol
        null_hits.extend(tuple(int(x) for x in row) for row in z[in_null])
        row_hits.extend(tuple(int(x) for x in row) for row in z[in_row])
    return sorted(null_hits), sorted(row_hits)
