"""Strongly regular graphs: exact verification and parameter algebra."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .numeric import as_int_matrix, common_neighbor_counts, perfect_square_root


class SrgError(ValueError):
    pass


class SrgParams(NamedTuple):
    v: int
    k: int
    lam: int
    mu: int

    def __str__(self):
        return f"SRG({self.v},{self.k},{self.lam},{self.mu})"

    @classmethod
    def checked(cls, v, k, lam, mu) -> "SrgParams":
        """Build a nontrivial parameter set satisfying k(k-lam-1) = (v-k-1)mu."""
        vals = []
        for x in (v, k, lam, mu):
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise SrgError(f"non-integral SRG parameter {x}")
                x = x.numerator
            if int(x) != x:
                raise SrgError(f"non-integral SRG parameter {x}")
            vals.append(int(x))
        p = cls(*vals)
        if min(p) < 0:
            raise SrgError(f"{p} has a negative parameter")
        if not 0 < p.k < p.v - 1:
            raise SrgError(f"{p} is trivial (need 0 < k < v - 1)")
        if not parameter_relation(p):
            raise SrgError(f"{p} violates k(k - lambda - 1) = (v - k - 1) mu")
        return p


def parameter_relation(p: SrgParams) -> bool:
    v, k, lam, mu = p
    return k * (k - lam - 1) == (v - k - 1) * mu


def adjacency(a) -> np.ndarray:
    """Validate a symmetric 0/1 matrix with zero diagonal."""
    a = as_int_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise SrgError(f"adjacency matrix must be square, got {a.shape}")
    if not np.all((a == 0) | (a == 1)):
        raise SrgError("adjacency entries must be 0 or 1")
    if np.any(np.diag(a) != 0):
        raise SrgError("adjacency matrix must have zero diagonal")
    if not np.array_equal(a, a.T):
        raise SrgError("adjacency matrix must be symmetric")
    return a.astype(np.int64)


def verify_srg(a) -> SrgParams:
    """Exact check that A^2 = xA + yI + zJ; returns (v, y+z, x+z, z)."""
    a = adjacency(a)
    v = a.shape[0]
    degrees = a.sum(axis=1)
    if np.all(degrees == 0) or np.all(degrees == v - 1):
        raise SrgError("empty and complete graphs are excluded")
    if np.any(degrees != degrees[0]):
        raise SrgError("graph is not regular")
    sq = common_neighbor_counts(a)
    off = ~np.eye(v, dtype=bool)
    on_edges = set(np.unique(sq[(a == 1) & off]).tolist())
    off_edges = set(np.unique(sq[(a == 0) & off]).tolist())
    if len(on_edges) != 1 or len(off_edges) != 1:
        raise SrgError("A^2 is not in the span of A, I and J")
    (lam,), (mu,) = on_edges, off_edges
    k = int(degrees[0])
    # y + z = k on the diagonal; x + z on edges; z off edges
    z, x = mu, lam - mu
    y = k - z
    if not np.array_equal(sq, x * a + y * np.eye(v, dtype=np.int64) + z):
        raise SrgError("A^2 is not in the span of A, I and J")
    return SrgParams(v, y + z, x + z, z)


def common_neighbor_params(a) -> SrgParams | None:
    """Brute-force SRG test by counting common neighbours pair by pair."""
    a = adjacency(a)
    v = a.shape[0]
    nbrs = [set(np.flatnonzero(a[i]).tolist()) for i in range(v)]
    k = {len(s) for s in nbrs}
    if len(k) != 1:
        return None
    (k,) = k
    if k in (0, v - 1):
        return None
    lam, mu = set(), set()
    for i in range(v):
        for j in range(i + 1, v):
            (lam if j in nbrs[i] else mu).add(len(nbrs[i] & nbrs[j]))
    if len(lam) != 1 or len(mu) != 1:
        return None
    return SrgParams(v, k, lam.pop(), mu.pop())


def complement_params(p: SrgParams) -> SrgParams:
    v, k, lam, mu = p
    return SrgParams.checked(v, v - k - 1, v - 2 * k - 2 + mu, v - 2 * k + lam)


def graph_complement(a) -> np.ndarray:
    a = adjacency(a)
    v = a.shape[0]
    return np.ones((v, v), dtype=np.int64) - np.eye(v, dtype=np.int64) - a


class CentroidalType(NamedTuple):
    flag: bool
    branch: str | None  # "centered" when v-2k-1 > 0, "axial" when v-2k-1 < 0


def is_centroidal_type(p: SrgParams) -> CentroidalType:
    """Whether v = 4k - 2 lambda - 2 mu, and which sign v - 2k - 1 has."""
    v, k, lam, mu = p
    flag = v == 4 * k - 2 * lam - 2 * mu
    d = v - 2 * k - 1
    if flag:
        if d == 0:
            raise SrgError(f"{p}: v - 2k - 1 = 0 is impossible when v = 4k - 2 lambda - 2 mu")
        if 2 * mu * d != k * (d - 1):
            raise SrgError(f"{p}: mu formula fails; parameters are inconsistent")
        if k % d:
            raise SrgError(f"{p}: v - 2k - 1 does not divide k")
    branch = ("centered" if d > 0 else "axial") if flag else None
    return CentroidalType(flag, branch)


@dataclass(frozen=True)
class Feasibility:
    params: tuple[int, int, int, int]
    parameter_relation: bool
    eigenvalue_integrality: bool
    krein: bool
    absolute_bound: bool
    eigenvalues: tuple[float, float] | None = None
    multiplicities: tuple[float, float] | None = None

    @property
    def fails_krein(self) -> bool:
        return not self.krein

    @property
    def fails_absolute(self) -> bool:
        return not self.absolute_bound

    @property
    def passes(self) -> bool:
        return self.parameter_relation and self.eigenvalue_integrality and self.krein and self.absolute_bound


def feasibility(p) -> Feasibility:
    """Standard necessary conditions. A pass never asserts existence."""
    v, k, lam, mu = (int(x) for x in p)
    relation = k * (k - lam - 1) == (v - k - 1) * mu
    disc = (lam - mu) ** 2 + 4 * (k - mu)
    if disc <= 0:
        return Feasibility((v, k, lam, mu), relation, False, False, False)
    root = perfect_square_root(disc)
    numer = 2 * k + (v - 1) * (lam - mu)

    if root is not None:
        theta = Fraction(lam - mu + root, 2)
        tau = Fraction(lam - mu - root, 2)
        f = Fraction((v - 1) * root - numer, 2 * root)
        g = Fraction((v - 1) * root + numer, 2 * root)
        integral = f.denominator == 1 and g.denominator == 1 and f >= 0 and g >= 0
        slack = 0
    else:
        # irrational eigenvalues: only the conference case is admissible
        s = math.sqrt(disc)
        theta, tau = (lam - mu + s) / 2, (lam - mu - s) / 2
        f, g = ((v - 1) - numer / s) / 2, ((v - 1) + numer / s) / 2
        integral = numer == 0 and (v - 1) % 2 == 0
        slack = 1e-9 * (v + k) ** 3

    krein = (
        (theta + 1) * (k + theta + 2 * theta * tau) <= (k + theta) * (tau + 1) ** 2 + slack
        and (tau + 1) * (k + tau + 2 * theta * tau) <= (k + tau) * (theta + 1) ** 2 + slack
    )
    absolute = v <= f * (f + 3) / 2 + slack and v <= g * (g + 3) / 2 + slack
    return Feasibility(
        (v, k, lam, mu),
        relation,
        bool(integral),
        bool(krein),
        bool(absolute),
        (float(theta), float(tau)),
        (float(f), float(g)),
    )
