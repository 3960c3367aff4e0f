"""Steiner systems, Hadamard matrices, unimodular simplices and Steiner ETFs."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Sequence

import numpy as np

from .frames import Etf, EtfError
from .numeric import DEFAULT_TOL, as_matrix, int_matmul, max_abs, prime_power


class BibdError(ValueError):
    pass


class HadamardError(ValueError):
    pass


@dataclass(frozen=True)
class Bibd:
    """A BIBD(v, k, 1) on points 1..v. Block order is significant."""

    v: int
    k: int
    blocks: tuple[tuple[int, ...], ...]

    @property
    def r(self) -> int:
        return (self.v - 1) // (self.k - 1)

    @property
    def b(self) -> int:
        return len(self.blocks)

    def incidence(self) -> np.ndarray:
        """The b x v 0/1 incidence matrix, rows in block order."""
        inc = np.zeros((self.b, self.v), dtype=np.int64)
        for i, block in enumerate(self.blocks):
            inc[i, [p - 1 for p in block]] = 1
        return inc

    def reordered(self, order: Sequence[int]) -> "Bibd":
        return Bibd(self.v, self.k, tuple(self.blocks[i] for i in order))


def verify_bibd(v: int, blocks: Sequence[Sequence[int]]) -> Bibd:
    if not blocks:
        raise BibdError("a design needs at least one block")
    blocks = tuple(tuple(sorted(int(p) for p in blk)) for blk in blocks)
    sizes = {len(blk) for blk in blocks}
    if len(sizes) != 1:
        raise BibdError(f"blocks have nonuniform sizes {sorted(sizes)}")
    (k,) = sizes
    if not 2 <= k < v:
        raise BibdError(f"need 2 <= k < v, got k={k}, v={v}")
    for blk in blocks:
        if len(set(blk)) != k or blk[0] < 1 or blk[-1] > v:
            raise BibdError(f"block {list(blk)} is not a {k}-subset of 1..{v}")
    if (v - 1) % (k - 1) or (v * (v - 1)) % (k * (k - 1)):
        raise BibdError(f"no BIBD({v},{k},1) exists: r or b is not an integer")

    covered: dict[tuple[int, int], int] = {}
    for blk in blocks:
        for pair in combinations(blk, 2):
            covered[pair] = covered.get(pair, 0) + 1
    for pair, count in covered.items():
        if count > 1:
            raise BibdError(f"pair {pair} lies in {count} blocks")
    if len(covered) != v * (v - 1) // 2:
        missing = next(p for p in combinations(range(1, v + 1), 2) if p not in covered)
        raise BibdError(f"pair {missing} lies in no block")

    r = (v - 1) // (k - 1)
    replication = np.bincount([p for blk in blocks for p in blk], minlength=v + 1)[1:]
    if np.any(replication != r):
        raise BibdError(f"replication numbers {sorted(set(replication.tolist()))} differ from r={r}")
    return Bibd(v, k, blocks)


def find_parallel_class(design: Bibd) -> tuple[int, ...] | None:
    """Block indices (0-based, ascending) of the first parallel class found, or None.

    Backtracks on the lowest uncovered point, trying blocks in index order.
    """
    v, k = design.v, design.k
    if v % k:
        return None
    through: dict[int, list[int]] = {p: [] for p in range(1, v + 1)}
    for i, blk in enumerate(design.blocks):
        for p in blk:
            through[p].append(i)
    sets = [frozenset(blk) for blk in design.blocks]

    def search(uncovered: frozenset, chosen: list[int]):
        if not uncovered:
            return tuple(sorted(chosen))
        p = min(uncovered)
        for i in through[p]:
            if sets[i] <= uncovered:
                found = search(uncovered - sets[i], chosen + [i])
                if found is not None:
                    return found
        return None

    return search(frozenset(range(1, v + 1)), [])


def round_robin_bibd(v: int) -> Bibd:
    """The round-robin tournament RBIBD(v, 2, 1) for even v, listed round by round."""
    if v < 4 or v % 2:
        raise BibdError(f"round-robin schedule needs even v >= 4, got {v}")
    t = v - 1
    blocks = []
    for rnd in range(t):
        blocks.append((rnd + 1, v))
        for j in range(1, v // 2):
            a, b = (rnd - j) % t, (rnd + j) % t
            blocks.append(tuple(sorted((a + 1, b + 1))))
    return verify_bibd(v, blocks)


# -- finite fields (for Paley constructions) --------------------------------


@lru_cache(maxsize=None)
def _gf_tables(q: int) -> tuple[np.ndarray, np.ndarray]:
    """Subtraction and multiplication tables of GF(q), elements coded base p."""
    pp = prime_power(q)
    if pp is None:
        raise ValueError(f"{q} is not a prime power")
    p, e = pp
    digits = list(product(range(p), repeat=e))  # most significant first
    code = {d: i for i, d in enumerate(digits)}
    sub = np.array(
        [[code[tuple((x - y) % p for x, y in zip(a, b))] for b in digits] for a in digits],
        dtype=np.int64,
    )
    if e == 1:
        mul = np.outer(np.arange(p), np.arange(p)) % p
        return sub, mul

    def polymul(a, b, f):
        # coefficient lists, lowest degree first; f is monic of degree e
        prod_ = [0] * (2 * e - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod_[i + j] = (prod_[i + j] + x * y) % p
        for deg in range(2 * e - 2, e - 1, -1):
            c = prod_[deg]
            if c:
                for i in range(e):
                    prod_[deg - e + i] = (prod_[deg - e + i] - c * f[i]) % p
                prod_[deg] = 0
        return tuple(prod_[:e])

    low = [tuple(reversed(d)) for d in digits]
    for f in product(range(p), repeat=e):
        if f[0] == 0:
            continue
        mul = np.array(
            [[code[tuple(reversed(polymul(a, b, f)))] for b in low] for a in low],
            dtype=np.int64,
        )
        if np.all(mul[1:, 1:] != 0):
            return sub, mul
    raise AssertionError(f"no irreducible polynomial found for GF({q})")


def _quadratic_character(q: int) -> np.ndarray:
    """Jacobsthal matrix Q[a, b] = chi(a - b), chi the quadratic character of GF(q)."""
    sub, mul = _gf_tables(q)
    squares = set(np.diag(mul)[1:].tolist())
    chi = np.array([0] + [1 if x in squares else -1 for x in range(1, q)], dtype=np.int64)
    return chi[sub]


# -- Hadamard matrices ------------------------------------------------------


@dataclass(frozen=True)
class HadamardMatrix:
    order: int
    entries: np.ndarray
    recipe: str = ""

    def __post_init__(self):
        h = np.asarray(self.entries, dtype=np.int64)
        if h.shape != (self.order, self.order) or not np.all(np.abs(h) == 1):
            raise HadamardError("Hadamard matrix must be a square +-1 matrix of the stated order")
        if not np.array_equal(int_matmul(h, h.T), self.order * np.eye(self.order, dtype=np.int64)):
            raise HadamardError("rows are not orthogonal: H H^T != order * I")
        h = h.copy()
        h.setflags(write=False)
        object.__setattr__(self, "entries", h)


def _sylvester(order: int) -> np.ndarray:
    h = np.array([[1]], dtype=np.int64)
    while h.shape[0] < order:
        h = np.block([[h, h], [h, -h]])
    return h


def _paley1(q: int) -> np.ndarray:
    jac = _quadratic_character(q)
    s = np.zeros((q + 1, q + 1), dtype=np.int64)
    s[0, 1:] = 1
    s[1:, 0] = -1
    s[1:, 1:] = jac
    return s + np.eye(q + 1, dtype=np.int64)


def _paley2(q: int) -> np.ndarray:
    jac = _quadratic_character(q)
    c = np.zeros((q + 1, q + 1), dtype=np.int64)
    c[0, 1:] = 1
    c[1:, 0] = 1
    c[1:, 1:] = jac
    return np.kron(c, np.array([[1, -1], [-1, -1]])) + np.kron(
        np.eye(q + 1, dtype=np.int64), np.array([[1, 1], [1, -1]])
    )


@lru_cache(maxsize=None)
def _hadamard_entries(order: int) -> tuple[np.ndarray, str]:
    if order == 1:
        return np.array([[1]], dtype=np.int64), "trivial"
    if order == 2 or (order & (order - 1)) == 0:
        return _sylvester(order), "sylvester"
    if order % 4:
        raise HadamardError(f"no Hadamard matrix of order {order} (order must be 1, 2 or 0 mod 4)")
    q = order - 1
    if prime_power(q) and q % 4 == 3:
        return _paley1(q), f"paley1(q={q})"
    q = order // 2 - 1
    if prime_power(q) and q % 4 == 1:
        return _paley2(q), f"paley2(q={q})"
    for a in range(2, math.isqrt(order) + 1):
        if order % a:
            continue
        try:
            ha, ra = _hadamard_entries(a)
            hb, rb = _hadamard_entries(order // a)
        except HadamardError:
            continue
        return np.kron(ha, hb), f"kron({ra}, {rb})"
    raise HadamardError(f"order {order} is not constructible by the implemented recipes")


def hadamard(order: int) -> HadamardMatrix:
    """Sylvester, Paley I/II or a Kronecker product of these."""
    entries, recipe = _hadamard_entries(int(order))
    return HadamardMatrix(int(order), entries, recipe)


def dft_matrix(order: int) -> np.ndarray:
    """The order x order discrete Fourier transform, a complex Hadamard matrix."""
    k = np.arange(order)
    return np.exp(2j * np.pi * np.mod(np.outer(k, k), order) / order)


# -- simplices and Steiner ETFs ---------------------------------------------


@dataclass(frozen=True)
class UnimodularSimplex:
    entries: np.ndarray

    def __post_init__(self):
        s = as_matrix(self.entries)
        r, cols = s.shape
        if cols != r + 1:
            raise ValueError(f"simplex must be r x (r+1), got {s.shape}")
        if max_abs(np.abs(s) - 1.0) > DEFAULT_TOL:
            raise ValueError("simplex entries must be unimodular")
        if max_abs(s @ s.conj().T - (r + 1) * np.eye(r)) > DEFAULT_TOL * (r + 1):
            raise ValueError("simplex rows must be orthogonal with squared norm r + 1")
        s = s.copy()
        s.setflags(write=False)
        object.__setattr__(self, "entries", s)

    @property
    def r(self) -> int:
        return self.entries.shape[0]


def simplex_from_hadamard(h, removed_row: int) -> UnimodularSimplex:
    """Normalize columns so row 1 is all ones, then delete ``removed_row`` (1-based)."""
    if isinstance(h, HadamardMatrix):
        h = h.entries
    h = as_matrix(h)
    size = h.shape[0]
    if h.shape != (size, size):
        raise HadamardError("Hadamard matrix must be square")
    if max_abs(np.abs(h) - 1.0) > DEFAULT_TOL or max_abs(h @ h.conj().T - size * np.eye(size)) > DEFAULT_TOL * size:
        raise HadamardError("input is not a (complex) Hadamard matrix")
    if not 1 <= removed_row <= size:
        raise ValueError(f"removed_row must lie in 1..{size}, got {removed_row}")
    h = h / h[0:1, :]
    if np.iscomplexobj(h) and max_abs(h.imag) <= DEFAULT_TOL:
        h = h.real
    keep = [i for i in range(size) if i != removed_row - 1]
    return UnimodularSimplex(h[keep])


def steiner_etf(design: Bibd, simplex: UnimodularSimplex, mode: str = "centered") -> Etf:
    """The b x v(r+1) Steiner ETF: each 1 in incidence column p becomes a row of S.

    Within a column the ones take rows 1..r of S in increasing block order.
    ``mode="axial"`` moves a parallel class to the top and needs S's first row
    to be all ones; ``mode="centered"`` needs S's rows to sum to zero, which
    makes every frame vector block sum to zero.
    """
    s = simplex.entries
    r = design.r
    if simplex.r != r:
        raise EtfError(f"simplex has r={simplex.r}, design has r={r}")
    if mode == "centered":
        if max_abs(s.sum(axis=1)) > DEFAULT_TOL * r:
            raise EtfError("centered mode needs a simplex with zero row sums")
    elif mode == "axial":
        if max_abs(s[0] - 1.0) > DEFAULT_TOL:
            raise EtfError("axial mode needs a simplex whose first row is all ones")
        pc = find_parallel_class(design)
        if pc is None:
            raise EtfError("axial mode needs a parallel class, and this design has none")
        rest = [i for i in range(design.b) if i not in set(pc)]
        design = design.reordered(list(pc) + rest)
    else:
        raise ValueError(f"unknown Steiner mode {mode!r}")

    inc = design.incidence()
    phi = np.zeros((design.b, design.v * (r + 1)), dtype=s.dtype)
    for p in range(design.v):
        rows = np.flatnonzero(inc[:, p])
        phi[rows, p * (r + 1) : (p + 1) * (r + 1)] = s
    label = f"steiner BIBD({design.v},{design.k},1) {mode}"
    return Etf.from_matrix(phi / math.sqrt(r), label)
