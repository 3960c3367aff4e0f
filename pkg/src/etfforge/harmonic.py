"""Finite abelian groups, difference sets and harmonic ETFs."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Sequence

import numpy as np

from .frames import Etf, EtfError
from .numeric import prime_power


@dataclass(frozen=True)
class AbelianGroup:
    """Z_{d1} x ... x Z_{dt}; elements are mixed-radix tuples indexed lexicographically."""

    cyclic_orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(d) for d in self.cyclic_orders)
        if not orders or any(d < 2 for d in orders):
            raise ValueError(f"cyclic orders must all be >= 2, got {self.cyclic_orders}")
        object.__setattr__(self, "cyclic_orders", orders)

    @property
    def order(self) -> int:
        return math.prod(self.cyclic_orders)

    def elements(self) -> list[tuple[int, ...]]:
        return list(product(*(range(d) for d in self.cyclic_orders)))

    def element(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < self.order:
            raise IndexError(f"element index {index} outside group of order {self.order}")
        digits = []
        for d in reversed(self.cyclic_orders):
            index, r = divmod(index, d)
            digits.append(r)
        return tuple(reversed(digits))

    def index(self, element: Sequence[int]) -> int:
        idx = 0
        for g, d in zip(element, self.cyclic_orders):
            idx = idx * d + (g % d)
        return idx

    def add(self, a: int, b: int) -> int:
        x, y = self.element(a), self.element(b)
        return self.index(tuple(p + q for p, q in zip(x, y)))

    def neg(self, a: int) -> int:
        return self.index(tuple(-g for g in self.element(a)))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))


def character_table(group: AbelianGroup) -> np.ndarray:
    """H[i, j] = gamma_j(g_i), identifying the dual group with the group itself."""
    elems = np.array(group.elements(), dtype=np.int64)
    orders = np.array(group.cyclic_orders, dtype=np.float64)
    phase = np.zeros((group.order, group.order))
    for t, d in enumerate(orders):
        # reduce mod d before scaling so exact-integer phases stay exact
        phase += np.mod(np.outer(elems[:, t], elems[:, t]), int(d)) / d
    h = np.exp(2j * np.pi * phase)
    return h


@dataclass(frozen=True)
class DifferenceSet:
    group: AbelianGroup
    elements: tuple[int, ...]

    def __post_init__(self):
        elems = tuple(sorted(int(e) for e in self.elements))
        ok, _ = is_difference_set(self.group, elems)
        if not ok:
            raise ValueError(f"{list(elems)} is not a difference set of Z{self.group.cyclic_orders}")
        object.__setattr__(self, "elements", elems)

    @property
    def m(self) -> int:
        return len(self.elements)

    @property
    def multiplicity(self) -> int:
        m, n = self.m, self.group.order
        return m * (m - 1) // (n - 1)


def is_difference_set(group: AbelianGroup, subset: Sequence[int]) -> tuple[bool, dict[int, int]]:
    """Count representations g = d - d' for every nonzero g."""
    n = group.order
    subset = list(subset)
    if any(not 0 <= s < n for s in subset):
        raise IndexError(f"subset has an element outside 0..{n - 1}")
    if len(set(subset)) != len(subset):
        raise ValueError("subset elements must be distinct")
    counts = {g: 0 for g in range(1, n)}
    for d in subset:
        for e in subset:
            if d != e:
                counts[group.sub(d, e)] += 1
    return len(set(counts.values())) == 1, counts


def harmonic_etf(ds: DifferenceSet) -> Etf:
    n = ds.group.order
    if ds.m >= n:
        raise EtfError("harmonic ETF needs a proper difference set (m < n)")
    h = character_table(ds.group)
    phi = h[list(ds.elements), :] / math.sqrt(ds.m)
    label = f"harmonic Z{list(ds.group.cyclic_orders)} D={list(ds.elements)}"
    return Etf.from_matrix(phi, label)


def translate_difference_set(ds: DifferenceSet, shift: int) -> DifferenceSet:
    shift %= ds.group.order
    return DifferenceSet(ds.group, tuple(ds.group.add(shift, d) for d in ds.elements))


def known_family_dimensions(family: str, q: int, j: int) -> tuple[int, int]:
    """(m, n) of the Singer or McFarland difference-set family."""
    if prime_power(q) is None:
        raise ValueError(f"q = {q} is not a prime power")
    if j < 2:
        raise ValueError(f"need j >= 2, got {j}")
    s = (q**j - 1) // (q - 1)
    family = family.lower()
    if family == "singer":
        return s, (q ** (j + 1) - 1) // (q - 1)
    if family == "mcfarland":
        return q ** (j - 1) * s, q**j * (s + 1)
    raise ValueError(f"unknown difference set family {family!r}")
