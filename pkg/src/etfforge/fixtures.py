"""Bundled designs, difference sets and small reference frames."""

from __future__ import annotations

import json
import math
from importlib import resources

import numpy as np

from .designs import Bibd
from .formats import bibd_from_dict
from .frames import Etf
from .harmonic import AbelianGroup, DifferenceSet

DESIGNS = {
    "bibd_4_2": "bibd_4_2.json",
    "fano": "fano.json",
    "kirkman15": "kirkman15.json",
    "barker45": "barker45.json",
}

Z7 = AbelianGroup((7,))
Z2_4 = AbelianGroup((2, 2, 2, 2))

DIFFERENCE_SETS = {
    "z7_124": DifferenceSet(Z7, (1, 2, 4)),
    "z7_013": DifferenceSet(Z7, (0, 1, 3)),
    "z7_0356": DifferenceSet(Z7, (0, 3, 5, 6)),
    # a McFarland set in Z_2^4, indices are 4-bit words
    "z2x4_mcfarland": DifferenceSet(Z2_4, (0, 1, 2, 4, 8, 15)),
}


def design_path(name: str):
    return resources.files("etfforge") / "data" / DESIGNS[name]


def load_design(name: str) -> Bibd:
    if name not in DESIGNS:
        raise KeyError(f"unknown design {name!r}; choose from {sorted(DESIGNS)}")
    return bibd_from_dict(json.loads(design_path(name).read_text()))


def mercedes_benz() -> Etf:
    """Three unit vectors in R^2 at pairwise angles of 120 degrees."""
    angles = 2 * np.pi * np.arange(3) / 3
    return Etf(np.vstack([np.cos(angles), np.sin(angles)]), "real", "mercedes-benz 2x3")


def icosahedral() -> Etf:
    """The 3 x 6 real ETF of diagonals of the icosahedron."""
    g = (1 + math.sqrt(5)) / 2
    pts = np.array(
        [[0, 1, g], [0, 1, -g], [1, g, 0], [1, -g, 0], [g, 0, 1], [-g, 0, 1]], dtype=np.float64
    ).T
    return Etf(pts / math.sqrt(1 + g * g), "real", "icosahedral 3x6")
