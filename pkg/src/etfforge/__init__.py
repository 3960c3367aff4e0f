"""Equiangular tight frames with centroidal symmetry, and their strongly regular graphs."""

from .frames import Centroidal, Etf, classify_centroidal, coherence, verify_etf, welch_bound
from .srg import SrgParams, verify_srg

__all__ = [
    "Centroidal",
    "Etf",
    "SrgParams",
    "classify_centroidal",
    "coherence",
    "verify_etf",
    "verify_srg",
    "welch_bound",
]

__version__ = "0.1.0"
