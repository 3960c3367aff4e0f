"""Conversions between real ETFs and strongly regular graphs, and their parameter algebra.

Two correspondences are implemented:

* traditional: an m x n real ETF, signed so every inner product with the
  first vector is positive, gives an SRG on n - 1 vertices with mu = k/2;
* centroidal: a centered or axial m x n real ETF gives an SRG on n vertices
  with v = 4k - 2 lambda - 2 mu, and conversely.

In both directions the graph is read off the Gram matrix by
``A = G/(2 beta) - (beta + 1)/(2 beta) I + J/2``: acute pairs are neighbours.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .frames import (
    Centroidal,
    Etf,
    canonical_sign_first,
    classify_centroidal,
    exact_beta,
    gram_to_synthesis,
    sign_pattern,
    verify_etf,
    welch_bound,
)
from .numeric import DEFAULT_TOL, int_matmul, perfect_square_root, prime_power
from .srg import SrgError, SrgParams, is_centroidal_type, verify_srg


class ConversionError(ValueError):
    pass


@dataclass(frozen=True)
class ConversionContext:
    m: int
    n: int

    @property
    def alpha(self) -> Fraction:
        return Fraction(self.n, self.m)

    @property
    def beta(self) -> float:
        return welch_bound(self.m, self.n)

    @property
    def beta_rational(self) -> Fraction | None:
        return exact_beta(self.m, self.n)


@dataclass(frozen=True)
class CentroidalSrgParams:
    params: SrgParams
    source_mode: str  # "from-centered" or "from-axial"

    def __post_init__(self):
        v, k, lam, mu = self.params
        if v != 4 * k - 2 * lam - 2 * mu:
            raise ConversionError(f"{self.params} does not satisfy v = 4k - 2 lambda - 2 mu")


class CentroidalEtf(NamedTuple):
    etf: Etf
    mode: str
    m: int
    beta: Fraction


def _adjacency_from_gram(etf: Etf, tol: float) -> np.ndarray:
    if etf.field != "real":
        raise ConversionError("SRG conversions need a real ETF")
    if etf.m >= etf.n:
        raise ConversionError("SRG conversions need m < n")
    report = verify_etf(etf, tol)
    if not report.meets_welch:
        raise ConversionError("input is not an ETF within tolerance")
    beta = report.welch_bound
    if beta <= tol:
        raise ConversionError("coherence zero: the ETF-to-graph map divides by beta")
    signs = sign_pattern(etf.gram, beta, tol)
    if signs is None:
        raise ConversionError("some Gram entry is not within tolerance of +-beta")
    a = (signs + 1) // 2
    np.fill_diagonal(a, 0)
    return a


# -- traditional correspondence (n - 1 vertices) ----------------------------


def etf_to_srg_traditional(etf: Etf, tol: float = DEFAULT_TOL) -> tuple[np.ndarray, SrgParams]:
    if etf.field != "real":
        raise ConversionError("SRG conversions need a real ETF")
    if welch_bound(etf.m, etf.n) <= tol:
        raise ConversionError("coherence zero: the ETF-to-graph map divides by beta")
    signed = canonical_sign_first(etf)
    a = _adjacency_from_gram(signed, tol)
    if not np.all(a[0, 1:] == 1):
        raise ConversionError("canonical signing did not make vertex 1 adjacent to all others")
    a0 = a[1:, 1:]
    try:
        p = verify_srg(a0)
    except SrgError as exc:
        raise ConversionError(f"derived graph is not strongly regular: {exc}") from exc

    m, n = etf.m, etf.n
    alpha, beta = n / m, welch_bound(m, n)
    k_formula = n / 2 - 1 + (alpha - 2) / (2 * beta)
    if p.v != n - 1 or abs(p.k - k_formula) > 1e-6 or 2 * p.mu != p.k or 2 * p.lam != 3 * p.k - p.v - 1:
        raise ConversionError(f"{p} disagrees with the closed-form traditional parameters")
    return a0, p


def traditional_dimension(p: SrgParams) -> int:
    """The unique m for which an SRG with mu = k/2 yields an m x (v+1) real ETF."""
    v, k = p.v, p.k
    if 2 * p.mu != p.k:
        raise ConversionError(f"{p} does not have mu = k/2")
    d = v - 2 * k - 1
    if d == 0:
        m = Fraction(v + 1, 2)
    else:
        s = perfect_square_root(d * d + 4 * v)
        if s is None:
            raise ConversionError(f"{p}: (v-2k-1)^2 + 4v is not a square, so m is irrational")
        m = Fraction(v + 1, 2) * (1 + Fraction(d, s))
    if m.denominator != 1:
        raise ConversionError(f"{p}: m = {m} is not an integer")
    return int(m)


def srg_to_etf_traditional(a0, tol: float = DEFAULT_TOL) -> Etf:
    a0 = np.asarray(a0)
    p = verify_srg(a0)
    m = traditional_dimension(p)
    n = p.v + 1
    if not 0 < m < n:
        raise ConversionError(f"{p} gives a degenerate dimension m = {m}")
    beta = welch_bound(m, n)
    g = np.empty((n, n))
    g[0, 0] = 1.0
    g[0, 1:] = beta
    g[1:, 0] = beta
    g[1:, 1:] = 2 * beta * a0 + (beta + 1) * np.eye(p.v) - beta
    etf = gram_to_synthesis(g, tol, provenance=f"traditional from {p}")
    if etf.m != m:
        raise ConversionError(f"Gram factorization gave m = {etf.m}, formula gives {m}")
    return etf


# -- centroidal correspondence (n vertices) ---------------------------------


def centroidal_closed_form(m: int, n: int, mode: str) -> tuple[float, float, float, float]:
    """(v, k, lambda, mu) predicted for a centered or axial m x n real ETF."""
    alpha, beta = n / m, welch_bound(m, n)
    if mode == "centered":
        k = (n - 1) / 2 - 1 / (2 * beta)
        lam = n / 4 - 1 + (alpha - 4) / (4 * beta)
        mu = n / 4 - alpha / (4 * beta)
    elif mode == "axial":
        k = (n - 1) / 2 + (alpha - 1) / (2 * beta)
        lam = n / 4 - 1 + (3 * alpha - 4) / (4 * beta)
        mu = n / 4 + alpha / (4 * beta)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return float(n), k, lam, mu


def etf_to_srg_centroidal(etf: Etf, tol: float = DEFAULT_TOL) -> tuple[np.ndarray, CentroidalSrgParams]:
    if etf.field != "real":
        raise ConversionError("SRG conversions need a real ETF")
    kind = classify_centroidal(etf, tol).kind
    if kind is Centroidal.NEITHER:
        raise ConversionError("ETF is neither centered nor axial; sign it first")
    mode = "centered" if kind is Centroidal.CENTERED else "axial"
    a = _adjacency_from_gram(etf, tol)
    try:
        p = verify_srg(a)
    except SrgError as exc:
        raise ConversionError(f"derived graph is not strongly regular: {exc}") from exc
    expected = centroidal_closed_form(etf.m, etf.n, mode)
    if any(abs(x - y) > 1e-6 * max(1.0, abs(y)) for x, y in zip(p, expected)):
        raise ConversionError(f"{p} disagrees with the closed-form {mode} parameters {expected}")
    return a, CentroidalSrgParams(p, f"from-{mode}")


def centroidal_dimension(p: SrgParams) -> tuple[str, int, Fraction]:
    """(mode, m, beta) of the ETF an SRG with v = 4k - 2 lambda - 2 mu corresponds to."""
    ctype = is_centroidal_type(p)
    if not ctype.flag:
        raise ConversionError(f"{p} does not satisfy v = 4k - 2 lambda - 2 mu")
    v, k = p.v, p.k
    d = v - 2 * k - 1
    if d > 0:
        m = Fraction(v * d * d, (v - 1) + d * d)
        beta = Fraction(1, d)
    else:
        m = Fraction(v * (v - 1), (v - 1) + d * d)
        beta = Fraction(-d, v - 1)
    if m.denominator != 1:
        raise ConversionError(f"{p}: dimension {m} is not an integer")
    return ctype.branch, int(m), beta


def srg_to_etf_centroidal(a, tol: float = DEFAULT_TOL) -> CentroidalEtf:
    a = np.asarray(a, dtype=np.int64)
    p = verify_srg(a)
    mode, m, beta = centroidal_dimension(p)
    v = p.v
    alpha = Fraction(v, m)

    # q G = 2p A + (p + q) I - p J with beta = p/q; check G^2 = alpha G exactly
    bp, bq = beta.numerator, beta.denominator
    eye = np.eye(v, dtype=np.int64)
    qg = 2 * bp * a + (bp + bq) * eye - bp
    lhs = int_matmul(qg, qg) * alpha.denominator
    rhs = alpha.numerator * bq * qg
    if not np.array_equal(lhs, rhs):
        raise ConversionError(f"{p}: G^2 != alpha G in exact arithmetic")

    g = qg.astype(np.float64) / bq
    etf = gram_to_synthesis(g, tol, provenance=f"{mode} from {p}")
    if etf.m != m:
        raise ConversionError(f"eigenvalue multiplicity {etf.m} differs from the formula's m = {m}")
    return CentroidalEtf(etf, mode, m, beta)


# -- parameter corollaries --------------------------------------------------


def _steiner_counts(v: int, k: int, parallel_class: bool) -> int:
    if k < 2 or v <= k or (v - 1) % (k - 1) or (v * (v - 1)) % (k * (k - 1)):
        raise ConversionError(f"r = (v-1)/(k-1) or b is not an integer for v={v}, k={k}")
    if parallel_class and v % k:
        raise ConversionError(f"k = {k} does not divide v = {v}: no parallel class")
    r = (v - 1) // (k - 1)
    if (r + 1) % 4:
        raise ConversionError(f"r + 1 = {r + 1} is not divisible by 4: no real Hadamard matrix")
    return r


def rbibd_srg_params(v: int, k: int) -> SrgParams:
    """SRG from the axial Steiner ETF of a BIBD(v, k, 1) with a parallel class."""
    r = _steiner_counts(v, k, parallel_class=True)
    h = r + 1
    return SrgParams.checked(
        v * h, Fraction((v + k - 1) * h, 2), Fraction((v + 3 * k - 4) * h, 4), Fraction((v + k) * h, 4)
    )


def steiner_centered_srg_params(v: int, k: int) -> SrgParams:
    """SRG from the centered Steiner ETF of a BIBD(v, k, 1)."""
    r = _steiner_counts(v, k, parallel_class=False)
    h = r + 1
    return SrgParams.checked(
        v * h, Fraction((v - 1) * h, 2), Fraction((v + k - 4) * h, 4), Fraction((v - k) * h, 4)
    )


def srg_descend(p: SrgParams) -> SrgParams:
    """SRG(v, k, lambda, mu) with v = 4k - 2 lambda - 2 mu gives an SRG on v - 1 vertices."""
    if not is_centroidal_type(p).flag:
        raise ConversionError(f"{p} does not satisfy v = 4k - 2 lambda - 2 mu")
    v, k = p.v, p.k
    d = v - 2 * k - 1
    return SrgParams.checked(
        v - 1,
        Fraction(k * (v - 2 * k), d),
        Fraction(3 * k - v, 2) + Fraction(3 * k, 2 * d),
        Fraction(k * (v - 2 * k), 2 * d),
    )


def centroidal_complement_params(p: SrgParams) -> SrgParams | None:
    """Parameters of the centroidal complement, or None if they are not integral."""
    if not is_centroidal_type(p).flag:
        raise ConversionError(f"{p} does not satisfy v = 4k - 2 lambda - 2 mu")
    v, k = p.v, p.k
    d = v - 2 * k - 1
    if (v - 1) % d:
        return None
    d_hat = -(v - 1) // d
    if (v - 1 - d_hat) % 2:
        return None
    k_hat = (v - 1 - d_hat) // 2
    mu_hat = Fraction(k_hat * (d_hat - 1), 2 * d_hat)
    lam_hat = (4 * k_hat - 2 * mu_hat - v) / 2
    try:
        return SrgParams.checked(v, k_hat, lam_hat, mu_hat)
    except SrgError:
        return None


def family_hadamard_order(family: str, *args) -> int | None:
    """Order of the real Hadamard matrix a family member needs (None if none is needed)."""
    family = family.lower()
    if family == "mcfarland":
        return None
    if family == "kirkman":
        (u,) = args
        return 4 * (3 * u - 1)
    if family == "affine":
        q, j = args
        return (q**j - 1) // (q - 1) + 1
    if family == "projective":
        (q,) = args
        return q * q + q + 2
    raise ValueError(f"unknown family {family!r}")


def family_srg_params(family: str, *args) -> SrgParams:
    """Parameters from the McFarland, Kirkman, affine-line and projective families.

    ``mcfarland(j, sign)`` with sign ``"+"`` (axial) or ``"-"`` (centered);
    ``kirkman(u)``; ``affine(q, j)``; ``projective(q)``. The Hadamard side
    condition is reported by :func:`family_hadamard_order`, not enforced.
    """
    family = family.lower()
    if family == "mcfarland":
        j, sign = args
        if j < 2:
            raise ValueError("McFarland family needs j >= 2")
        e = {"+": 1, "-": -1, 1: 1, -1: -1}.get(sign)
        if e is None:
            raise ValueError(f"sign must be '+' or '-', got {sign!r}")
        h = 2 ** (j - 1)
        p = SrgParams.checked(4**j, h * (2**j + e), h * (h + e), h * (h + e))
    elif family == "kirkman":
        (u,) = args
        if u < 1:
            raise ValueError("Kirkman family needs u >= 1")
        w = 3 * u - 1
        p = SrgParams.checked(4 * (24 * u - 9) * w, 2 * (24 * u - 7) * w, (24 * u - 4) * w, (24 * u - 6) * w)
    elif family == "affine":
        q, j = args
        if prime_power(q) is None or j < 2:
            raise ValueError("affine family needs a prime power q and j >= 2")
        h = (q**j - 1) // (q - 1) + 1
        if h % 4:
            raise ValueError(f"affine family needs a Hadamard order divisible by 4, got {h}")
        p = SrgParams.checked(
            q**j * h,
            Fraction((q**j + q - 1) * h, 2),
            Fraction((q**j + 3 * q - 4) * h, 4),
            Fraction((q**j + q) * h, 4),
        )
    elif family == "projective":
        (q,) = args
        if prime_power(q) is None:
            raise ValueError("projective family needs a prime power q")
        h = q * q + q + 2
        if h % 4:
            raise ValueError(f"projective family needs a Hadamard order divisible by 4, got {h}")
        p = SrgParams.checked(
            (q**3 + q**2 + q + 1) * h,
            Fraction((q**3 + q**2 + 2 * q + 1) * h, 2),
            Fraction((q**3 + q**2 + 4 * q) * h, 4),
            Fraction((q**3 + q**2 + 2 * q + 2) * h, 4),
        )
    else:
        raise ValueError(f"unknown family {family!r}")
    if not is_centroidal_type(p).flag:
        raise AssertionError(f"{p} from the {family} family is not of centroidal type")
    return p


@dataclass(frozen=True)
class IntegralityReport:
    m: int
    n: int
    inv_beta: int | None
    inv_beta_tilde: int | None
    inv_beta_odd_integer: bool
    inv_beta_tilde_odd_integer: bool
    redundancy_two_perfect_square: bool | None


def integrality_report(m: int, n: int) -> IntegralityReport:
    """Exact checks of the odd-integer conditions on 1/beta and on the complement's 1/beta."""
    if not 1 < m < n - 1:
        raise ValueError(f"need 1 < m < n - 1, got m={m}, n={n}")

    def odd_root(num: int, den: int) -> int | None:
        x = Fraction(num, den)
        if x.denominator != 1:
            return None
        return perfect_square_root(x.numerator)

    inv = odd_root(m * (n - 1), n - m)
    inv_t = odd_root((n - m) * (n - 1), m)
    square = None
    if n == 2 * m:
        square = perfect_square_root(2 * m - 1) is not None
    return IntegralityReport(
        m,
        n,
        inv,
        inv_t,
        inv is not None and inv % 2 == 1,
        inv_t is not None and inv_t % 2 == 1,
        square,
    )
