import itertools
from pathlib import Path

import numpy as np
import pytest

from etfforge.designs import dft_matrix, hadamard, simplex_from_hadamard, steiner_etf
from etfforge.fixtures import DIFFERENCE_SETS, load_design
from etfforge.harmonic import harmonic_etf

DATA = Path(__file__).parent / "data"

# the centered and axial 6 x 16 Steiner ETFs from BIBD(4,2,1), times sqrt(3)
CENTERED_6x16 = np.array(
    [
        [1, -1, 1, -1, 1, -1, 1, -1, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 1, -1, 1, -1, 1, -1, 1, -1],
        [1, 1, -1, -1, 0, 0, 0, 0, 1, 1, -1, -1, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 1, -1, -1, 0, 0, 0, 0, 1, 1, -1, -1],
        [1, -1, -1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, -1, -1, 1],
        [0, 0, 0, 0, 1, -1, -1, 1, 1, -1, -1, 1, 0, 0, 0, 0],
    ]
)
AXIAL_6x16 = np.array(
    [
        [1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1],
        [1, 1, -1, -1, 0, 0, 0, 0, 1, 1, -1, -1, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 1, -1, -1, 0, 0, 0, 0, 1, 1, -1, -1],
        [1, -1, -1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, -1, -1, 1],
        [0, 0, 0, 0, 1, -1, -1, 1, 1, -1, -1, 1, 0, 0, 0, 0],
    ]
)


def harmonic_3x7_display():
    w = np.exp(2j * np.pi / 7)
    return np.array([[w ** (d * j) for j in range(7)] for d in (1, 2, 4)]) / np.sqrt(3)


@pytest.fixture(scope="session")
def steiner_centered():
    return steiner_etf(load_design("bibd_4_2"), simplex_from_hadamard(hadamard(4), 1), "centered")


@pytest.fixture(scope="session")
def steiner_axial():
    return steiner_etf(load_design("bibd_4_2"), simplex_from_hadamard(hadamard(4), 2), "axial")


@pytest.fixture(scope="session")
def fano_centered():
    return steiner_etf(load_design("fano"), simplex_from_hadamard(hadamard(4), 1), "centered")


@pytest.fixture(scope="session")
def fano_complex():
    return steiner_etf(load_design("fano"), simplex_from_hadamard(dft_matrix(4), 1), "centered")


@pytest.fixture(scope="session")
def harmonic_3x7():
    return harmonic_etf(DIFFERENCE_SETS["z7_124"])


@pytest.fixture(scope="session")
def harmonic_4x7():
    return harmonic_etf(DIFFERENCE_SETS["z7_0356"])


# -- graph fixtures built independently of the ETF machinery ----------------


def triangular_graph(n):
    """Line graph of K_n: SRG(n(n-1)/2, 2(n-2), n-2, 4)."""
    pairs = list(itertools.combinations(range(n), 2))
    return np.array([[int(p != q and bool(set(p) & set(q))) for q in pairs] for p in pairs])


def lattice_graph(n):
    """Rook's graph on an n x n board: SRG(n^2, 2(n-1), n-2, 2)."""
    cells = list(itertools.product(range(n), repeat=2))
    return np.array([[int(p != q and (p[0] == q[0] or p[1] == q[1])) for q in cells] for p in cells])


def paley_graph(q):
    """Paley graph on a prime q = 1 mod 4: SRG(q, (q-1)/2, (q-5)/4, (q-1)/4)."""
    squares = {(x * x) % q for x in range(1, q)}
    return np.array([[int(i != j and (i - j) % q in squares) for j in range(q)] for i in range(q)])


def petersen():
    pairs = list(itertools.combinations(range(5), 2))
    return np.array([[int(not set(p) & set(q)) for q in pairs] for p in pairs])


def clebsch():
    """Folded 5-cube: SRG(16,5,0,2)."""
    words = list(range(16))
    gens = {1, 2, 4, 8, 15}
    return np.array([[int((x ^ y) in gens) for y in words] for x in words])


def complement(a):
    return 1 - np.eye(len(a), dtype=int) - a


GRAPH_FIXTURES = {
    "C5": paley_graph(5),
    "L3": lattice_graph(3),
    "petersen": petersen(),
    "paley13": paley_graph(13),
    "T6": triangular_graph(6),
    "L4": lattice_graph(4),
    "L4c": complement(lattice_graph(4)),
    "clebsch": clebsch(),
    "paley17": paley_graph(17),
    "T7": triangular_graph(7),
    "L5": lattice_graph(5),
    "T8": triangular_graph(8),
    "T8c": complement(triangular_graph(8)),
    "paley29": paley_graph(29),
    "L6": lattice_graph(6),
    "L6c": complement(lattice_graph(6)),
}


# -- per-criterion summary --------------------------------------------------

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by a test")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    number, title = marker
    ok = report.passed
    prev = _CRITERIA.get(number, (title, True))
    _CRITERIA[number] = (title, prev[1] and ok)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        report.criterion = tuple(mark.args)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, ok = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}")
