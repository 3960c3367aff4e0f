"""File formats for frames, difference sets, designs, Hadamard matrices and graphs."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from .designs import Bibd, HadamardMatrix, verify_bibd
from .frames import Etf
from .harmonic import AbelianGroup, DifferenceSet
from .numeric import DEFAULT_TOL
from .srg import adjacency


class FormatError(ValueError):
    pass


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def fraction_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc


# -- ETF --------------------------------------------------------------------


def etf_to_dict(etf: Etf) -> dict:
    phi = etf.synthesis
    if etf.field == "real":
        rows = [[float(x) for x in row] for row in phi]
    else:
        rows = [[[float(x.real), float(x.imag)] for x in row] for row in phi]
    return {"field": etf.field, "m": etf.m, "n": etf.n, "synthesis": rows, "provenance": etf.provenance}


def etf_from_dict(d: dict, tol: float = DEFAULT_TOL) -> Etf:
    try:
        field, m, n, rows = d["field"], int(d["m"]), int(d["n"]), d["synthesis"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed ETF record: {exc}") from exc
    if field not in ("real", "complex"):
        raise FormatError(f"unknown field {field!r}")
    try:
        if field == "real":
            phi = np.array(rows, dtype=np.float64)
        else:
            arr = np.array(rows, dtype=np.float64)
            if arr.ndim != 3 or arr.shape[2] != 2:
                raise FormatError("complex entries must be [re, im] pairs")
            phi = arr[..., 0] + 1j * arr[..., 1]
    except ValueError as exc:
        raise FormatError(f"synthesis is not a rectangular numeric array: {exc}") from exc
    if phi.shape != (m, n):
        raise FormatError(f"synthesis has shape {phi.shape}, header says {m}x{n}")
    return Etf(phi, field, str(d.get("provenance", "")), tol)


def read_etf(path, tol: float = DEFAULT_TOL) -> Etf:
    return etf_from_dict(_read_json(path), tol)


def write_etf(etf: Etf, path) -> None:
    Path(path).write_text(dumps(etf_to_dict(etf)))


def format_matrix(a) -> str:
    """Integer matrices print exactly; floating entries with 6 significant digits."""
    a = np.asarray(a)
    if np.issubdtype(a.dtype, np.integer) or a.dtype == object:
        cells = [[str(int(x)) for x in row] for row in a]
    elif np.iscomplexobj(a):
        cells = [[f"{x.real:.6g}{x.imag:+.6g}j" for x in row] for row in a]
    else:
        cells = [[f"{x + 0.0:.6g}" for x in row] for row in a]
    width = max(len(c) for row in cells for c in row)
    return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells) + "\n"


# -- difference sets and designs --------------------------------------------


def difference_set_from_dict(d: dict) -> DifferenceSet:
    try:
        return DifferenceSet(AbelianGroup(tuple(d["cyclic_orders"])), tuple(d["elements"]))
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed difference set record: {exc}") from exc


def difference_set_to_dict(ds: DifferenceSet) -> dict:
    return {"cyclic_orders": list(ds.group.cyclic_orders), "elements": list(ds.elements)}


def bibd_from_dict(d: dict) -> Bibd:
    try:
        v, k, blocks = int(d["v"]), int(d["k"]), d["blocks"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed BIBD record: {exc}") from exc
    design = verify_bibd(v, blocks)
    if design.k != k:
        raise FormatError(f"header says k={k} but blocks have size {design.k}")
    return design


def bibd_to_dict(design: Bibd) -> dict:
    return {"v": design.v, "k": design.k, "blocks": [list(b) for b in design.blocks]}


def read_bibd(path) -> Bibd:
    return bibd_from_dict(_read_json(path))


def hadamard_to_text(h: HadamardMatrix) -> str:
    rows = ("".join("+" if x > 0 else "-" for x in row) for row in h.entries)
    return f"{h.order}\n" + "\n".join(rows) + "\n"


def hadamard_from_text(text: str) -> HadamardMatrix:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    try:
        order = int(lines[0])
    except (IndexError, ValueError) as exc:
        raise FormatError("first line must be the order") from exc
    rows = lines[1:]
    if len(rows) != order or any(len(r) != order or set(r) - {"+", "-"} for r in rows):
        raise FormatError(f"expected {order} rows of {order} '+'/'-' characters")
    return HadamardMatrix(order, np.array([[1 if c == "+" else -1 for c in r] for r in rows]))


# -- graphs -----------------------------------------------------------------


def _rows_to_adjacency(rows: list[str], v: int) -> np.ndarray:
    if len(rows) != v or any(len(r) != v or set(r) - {"0", "1"} for r in rows):
        raise FormatError(f"expected {v} rows of {v} '0'/'1' characters")
    try:
        return adjacency(np.array([[int(c) for c in r] for r in rows], dtype=np.int64))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def adjacency_to_text(a) -> str:
    a = np.asarray(a)
    return f"{a.shape[0]}\n" + "".join("".join(str(int(x)) for x in row) + "\n" for row in a)


def adjacency_to_dict(a) -> dict:
    a = np.asarray(a)
    return {"v": int(a.shape[0]), "rows": ["".join(str(int(x)) for x in row) for row in a]}


def parse_adjacency(text: str) -> np.ndarray:
    """Accept either the line format (v, then v rows) or JSON {"v", "rows"}."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            d = json.loads(stripped)
            return _rows_to_adjacency(list(d["rows"]), int(d["v"]))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError(f"malformed SRG JSON: {exc}") from exc
    lines = [ln.strip() for ln in stripped.splitlines() if ln.strip()]
    try:
        v = int(lines[0])
    except (IndexError, ValueError) as exc:
        raise FormatError("first line must be the vertex count") from exc
    return _rows_to_adjacency(lines[1:], v)


def read_adjacency(path) -> np.ndarray:
    return parse_adjacency(Path(path).read_text())
