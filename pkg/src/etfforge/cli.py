"""Command-line interface: ``etfforge <verb> ...``.

Exit codes: 0 success, 1 verification failure or no conversion, 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import bridge, designs, formats, frames, harmonic, srg
from .fixtures import DESIGNS, load_design
from .numeric import DEFAULT_TOL

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    """Malformed command-line input or input file."""


class Failure(Exception):
    """A verification failed or a requested conversion does not exist."""


def default_tol() -> float:
    raw = os.environ.get("ETFFORGE_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise InputError(f"ETFFORGE_TOL={raw!r} is not a number") from None
    if not tol > 0:
        raise InputError("ETFFORGE_TOL must be positive")
    return tol


def _ints(text: str, count: int | None = None) -> list[int]:
    try:
        vals = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None
    if count is not None and len(vals) != count:
        raise InputError(f"expected {count} comma-separated integers, got {text!r}")
    return vals


def _beta_json(beta) -> str | float:
    return formats.fraction_str(beta) if isinstance(beta, Fraction) else float(beta)


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _read_json(path: str) -> dict:
    try:
        d = json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(d, dict):
        raise InputError(f"{path}: expected a JSON object")
    return d


def _load_etf(path: str, tol: float) -> frames.Etf:
    d = _read_json(path)
    try:
        return formats.etf_from_dict(d, tol)
    except formats.FormatError as exc:
        raise InputError(str(exc)) from None
    except frames.EtfError as exc:
        raise Failure(f"not a frame of unit vectors: {exc}") from None


def _load_raw_synthesis(path: str) -> np.ndarray:
    """Read an ETF file without insisting on unit columns, for ``verify``."""
    d = _read_json(path)
    try:
        rows = np.array(d["synthesis"], dtype=np.float64)
        field, m, n = d["field"], int(d["m"]), int(d["n"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed ETF record: {exc}") from None
    if field == "complex":
        if rows.ndim != 3 or rows.shape[2] != 2:
            raise InputError("complex entries must be [re, im] pairs")
        rows = rows[..., 0] + 1j * rows[..., 1]
    elif field != "real":
        raise InputError(f"unknown field {field!r}")
    if rows.shape != (m, n):
        raise InputError(f"synthesis has shape {rows.shape}, header says {m}x{n}")
    return rows


def _load_adjacency(path: str) -> np.ndarray:
    try:
        return formats.parse_adjacency(_read_text(path))
    except (formats.FormatError, srg.SrgError) as exc:
        raise InputError(str(exc)) from None


def _load_bibd(source: str) -> designs.Bibd:
    if source in DESIGNS and not Path(source).exists():
        return load_design(source)
    d = _read_json(source)
    try:
        return formats.bibd_from_dict(d)
    except (formats.FormatError, designs.BibdError) as exc:
        raise InputError(str(exc)) from None


def _emit(text: str, out: str | None = None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _params_arg(text: str) -> srg.SrgParams:
    return srg.SrgParams(*_ints(text, 4))


# -- commands ---------------------------------------------------------------


def cmd_construct(args, tol: float) -> int:
    if args.kind == "harmonic":
        orders = tuple(_ints(args.group))
        try:
            group = harmonic.AbelianGroup(orders)
            ds = harmonic.DifferenceSet(group, tuple(_ints(args.set)))
        except ValueError as exc:
            raise Failure(str(exc)) from None
        etf = harmonic.harmonic_etf(ds)
    else:
        design = _load_bibd(args.bibd)
        order = design.r + 1
        row = args.hadamard_row if args.hadamard_row is not None else (1 if args.mode == "centered" else 2)
        try:
            h = designs.dft_matrix(order) if args.complex else designs.hadamard(order).entries
            simplex = designs.simplex_from_hadamard(h, row)
            etf = designs.steiner_etf(design, simplex, args.mode)
        except ValueError as exc:
            raise Failure(str(exc)) from None
    _emit(formats.dumps(formats.etf_to_dict(etf)), args.out)
    return EXIT_OK


def cmd_verify(args, tol: float) -> int:
    if args.kind == "etf":
        phi = _load_raw_synthesis(args.file)
        rep = frames.verify_etf(phi, tol)
        out = {
            "alpha": rep.alpha,
            "beta_observed": rep.beta_observed,
            "is_equiangular": rep.is_equiangular,
            "is_tight": rep.is_tight,
            "m": int(phi.shape[0]),
            "max_equiangularity_residual": rep.max_equiangularity_residual,
            "max_tightness_residual": rep.max_tightness_residual,
            "meets_welch": rep.meets_welch,
            "n": int(phi.shape[1]),
            "welch_bound": rep.welch_bound,
        }
        _emit(formats.dumps(out))
        return EXIT_OK if rep.meets_welch else EXIT_FAIL
    if args.kind == "srg":
        a = _load_adjacency(args.file)
        try:
            p = srg.verify_srg(a)
        except srg.SrgError as exc:
            _emit(formats.dumps({"error": str(exc), "is_srg": False}))
            return EXIT_FAIL
        _emit(formats.dumps({"is_srg": True, "params": list(p)}))
        return EXIT_OK
    d = _read_json(args.file)
    try:
        design = formats.bibd_from_dict(d)
    except designs.BibdError as exc:
        _emit(formats.dumps({"error": str(exc), "is_bibd": False}))
        return EXIT_FAIL
    except formats.FormatError as exc:
        raise InputError(str(exc)) from None
    pc = designs.find_parallel_class(design)
    out = {
        "b": design.b,
        "is_bibd": True,
        "k": design.k,
        "parallel_class": None if pc is None else [i + 1 for i in pc],
        "r": design.r,
        "v": design.v,
    }
    _emit(formats.dumps(out))
    return EXIT_OK


def _require_etf(etf: frames.Etf, tol: float) -> None:
    if not frames.verify_etf(etf, tol).meets_welch:
        raise Failure("input is not an ETF within tolerance")


def cmd_classify(args, tol: float) -> int:
    etf = _load_etf(args.file, tol)
    _require_etf(etf, tol)
    print(frames.classify_centroidal(etf, tol).kind)
    return EXIT_OK


def _conversion_report(mode: str, m: int, n: int, beta, p: srg.SrgParams) -> dict:
    return {"beta": _beta_json(beta), "m": m, "mode": mode, "n": n, "srg": list(p)}


def cmd_convert(args, tol: float) -> int:
    try:
        if args.direction == "etf-to-srg":
            etf = _load_etf(args.file, tol)
            beta = frames.exact_beta(etf.m, etf.n) or frames.welch_bound(etf.m, etf.n)
            if args.mode == "traditional":
                a, p = bridge.etf_to_srg_traditional(etf, tol)
                rep = _conversion_report("traditional", etf.m, etf.n, beta, p)
            else:
                a, cp = bridge.etf_to_srg_centroidal(etf, tol)
                mode = cp.source_mode.removeprefix("from-")
                rep = _conversion_report(mode, etf.m, etf.n, beta, cp.params)
            rep["adjacency"] = formats.adjacency_to_dict(a)
        else:
            a = _load_adjacency(args.file)
            if args.mode == "traditional":
                etf = bridge.srg_to_etf_traditional(a, tol)
                p = srg.verify_srg(a)
                beta = frames.exact_beta(etf.m, etf.n) or frames.welch_bound(etf.m, etf.n)
                rep = _conversion_report("traditional", etf.m, etf.n, beta, p)
            else:
                res = bridge.srg_to_etf_centroidal(a, tol)
                etf = res.etf
                rep = _conversion_report(res.mode, res.m, etf.n, res.beta, srg.verify_srg(a))
            rep["etf"] = formats.etf_to_dict(etf)
    except (bridge.ConversionError, srg.SrgError, frames.EtfError) as exc:
        print(f"no conversion: {exc}", file=sys.stderr)
        return EXIT_FAIL
    _emit(formats.dumps(rep))
    return EXIT_OK


def cmd_complement(args, tol: float) -> int:
    if args.kind == "naimark":
        etf = _load_etf(args.file, tol)
        _require_etf(etf, tol)
        try:
            comp = frames.naimark_complement(etf, tol)
        except ValueError as exc:
            raise Failure(str(exc)) from None
        _emit(formats.dumps(formats.etf_to_dict(comp)))
        return EXIT_OK
    if args.kind == "graph":
        a = _load_adjacency(args.file)
        _emit(formats.dumps(formats.adjacency_to_dict(srg.graph_complement(a))))
        return EXIT_OK
    # centroidal: accepts "v,k,l,mu" or an adjacency file
    if Path(args.file).exists():
        try:
            p = srg.verify_srg(_load_adjacency(args.file))
        except srg.SrgError as exc:
            raise Failure(str(exc)) from None
    else:
        p = _params_arg(args.file)
    try:
        if not srg.is_centroidal_type(p).flag:
            raise Failure(f"{p} does not satisfy v = 4k - 2 lambda - 2 mu")
    except srg.SrgError as exc:
        raise Failure(str(exc)) from None
    hat = bridge.centroidal_complement_params(p)
    if hat is None:
        print(f"{p} has no integral centroidal complement", file=sys.stderr)
        return EXIT_FAIL
    _emit(formats.dumps({"centroidal_complement": list(hat), "srg": list(p)}))
    return EXIT_OK


FAMILY_ARGS = {"mcfarland": 2, "kirkman": 1, "affine": 2, "projective": 1}


def cmd_params(args, tol: float) -> int:
    if args.what == "family":
        name, raw = args.args[0] if args.args else "", args.args[1:]
        if name not in FAMILY_ARGS:
            raise InputError(f"family must be one of {sorted(FAMILY_ARGS)}")
        if len(raw) != FAMILY_ARGS[name]:
            raise InputError(f"family {name} takes {FAMILY_ARGS[name]} argument(s)")
        fam_args = []
        for x in raw:
            if x in ("+", "-"):
                fam_args.append(x)
            else:
                try:
                    fam_args.append(int(x))
                except ValueError:
                    raise InputError(f"bad family argument {x!r}") from None
        try:
            p = bridge.family_srg_params(name, *fam_args)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        mode, m, beta = bridge.centroidal_dimension(p)
        out = {
            "beta": _beta_json(beta),
            "etf": [m, p.v],
            "family": name,
            "hadamard_order": bridge.family_hadamard_order(name, *fam_args),
            "mode": mode,
            "srg": list(p),
        }
        _emit(formats.dumps(out))
        return EXIT_OK
    if args.what == "integrality":
        if len(args.args) != 1:
            raise InputError("integrality takes m,n")
        m, n = _ints(args.args[0], 2)
        try:
            rep = bridge.integrality_report(m, n)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        out = {
            "inv_beta": rep.inv_beta,
            "inv_beta_odd_integer": rep.inv_beta_odd_integer,
            "inv_beta_tilde": rep.inv_beta_tilde,
            "inv_beta_tilde_odd_integer": rep.inv_beta_tilde_odd_integer,
            "m": m,
            "n": n,
            "redundancy_two_perfect_square": rep.redundancy_two_perfect_square,
        }
        _emit(formats.dumps(out))
        ok = rep.inv_beta_odd_integer and rep.inv_beta_tilde_odd_integer
        return EXIT_OK if ok and rep.redundancy_two_perfect_square is not False else EXIT_FAIL
    if len(args.args) != 1:
        raise InputError(f"{args.what} takes v,k,l,mu")
    p = _params_arg(args.args[0])
    if args.what == "descend":
        try:
            q = bridge.srg_descend(p)
        except ValueError as exc:
            raise Failure(str(exc)) from None
        _emit(formats.dumps({"descended": list(q), "srg": list(p)}))
        return EXIT_OK
    f = srg.feasibility(p)
    out = {
        "absolute_bound": f.absolute_bound,
        "eigenvalue_integrality": f.eigenvalue_integrality,
        "eigenvalues": None if f.eigenvalues is None else list(f.eigenvalues),
        "krein": f.krein,
        "multiplicities": None if f.multiplicities is None else list(f.multiplicities),
        "parameter_relation": f.parameter_relation,
        "passes": f.passes,
        "srg": list(p),
    }
    _emit(formats.dumps(out))
    if not f.passes:
        failed = [name for name, ok in (("Krein", f.krein), ("absolute", f.absolute_bound)) if not ok]
        reason = "fails " + "/".join(failed) if failed else "fails integrality or parameter relation"
        print(f"{p}: {reason}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


# -- the table of SRGs from BIBDs with a parallel class ---------------------

TABLE1_BIBDS = [(v, 2) for v in range(4, 37, 4)] + [(15, 3), (39, 3), (45, 5)]
TABLE1_SOURCES = {(15, 3): "kirkman15", (45, 5): "barker45"}
TABLE1_HEADER = ("v", "k", "r", "b", "m", "n", "v", "k", "lambda", "mu")


def table1_rows(tol: float = DEFAULT_TOL) -> list[dict]:
    """Each bundled BIBD goes through the axial Steiner ETF and the centroidal bridge.

    Rows with no bundled design fall back to the parameter formulas.
    """
    rows = []
    for v, k in TABLE1_BIBDS:
        if k == 2:
            design = designs.round_robin_bibd(v)
        elif (v, k) in TABLE1_SOURCES:
            design = load_design(TABLE1_SOURCES[(v, k)])
        else:
            design = None
        r, b = (v - 1) // (k - 1), v * (v - 1) // (k * (k - 1))
        if design is None:
            p = bridge.rbibd_srg_params(v, k)
            m, n, source = b, v * (r + 1), "parameters"
        else:
            simplex = designs.simplex_from_hadamard(designs.hadamard(r + 1), 2)
            etf = designs.steiner_etf(design, simplex, "axial")
            if frames.classify_centroidal(etf, tol).kind is not frames.Centroidal.AXIAL:
                raise RuntimeError(f"Steiner ETF from BIBD({v},{k},1) is not axial")
            _, cp = bridge.etf_to_srg_centroidal(etf, tol)
            p, m, n, source = cp.params, etf.m, etf.n, "constructed"
            if p != bridge.rbibd_srg_params(v, k):
                raise RuntimeError(f"constructed {p} disagrees with the parameter formula")
        rows.append({"bibd": (v, k, r, b), "etf": (m, n), "srg": tuple(p), "source": source})
    return rows


def format_table1(rows: list[dict]) -> str:
    lines = [" ".join(f"{h:>6}" for h in TABLE1_HEADER)]
    for row in rows:
        cells = (*row["bibd"], *row["etf"], *row["srg"])
        lines.append(" ".join(f"{c:>6}" for c in cells))
    return "\n".join(lines) + "\n"


def cmd_table1(args, tol: float) -> int:
    _emit(format_table1(table1_rows(tol)))
    return EXIT_OK


def cmd_search_sign(args, tol: float) -> int:
    etf = _load_etf(args.file, tol)
    try:
        null_hits, row_hits = frames.search_unimodular_sign(etf, args.max_n, tol)
    except frames.EtfError as exc:
        raise InputError(str(exc)) from None
    out = {
        "m": etf.m,
        "n": etf.n,
        "null_space_hits": [list(z) for z in null_hits],
        "row_space_hits": [list(z) for z in row_hits],
    }
    _emit(formats.dumps(out))
    return EXIT_OK if null_hits or row_hits else EXIT_FAIL


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="etfforge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    construct = sub.add_parser("construct", help="build an ETF")
    csub = construct.add_subparsers(dest="kind", required=True)
    h = csub.add_parser("harmonic", help="harmonic ETF from a difference set")
    h.add_argument("--group", required=True, help="cyclic orders d1,d2,...")
    h.add_argument("--set", required=True, help="difference set as lexicographic indices")
    h.add_argument("--out")
    s = csub.add_parser("steiner", help="Steiner ETF from a BIBD(v,k,1)")
    s.add_argument("--bibd", required=True, help=f"BIBD JSON file or one of {sorted(DESIGNS)}")
    s.add_argument("--mode", choices=("centered", "axial"), default="centered")
    s.add_argument("--hadamard-row", type=int, help="1-based row to delete (default 1 centered, 2 axial)")
    s.add_argument("--complex", action="store_true", help="use the DFT instead of a real Hadamard matrix")
    s.add_argument("--out")
    construct.set_defaults(func=cmd_construct)

    verify = sub.add_parser("verify", help="verify an ETF, SRG or BIBD file")
    verify.add_argument("kind", choices=("etf", "srg", "bibd"))
    verify.add_argument("file")
    verify.add_argument("--tol", type=float)
    verify.set_defaults(func=cmd_verify)

    classify = sub.add_parser("classify", help="print Centered, Axial or Neither")
    classify.add_argument("file")
    classify.set_defaults(func=cmd_classify)

    convert = sub.add_parser("convert", help="convert between real ETFs and SRGs")
    convert.add_argument("direction", choices=("etf-to-srg", "srg-to-etf"))
    convert.add_argument("file")
    convert.add_argument("--mode", choices=("traditional", "centroidal"), required=True)
    convert.set_defaults(func=cmd_convert)

    comp = sub.add_parser("complement", help="Naimark, graph or centroidal complement")
    comp.add_argument("kind", choices=("naimark", "graph", "centroidal"))
    comp.add_argument("file", help="input file; for centroidal also v,k,l,mu")
    comp.set_defaults(func=cmd_complement)

    params = sub.add_parser("params", help="SRG parameter algebra")
    params.add_argument("what", choices=("family", "descend", "feasibility", "integrality"))
    params.add_argument("args", nargs="*")
    params.set_defaults(func=cmd_params)

    table = sub.add_parser("table1", help="SRGs from BIBDs with a parallel class")
    table.set_defaults(func=cmd_table1)

    search = sub.add_parser("search-sign", help="exhaustive +-1 signing search")
    search.add_argument("file")
    search.add_argument("--max-n", type=int, default=24)
    search.set_defaults(func=cmd_search_sign)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        tol = default_tol()
        if getattr(args, "tol", None) is not None:
            if not args.tol > 0:
                raise InputError("--tol must be positive")
            tol = args.tol
        return args.func(args, tol)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Failure as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
