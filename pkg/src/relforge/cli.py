"""Command-line interface.

Every command writes exactly one JSON document to stdout (``diag --format csv``
writes CSV). Exit codes: 0 success, 1 domain failure, 2 input or format error.
Rationals travel as ``["num", "den"]`` decimal strings; ``approx`` fields are
display-only decimals.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from fractions import Fraction
from pathlib import Path

from relforge import forge as forge_mod
from relforge.graphcore import Gadget, GraphFormatError, is_connected, parse_graph
from relforge.polycore import Polynomial
from relforge.relcalc import (
    MAX_ORACLE_EDGES,
    OracleGuardError,
    diagnostics,
    gadget_polys,
    rel_bruteforce,
    rel_delcon,
    split_bruteforce,
)
from relforge.rootiso import EndpointRootError, isolate_roots, rational_to_json, refine

GADGET_MAX_N = 60
DIAG_MAX_N = 60


class InputError(Exception):
    """Bad user input: exit code 2."""


class DomainFailure(Exception):
    """Well-formed input, but the requested object does not exist or is refused: exit 1."""

    def __init__(self, message: str, payload: dict | None = None):
        super().__init__(message)
        self.payload = payload or {}


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let "-1/2" and "-1e-3" through as values
        self._negative_number_matcher = re.compile(r"^-(\d+|\d*\.\d+)([eE][-+]?\d+)?(/\d+)?$")

    def error(self, message):
        raise InputError(f"{self.prog}: {message}")


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip().replace("−", "-"))
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not a rational number: {text!r}") from None


def approx(x: Fraction, places: int = 12) -> str:
    """Fixed-point decimal rendering, rounded half to even."""
    scaled = round(x * 10**places)
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10**places)
    return f"{sign}{whole}.{frac:0{places}d}"


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(path: str):
    try:
        return parse_graph(_read(path))
    except (GraphFormatError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from None


def cmd_rel(args) -> dict:
    g = _load_graph(args.graph)
    if isinstance(g, Gadget):
        g = g.graph
    if args.method == "brute":
        try:
            return rel_bruteforce(g).to_json()
        except OracleGuardError as exc:
            raise DomainFailure(str(exc)) from None
    if not is_connected(g):
        raise DomainFailure("deletion-contraction needs a connected graph")
    return rel_delcon(g).to_json()


def cmd_split(args) -> dict:
    h = _load_graph(args.gadget)
    if not isinstance(h, Gadget):
        raise InputError("split needs a gadget file with a 'terminals u v' line")
    try:
        return split_bruteforce(h).to_json()
    except OracleGuardError as exc:
        raise DomainFailure(str(exc)) from None


def cmd_gadget(args) -> dict:
    if not 2 <= args.n <= GADGET_MAX_N:
        raise InputError(f"n must be between 2 and {GADGET_MAX_N}")
    gp = gadget_polys(args.n)
    out = gp.to_json()
    out["yhat"] = {"num": gp.yhat_num.to_json(), "den": gp.yhat_den.to_json()}
    return out


def _load_polynomial(path: str) -> Polynomial:
    text = _read(path)
    if text.lstrip().startswith("{"):
        try:
            return Polynomial.from_json(json.loads(text))
        except (ValueError, KeyError, TypeError) as exc:
            raise InputError(f"{path}: bad polynomial JSON: {exc}") from None
    g = _load_graph(path)
    if isinstance(g, Gadget):
        g = g.graph
    if g.n_edges <= MAX_ORACLE_EDGES:
        return rel_bruteforce(g)
    if not is_connected(g):
        raise DomainFailure("graph is disconnected; its reliability polynomial is zero")
    return rel_delcon(g)


def cmd_roots(args) -> list:
    p = _load_polynomial(args.input)
    lo, hi = (parse_rational(x) for x in args.interval)
    eps = parse_rational(args.eps)
    if not lo < hi:
        raise InputError("interval needs LO < HI")
    if eps <= 0:
        raise InputError("eps must be positive")
    if p.is_zero():
        raise InputError("the zero polynomial has no isolated roots")
    try:
        ivs = isolate_roots(p, lo, hi)
    except EndpointRootError as exc:
        raise InputError(f"{exc}; perturb the interval endpoints") from None
    return [refine(p, iv, eps).to_json() for iv in ivs]


def _request_from(args) -> forge_mod.ForgeRequest:
    lo, hi = (parse_rational(x) for x in args.interval)
    K = tuple(parse_rational(x) for x in args.pin_k) if args.pin_k else None
    try:
        return forge_mod.ForgeRequest(
            lo, hi, eps=parse_rational(args.eps), max_n=args.max_n, max_b=args.max_b, K=K
        )
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_forge(args) -> dict:
    req = _request_from(args)
    try:
        cert = forge_mod.forge(req)
    except forge_mod.NotFound as exc:
        raise DomainFailure(str(exc), {"error": {"kind": "not_found", **exc.to_json()}}) from None
    summary = {
        "N": cert.N,
        "k": cert.k,
        "b": cert.b,
        "K": {"lo": rational_to_json(cert.K[0]), "hi": rational_to_json(cert.K[1])},
        "enclosure": cert.enclosure.to_json(),
        "approx_root": approx((cert.enclosure.lo + cert.enclosure.hi) / 2),
        "graph": cert.graph,
    }
    if args.out:
        Path(args.out).write_text(cert.dumps(), encoding="utf-8")
        summary["certificate"] = args.out
    else:
        summary["certificate"] = cert.to_json()
    return summary


def cmd_verify(args) -> dict:
    try:
        cert = forge_mod.ForgeCertificate.loads(_read(args.cert))
    except forge_mod.CertificateFormatError as exc:
        raise InputError(f"{args.cert}: {exc}") from None
    result = forge_mod.verify(cert)
    if not result:
        raise DomainFailure("certificate rejected", {"valid": False, "reasons": list(result.reasons)})
    return {"valid": True}


def _diag_rows(args):
    q = parse_rational(args.q)
    if not -1 < q < 0:
        raise InputError("q must lie in (-1, 0)")
    if not 2 <= args.n_max <= DIAG_MAX_N:
        raise InputError(f"n-max must be between 2 and {DIAG_MAX_N}")
    return q, diagnostics(q, args.n_max)


def cmd_diag(args):
    q, rows = _diag_rows(args)
    cols = ("C", "R", "qS", "yhat")
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "C_n", "R_n", "q^(2-n)S_n", "2q^(n-2)yhat_n"])
        for row in rows:
            w.writerow([row["n"]] + ["" if row[c] is None else approx(row[c]) for c in cols])
        return buf.getvalue()
    table = []
    for row in rows:
        entry = {"n": row["n"]}
        for c in cols:
            v = row[c]
            entry[c] = None if v is None else {"exact": rational_to_json(v), "approx": approx(v)}
        table.append(entry)
    return {
        "q": rational_to_json(q),
        "columns": {"C": "C_n(q)", "R": "R_n(q)", "qS": "q^(2-n) S_n(q)", "yhat": "2 q^(n-2) yhat_n(q)"},
        "rows": table,
    }


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="relforge", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("rel", help="reliability polynomial of a graph file")
    s.add_argument("graph")
    s.add_argument("--method", choices=["brute", "delcon"], default="brute")
    s.set_defaults(func=cmd_rel)

    s = sub.add_parser("split", help="split reliability polynomial of a gadget file")
    s.add_argument("gadget")
    s.set_defaults(func=cmd_split)

    s = sub.add_parser("gadget", help="R_n, S_n and yhat_n for H_n")
    s.add_argument("n", type=int)
    s.set_defaults(func=cmd_gadget)

    s = sub.add_parser("roots", help="certified real roots of a polynomial or graph in an interval")
    s.add_argument("input", help="polynomial JSON file or graph file")
    s.add_argument("--interval", nargs=2, metavar=("LO", "HI"), required=True)
    s.add_argument("--eps", default="1/1000000")
    s.set_defaults(func=cmd_roots)

    s = sub.add_parser("forge", help="certified simple-graph reliability root inside an interval")
    s.add_argument("--interval", nargs=2, metavar=("LO", "HI"), required=True)
    s.add_argument("--eps", default="1/1000000")
    s.add_argument("--max-n", type=int, default=forge_mod.DEFAULT_MAX_N)
    s.add_argument("--max-b", type=int, default=forge_mod.DEFAULT_MAX_B)
    s.add_argument("--pin-k", nargs=2, metavar=("LO", "HI"), help="use this compact interval instead of the middle half")
    s.add_argument("--out", help="certificate file to write")
    s.set_defaults(func=cmd_forge)

    s = sub.add_parser("verify", help="independently re-check a certificate file")
    s.add_argument("cert")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("diag", help="convergence diagnostics of the gadget sequences")
    s.add_argument("--q", required=True)
    s.add_argument("--n-max", type=int, default=21)
    s.add_argument("--format", choices=["json", "csv"], default="json")
    s.set_defaults(func=cmd_diag)
    return p


def _emit(payload, stream) -> None:
    if isinstance(payload, str):
        stream.write(payload)
    else:
        stream.write(json.dumps(payload, indent=2) + "\n")


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        _emit(args.func(args), stdout)
        return 0
    except InputError as exc:
        print(f"error: {exc}", file=stderr)
        _emit({"error": {"kind": "input", "message": str(exc)}}, stdout)
        return 2
    except DomainFailure as exc:
        print(f"failure: {exc}", file=stderr)
        _emit(exc.payload or {"error": {"kind": "domain", "message": str(exc)}}, stdout)
        return 1


if __name__ == "__main__":
    sys.exit(main())
