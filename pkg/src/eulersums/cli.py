"""Command-line front end: list, show and verify identities, run oracles and Mellin checks.

Exit status is 0 when every requested check passes, 1 when one fails and 2 on
usage or domain errors.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import math
import sys
from typing import Callable, Optional, Sequence

from . import catalog, mellin, oracles, specfun
from .closed_form import cf_eval, render

FIELDS = ("id", "lhs", "rhs", "abs_diff", "tol", "pass", "terms", "seconds")

# constants as printed to six decimals in the source tables
PRINTED_CONSTANTS = {
    "gamma": 0.577216,
    "zeta(2)": 1.644934,
    "zeta(3)": 1.202057,
    "G": 0.915966,
    "Cl2(pi/3)": 1.014942,
}


def _num(x: float) -> float:
    return float(f"{x:.15g}")


def report_row(r: catalog.VerificationReport) -> dict:
    return {
        "id": r.id,
        "lhs": _num(r.lhs_numeric),
        "rhs": r.rhs_text,
        "abs_diff": _num(r.abs_diff),
        "tol": _num(r.tolerance),
        "pass": bool(r.passed),
        "terms": int(r.terms_used),
        "seconds": _num(r.wall_time),
    }


def format_rows(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return "".join(json.dumps(row) + "\n" for row in rows)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=FIELDS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    lines = []
    for row in rows:
        lines.append(
            f"{row['id']:<16} {row['lhs']:>22.15g} {row['abs_diff']:>10.3g} {row['tol']:>8.1g} "
            f"{'PASS' if row['pass'] else 'FAIL':<4} {row['terms']:>9d} {row['seconds']:>8.3f}  {row['rhs']}"
        )
    return "\n".join(lines) + "\n"


def load_config(path: str) -> dict:
    """Read ``key = value`` lines: tol, jobs, format and per-identity tol.<id>."""
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
    parser.optionxform = str
    with open(path) as fh:
        parser.read_string("[config]\n" + fh.read())
    raw = dict(parser["config"])
    cfg: dict = {"tol_by_id": {}}
    for key, value in raw.items():
        if key == "tol":
            cfg["tol"] = float(value)
        elif key == "jobs":
            cfg["jobs"] = int(value)
        elif key == "format":
            cfg["format"] = value
        elif key.startswith("tol."):
            cfg["tol_by_id"][key[4:]] = float(value)
        else:
            raise ValueError(f"unknown config key {key!r}")
    return cfg


# ------------------------------------------------------------ named oracle checks


def _check(result, reference: float, tol: float) -> dict:
    value, error = (result.value, result.error_estimate) if hasattr(result, "value") else (result, 0.0)
    diff = abs(value - reference)
    return {
        "value": _num(value),
        "reference": _num(reference),
        "abs_diff": _num(diff),
        "error_estimate": _num(error),
        "tol": tol,
        "pass": diff <= tol,
    }


def _g1_triangle() -> dict:
    series = catalog.verify("G1").lhs_numeric
    a = oracles.logsine_integral().value
    b = oracles.arcsin_sq_integral().value
    worst = max(abs(series - a), abs(series - b), abs(a - b))
    return {
        "series": _num(series),
        "logsine": _num(a),
        "arcsin_sq": _num(b),
        "max_pairwise": _num(worst),
        "tol": 3e-9,
        "pass": worst <= 3e-9,
    }


def _factorization() -> dict:
    r = mellin.factorization_check(1 + 1j, 2 + 1j, 0.5 + 2j, 2.5, 0.7, 0.7)
    return {
        "lhs": str(r.lhs),
        "rhs": str(r.rhs),
        "abs_diff": _num(r.abs_diff),
        "error_estimate": _num(r.error_estimate),
        "tol": mellin.FACTORIZATION_TOL,
        "pass": r.abs_diff <= mellin.FACTORIZATION_TOL,
    }


ORACLE_CHECKS: dict[str, Callable[[], dict]] = {
    "psi": lambda: _check(
        oracles.psi_integral(7.3), specfun.euler_gamma() + specfun.digamma(7.3), 1e-10
    ),
    "polylog": lambda: _check(oracles.polylog_integral(3, 1.0), specfun.zeta_int(3), 1e-9),
    "polylog-recursive": lambda: _check(
        oracles.polylog_recursive_integral(3, 0.5), specfun.polylog(3, 0.5), 1e-9
    ),
    "dilog": lambda: _check(oracles.dilog_sum_integral(), specfun.zeta_int(2), 1e-10),
    "logsine": lambda: _check(
        oracles.logsine_integral(), cf_eval(catalog.get("G1").rhs), 1e-9
    ),
    "arcsin": lambda: _check(
        oracles.arcsin_sq_integral(), oracles.logsine_integral().value, 2e-9
    ),
    "clausen": lambda: _check(
        oracles.clausen_from_dilog(math.pi / 2), specfun.catalan(), 1e-10
    ),
    "g1-triangle": _g1_triangle,
    "mellin-forward": lambda: _check(mellin.mellin_forward_example(3, 0.5), 96.0, 1e-8),
    "mellin-inverse": lambda: _check(
        mellin.inverse_mellin_example(2, 10.0), math.log(10.0) ** 2, 1e-4
    ),
    "factorization": _factorization,
}


# ------------------------------------------------------------ subcommands


def _cmd_list(args) -> int:
    for ident in catalog.build_catalog():
        print(f"{ident.id:<8} {ident.dimensionality}-D  tol={ident.tolerance:<7g} {render(ident.rhs)}")
    return 0


def _cmd_show(args) -> int:
    if args.id.startswith("theorem."):
        k, alt = catalog._parse_theorem_id(args.id)
        s = catalog.theorem_summand(k, alt)
        rhs, anchor, tol = catalog.theorem1_closed_form(k, alt), "general k", catalog.TOL_THEOREM
        desc = s.description
    else:
        ident = catalog.get(args.id)
        desc, rhs, anchor, tol = ident.description, ident.rhs, ident.anchor, ident.tolerance
    print(f"id:          {args.id}")
    print(f"summand:     {desc}")
    print(f"rhs:         {render(rhs)}")
    print(f"rhs value:   {cf_eval(rhs):.15g}")
    print(f"group:       {anchor}")
    print(f"tolerance:   {tol:g}")
    return 0


def _cmd_verify(args) -> int:
    cfg = load_config(args.config) if args.config else {"tol_by_id": {}}
    tol = args.tol if args.tol is not None else cfg.get("tol")
    fmt = args.format or cfg.get("format", "text")
    jobs = args.jobs if args.jobs is not None else cfg.get("jobs", 1)
    if fmt not in ("text", "json", "csv"):
        raise ValueError(f"unknown format {fmt!r}")
    if args.all:
        if cfg["tol_by_id"] and args.tol is None:
            ids = catalog.catalog_ids() + catalog.theorem_ids()
            reports = [catalog.verify(i, cfg["tol_by_id"].get(i, tol)) for i in ids]
        else:
            reports = catalog.verify_all(parallel=jobs > 1, jobs=jobs, tolerance_override=tol)
    elif args.id:
        per_id = cfg["tol_by_id"].get(args.id) if args.tol is None else None
        reports = [catalog.verify(args.id, per_id if per_id is not None else tol)]
    else:
        raise ValueError("verify needs an identity id or --all")
    sys.stdout.write(format_rows([report_row(r) for r in reports], fmt))
    return 0 if all(r.passed for r in reports) else 1


def _cmd_theorem1(args) -> int:
    if args.k < 1:
        raise specfun.DomainError("k must be >= 1")
    cf = catalog.theorem1_closed_form(args.k, args.alternating)
    print(render(cf))
    print(f"{cf_eval(cf):.15g}")
    return 0


def _cmd_constants(args) -> int:
    values = {
        "gamma": specfun.euler_gamma(),
        "zeta(2)": specfun.zeta_int(2),
        "zeta(3)": specfun.zeta_int(3),
        "G": specfun.catalan(),
        "Cl2(pi/3)": specfun.clausen2(math.pi / 3),
    }
    ok = True
    for name, v in values.items():
        printed = PRINTED_CONSTANTS[name]
        match = round(v, 6) == printed
        ok &= match
        print(f"{name:<10} {v:.15g}  printed {printed:.6f}  {'ok' if match else 'MISMATCH'}")
    return 0 if ok else 1


def _cmd_oracle(args) -> int:
    if args.name not in ORACLE_CHECKS:
        raise KeyError(f"unknown oracle {args.name!r}; choose from {', '.join(ORACLE_CHECKS)}")
    out = ORACLE_CHECKS[args.name]()
    print(json.dumps({"oracle": args.name, **out}))
    return 0 if out["pass"] else 1


def _cmd_mellin(args) -> int:
    if args.op == "forward":
        v = mellin.mellin_forward_example(args.k, args.z)
        ref = math.factorial(args.k) / args.z ** (args.k + 1)
        print(json.dumps({"value": _num(v), "reference": _num(ref), "rel_err": _num(abs(v / ref - 1))}))
        return 0 if abs(v / ref - 1) <= 1e-10 else 1
    if args.op == "inverse":
        spec = None
        if args.T is not None:
            spec = mellin.ContourSpec(args.c, args.T, args.nodes or 2000)
        v = mellin.inverse_mellin_example(args.k, args.x, spec)
        ref = math.log(args.x) ** args.k
        print(json.dumps({"value": _num(v), "reference": _num(ref), "abs_diff": _num(abs(v - ref))}))
        return 0 if abs(v - ref) <= mellin.INVERSE_TOL else 1
    spec = mellin.ContourSpec(1.0, args.T or 60.0, args.nodes or 2000)
    r = mellin.factorization_check(args.A1, args.A2, args.A3, args.p, args.c1, args.c2, spec)
    print(
        json.dumps(
            {
                "lhs": str(r.lhs),
                "rhs": str(r.rhs),
                "abs_diff": _num(r.abs_diff),
                "error_estimate": _num(r.error_estimate),
            }
        )
    )
    return 0 if r.abs_diff <= mellin.FACTORIZATION_TOL else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="eulersums", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="catalog table").set_defaults(func=_cmd_list)

    p = sub.add_parser("show", help="summand, closed form and group of one identity")
    p.add_argument("id")
    p.set_defaults(func=_cmd_show)

    p = sub.add_parser("verify", help="verify one identity or all of them")
    p.add_argument("id", nargs="?")
    p.add_argument("--all", action="store_true")
    p.add_argument("--tol", type=float)
    p.add_argument("--format", choices=("text", "json", "csv"))
    p.add_argument("--jobs", type=int)
    p.add_argument("--config")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("theorem1", help="closed form of the general-k psi series")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--alternating", action="store_true")
    p.set_defaults(func=_cmd_theorem1)

    sub.add_parser("constants", help="basis constants vs printed values").set_defaults(func=_cmd_constants)

    p = sub.add_parser("oracle", help="run a named quadrature or Mellin check")
    p.add_argument("name", help=", ".join(ORACLE_CHECKS))
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("mellin", help="Mellin transform checks")
    msub = p.add_subparsers(dest="op", required=True)
    q = msub.add_parser("forward")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--z", type=float, required=True)
    q = msub.add_parser("inverse")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--x", type=float, required=True)
    q.add_argument("--c", type=float, default=1.0)
    q.add_argument("--T", type=float)
    q.add_argument("--nodes", type=int)
    q = msub.add_parser("factorization")
    for name in ("A1", "A2", "A3"):
        q.add_argument(f"--{name}", type=complex, required=True)
    q.add_argument("--p", type=float, required=True)
    q.add_argument("--c1", type=float, required=True)
    q.add_argument("--c2", type=float, required=True)
    q.add_argument("--T", type=float)
    q.add_argument("--nodes", type=int)
    p.set_defaults(func=_cmd_mellin)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (KeyError, ValueError, OSError, OverflowError) as exc:
        # UnknownId, DomainError, ValidityViolation and TruncationTooSmall land here
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2
