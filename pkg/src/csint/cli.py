"""Command-line front end: evaluate functions and run verification suites."""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone
from typing import Sequence

from . import core_special as cs
from .coherent_states import PRESETS, CoherentStateFamily, CSKind, overlap
from .errors import CsintError, UnknownSuite
from .hypergeom import SPECIAL_CASES, pfq
from .identity_engine import (
    REPRESENTATIONS,
    SUITES,
    IdentityInstance,
    builtin_suite,
    load_instances,
    rep_eval,
    verify,
)
from .meijer_weight import classify_weight, weight_eval
from .structures import DEFAULT_MAX_TERMS, ParameterSet, SeriesValue, max_terms_default

EXIT_OK, EXIT_NUMERIC, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _floats(text: str | None) -> tuple[float, ...]:
    if text is None or text.strip() == "":
        return ()
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"expected comma-separated reals, got {text!r}") from None


def _complex(text: str) -> complex | float:
    """'x' or 'x,y' (real and imaginary parts)."""
    parts = _floats(text)
    if len(parts) == 1:
        return parts[0]
    if len(parts) == 2:
        return complex(*parts)
    raise UsageError(f"expected a real or 're,im', got {text!r}")


def _params(args) -> ParameterSet:
    ps = ParameterSet(_floats(args.a), _floats(args.b))
    if args.p is not None and args.p != ps.p:
        raise UsageError(f"--p {args.p} does not match {ps.p} values in --a")
    if args.q is not None and args.q != ps.q:
        raise UsageError(f"--q {args.q} does not match {ps.q} values in --b")
    return ps


# --------------------------------------------------------------------------
# output


def _scalar_out(v):
    if isinstance(v, complex):
        return {"re": v.real, "im": v.imag}
    return v


def _emit_value(args, command: str, sv: SeriesValue, out) -> None:
    record = {
        "command": command,
        "value": _scalar_out(sv.value),
        "abs_error_estimate": sv.abs_error_estimate,
        "terms_used": sv.terms_used,
        "converged": sv.converged,
        "terminated": sv.terminated,
        "notes": list(sv.notes),
    }
    if args.format == "json-lines":
        out.write(json.dumps(record, sort_keys=True) + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["command", "value", "abs_error_estimate", "terms_used", "converged", "terminated", "notes"])
        w.writerow([command, repr(sv.value), repr(sv.abs_error_estimate), sv.terms_used, sv.converged,
                     sv.terminated, ";".join(sv.notes)])
    else:
        v = sv.value
        text = f"{v.real:.16g}{v.imag:+.16g}j" if isinstance(v, complex) else f"{v:.16g}"
        out.write(f"value: {text}\nerror estimate: {sv.abs_error_estimate:.3g}\nterms: {sv.terms_used}\n")
        for note in sv.notes:
            out.write(f"note: {note}\n")


CSV_COLUMNS = ["index", "label", "family", "target", "status", "tolerance", "methods_run", "rel_diff_per_method",
               "lhs_moment", "lhs_quadrature", "rhs_closed_form", "instance", "diagnostics"]


def _emit_reports(args, records: list[dict], out) -> dict[str, int]:
    counts = {"pass": 0, "fail": 0, "skip": 0}
    for r in records:
        counts[r["status"]] += 1
    summary = f"passed {counts['pass']} / failed {counts['fail']} / skipped {counts['skip']}"
    if args.format == "json-lines":
        for i, r in enumerate(records):
            out.write(json.dumps({"index": i, **r}, sort_keys=True) + "\n")
        out.write(json.dumps({"summary": counts}, sort_keys=True) + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for i, r in enumerate(records):
            inst = r["instance"]
            w.writerow([i, inst["label"], inst["family"], inst["target"] or "", r["status"], r["tolerance"],
                        ";".join(r["methods_run"]), json.dumps(r["rel_diff_per_method"], sort_keys=True),
                        json.dumps(r["lhs_moment"]), json.dumps(r["lhs_quadrature"]),
                        json.dumps(r["rhs_closed_form"]), json.dumps(inst, sort_keys=True),
                        ";".join(r["diagnostics"])])
        sys.stderr.write(summary + "\n")
    else:
        stamp = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
        out.write(f"# csint verification run {stamp}\n")
        for i, r in enumerate(records):
            inst = r["instance"]
            worst = max((v for v in r["rel_diff_per_method"].values() if isinstance(v, float)), default=None)
            worst_text = "-" if worst is None else f"{worst:.2e}"
            name = inst["label"] or inst["target"] or inst["family"]
            out.write(f"{i:4d} {r['status'].upper():4s} {inst['family']:17s} max rel diff {worst_text:>9s}  {name}\n")
            if r["status"] != "pass":
                for d in r["diagnostics"]:
                    out.write(f"       {d}\n")
        out.write(summary + "\n")
    return counts


def _verify_one(job):
    inst, tol, max_terms = job
    return verify(inst, tol, max_terms).to_dict()


def _verify_all(instances: Sequence[IdentityInstance], tol, max_terms, jobs: int) -> list[dict]:
    work = [(inst, tol, max_terms) for inst in instances]
    if jobs <= 1 or len(work) <= 1:
        return [_verify_one(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        # map keeps instance order regardless of completion order
        return list(pool.map(_verify_one, work, chunksize=max(1, len(work) // (4 * jobs))))


# --------------------------------------------------------------------------
# commands


def _cmd_eval(args, out) -> int:
    what = args.what
    if what == "pfq":
        sv = pfq(_params(args), _complex(args.z), tol=args.tol or 1e-15, max_terms=args.max_terms)
    elif what == "weight":
        sv = weight_eval(classify_weight(_params(args)), args.x)
    elif what == "poly":
        fam = cs.PolyFamily(cs.PolyTag(args.family), args.lam)
        sv = SeriesValue(cs.classical_poly(fam, args.n, args.x), 0.0, args.n + 1, True, True)
    elif what == "bessel":
        sv = cs.bessel(cs.BesselKind(args.kind.upper()), args.order, args.x)
    elif what == "rep":
        extra = {k: getattr(args, k) for k in ("lam", "a_param", "nu") if getattr(args, k) is not None}
        if "a_param" in extra:
            extra["a"] = extra.pop("a_param")
        sv = rep_eval(args.target, args.n, args.x, tol=args.tol or 1e-10, max_terms=args.max_terms, **extra)
    else:  # overlap
        if args.preset:
            fam = PRESETS[args.preset]
        else:
            fam = CoherentStateFamily(CSKind(args.kind), _params(args))
        if fam.kind is CSKind.GK:
            z, zp = _floats(args.z), _floats(args.zp)
        else:
            z, zp = _complex(args.z), _complex(args.zp)
        sv = SeriesValue(overlap(fam, z, zp))
    _emit_value(args, f"eval {what}", sv, out)
    return EXIT_OK if sv.converged else EXIT_NUMERIC


def _cmd_suite(args, out) -> int:
    if args.instances:
        instances = _read_instances(args.instances)
    elif args.name:
        instances = builtin_suite(args.name)
    else:
        raise UsageError("suite needs --name or --instances")
    records = _verify_all(instances, args.tol, args.max_terms, args.jobs)
    counts = _emit_reports(args, records, out)
    return EXIT_OK if counts["fail"] == 0 else EXIT_NUMERIC


def _read_instances(path: str) -> list[IdentityInstance]:
    with open(path, encoding="utf-8") as fh:
        return load_instances(fh.read())


def _cmd_verify(args, out) -> int:
    if args.instances:
        instances = _read_instances(args.instances)
    elif args.instance:
        instances = load_instances(args.instance)
    else:
        raise UsageError("verify needs --instances <file> or --instance '<json record>'")
    records = _verify_all(instances, args.tol, args.max_terms, args.jobs)
    counts = _emit_reports(args, records, out)
    return EXIT_OK if counts["fail"] == 0 else EXIT_NUMERIC


def _cmd_list(args, out) -> int:
    listing = {
        "suites": sorted(SUITES) + ["all"],
        "representations": sorted(REPRESENTATIONS),
        "presets": sorted(PRESETS),
        "special_cases": sorted(SPECIAL_CASES),
    }
    if args.format == "json-lines":
        for kind, names in listing.items():
            out.write(json.dumps({"kind": kind, "names": names}) + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["kind", "name"])
        for kind, names in listing.items():
            for n in names:
                w.writerow([kind, n])
    else:
        for kind, names in listing.items():
            out.write(f"{kind}: {', '.join(names)}\n")
    return EXIT_OK


# --------------------------------------------------------------------------
# parser


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return v


def _term_budget(text: str) -> int:
    v = int(text)
    if v < 10:
        raise argparse.ArgumentTypeError("must be >= 10")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "json-lines", "csv"), default="human")
    common.add_argument("--tol", type=_positive_float, default=None,
                        help="tolerance (default: 1e-10 moment-only, 1e-6 quadrature-backed)")
    common.add_argument("--max-terms", type=_term_budget, default=None,
                        help=f"series term budget (default {DEFAULT_MAX_TERMS}, or CSINT_MAX_TERMS)")
    common.add_argument("--output", default=None, help="write to this file instead of stdout")
    common.add_argument("--jobs", type=int, default=os.cpu_count() or 1, help="worker processes")

    params = argparse.ArgumentParser(add_help=False)
    params.add_argument("--p", type=int, default=None)
    params.add_argument("--q", type=int, default=None)
    params.add_argument("--a", default=None, help="upper parameters, comma-separated")
    params.add_argument("--b", default=None, help="lower parameters, comma-separated")

    parser = argparse.ArgumentParser(prog="csint", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate a function")
    ev_sub = ev.add_subparsers(dest="what", required=True)
    p = ev_sub.add_parser("pfq", parents=[common, params])
    p.add_argument("--z", required=True, help="argument, 'x' or 're,im'")
    p = ev_sub.add_parser("weight", parents=[common, params])
    p.add_argument("--x", type=float, required=True)
    p = ev_sub.add_parser("poly", parents=[common])
    p.add_argument("--family", choices=[t.value for t in cs.PolyTag], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--lam", type=float, default=0.0)
    p = ev_sub.add_parser("bessel", parents=[common])
    p.add_argument("--kind", choices=("J", "I", "K", "j", "i", "k"), required=True)
    p.add_argument("--order", type=float, required=True)
    p.add_argument("--x", type=float, required=True)
    p = ev_sub.add_parser("overlap", parents=[common, params])
    p.add_argument("--preset", choices=sorted(PRESETS), default=None)
    p.add_argument("--kind", choices=[k.value for k in CSKind], default="BG")
    p.add_argument("--z", required=True, help="label 're,im' (GK: 'J,gamma')")
    p.add_argument("--zp", required=True)
    p = ev_sub.add_parser("rep", parents=[common])
    p.add_argument("--target", choices=sorted(REPRESENTATIONS), required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--lam", type=float, default=None)
    p.add_argument("--nu", type=float, default=None)
    p.add_argument("--a-param", dest="a_param", type=float, default=None)

    p = sub.add_parser("verify", parents=[common], help="verify instances from a file")
    p.add_argument("--instances", default=None, help="JSON-lines instance file")
    p.add_argument("--instance", default=None, help="a single JSON instance record")
    p = sub.add_parser("suite", parents=[common], help="run a built-in suite")
    p.add_argument("--name", default=None)
    p.add_argument("--instances", default=None)
    sub.add_parser("list", parents=[common], help="list suites, representations and presets")
    return parser


_COMMANDS = {"eval": _cmd_eval, "suite": _cmd_suite, "verify": _cmd_verify, "list": _cmd_list}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.max_terms is None:
        args.max_terms = max_terms_default()
    buffer = io.StringIO()
    try:
        code = _COMMANDS[args.command](args, buffer)
    except (UsageError, UnknownSuite) as exc:
        sys.stderr.write(f"csint: error: {exc}\n")
        return EXIT_USAGE
    except (CsintError, ArithmeticError, ValueError) as exc:
        sys.stderr.write(f"csint: error: {type(exc).__name__}: {exc}\n")
        return EXIT_NUMERIC
    except OSError as exc:
        sys.stderr.write(f"csint: I/O error: {exc}\n")
        return EXIT_NUMERIC
    text = buffer.getvalue()
    try:
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        sys.stderr.write(f"csint: I/O error: {exc}\n")
        return EXIT_NUMERIC
    return code


if __name__ == "__main__":
    sys.exit(main())
