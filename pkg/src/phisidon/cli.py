"""Command-line interface.

Exit codes: 0 success / true verdict, 1 checked-false verdict, 2 usage or
precondition error, 3 budget refusal, 4 internal error.  Results go to
stdout as JSON, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .bound_analysis import density_check, refute_bounded, sweep_greedy_bound
from .constructor import check_growth, construct_bounded, construct_poly
from .exceptions import BudgetExceeded, ConstructionError, PreconditionError, SidonError
from .linear_form import DEFAULT_MAX_ARITY, has_property_N, parse_form, vanishing_subset
from .sequence_io import INFINITE_SCHEMES, emit_trace, parse_sequence_spec, parse_set_spec
from .sidon_engine import DEFAULT_BUDGET, is_sidon, phi_image

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_BUDGET, EXIT_INTERNAL = 0, 1, 2, 3, 4

ENV_BUDGET = "PHISIDON_BUDGET"
ENV_MAX_ARITY = "PHISIDON_MAX_ARITY"
ENV_THREADS = "PHISIDON_THREADS"

MAX_REPORTED_VIOLATIONS = 20


class UsageError(PreconditionError):
    pass


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"environment variable {name}={raw!r} is not an integer") from None


def _rational(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentDefaultsHelpFormatter
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--threads", type=int, default=_env_int(ENV_THREADS, os.cpu_count() or 1),
        help=f"worker processes for exhaustive enumerations; results do not depend on it (env {ENV_THREADS})",
    )
    common.add_argument(
        "--budget", type=int, default=_env_int(ENV_BUDGET, DEFAULT_BUDGET),
        help=f"maximum tuples per exhaustive enumeration (env {ENV_BUDGET})",
    )
    common.add_argument(
        "--max-arity", type=int, default=_env_int(ENV_MAX_ARITY, DEFAULT_MAX_ARITY),
        help=f"largest arity accepted by the property-N check (env {ENV_MAX_ARITY})",
    )
    common.add_argument("--pretty", action="store_true", default=False,
                        help="also print a human-readable summary on stderr")

    parser = argparse.ArgumentParser(
        prog="phisidon",
        description="Construct, verify and refute phi-Sidon perturbations of integer sequences.",
        formatter_class=fmt,
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-form", parents=[common], formatter_class=fmt,
                       help="decide property N for a linear form")
    p.add_argument("--form", required=True, help="comma-separated coefficients, e.g. 1,3")

    p = sub.add_parser("verify", parents=[common], formatter_class=fmt,
                       help="brute-force phi-Sidon check of a finite set")
    p.add_argument("--form", required=True, help="comma-separated coefficients")
    p.add_argument("--set", required=True, dest="set_spec",
                   help="file path, bare csv, or sequence spec (list:..., file:..., squares, ...)")
    p.add_argument("--terms", type=int, default=None,
                   help="number of terms to take from an infinite sequence spec")

    p = sub.add_parser("construct", parents=[common], formatter_class=fmt,
                       help="build a phi-Sidon perturbation of a sequence")
    p.add_argument("--form", required=True, help="comma-separated coefficients")
    p.add_argument("--mode", choices=("poly", "bounded"), default="poly",
                   help="greedy nearest-valid (poly) or growth-condition bounded")
    p.add_argument("--sequence", required=True, help="sequence spec")
    p.add_argument("--terms", type=int, required=True, help="number of terms K")
    p.add_argument("--m", type=int, default=0, help="growth slack m (bounded mode)")
    p.add_argument("--m0", type=_rational, default=None,
                   help="perturbation bound m0 (bounded mode); default max(m, 1)")
    p.add_argument("--format", choices=("json", "csv"), default="json", help="trace format")
    p.add_argument("--out", default=None, help="write the trace here instead of stdout")

    p = sub.add_parser("refute", parents=[common], formatter_class=fmt,
                       help="search for a window certificate refuting bounded perturbations")
    p.add_argument("--form", required=True, help="comma-separated coefficients")
    p.add_argument("--sequence", required=True, help="sequence spec")
    p.add_argument("--m0", type=int, required=True, help="perturbation bound to refute")
    p.add_argument("--limit", type=int, required=True, help="largest window end t searched")

    p = sub.add_parser("density", parents=[common], formatter_class=fmt,
                       help="check |b_t - b_s| <= (t-s+1)^(h-epsilon) on a prefix")
    p.add_argument("--sequence", required=True, help="sequence spec")
    p.add_argument("--h", type=int, required=True, help="arity h")
    p.add_argument("--epsilon", type=_rational, required=True, help="epsilon as p/q")
    p.add_argument("--terms", type=int, required=True, help="prefix length K")

    p = sub.add_parser("growth", parents=[common], formatter_class=fmt,
                       help="check b_1 > m and b_{k+1} > C b_k + (C+1) m on a prefix")
    p.add_argument("--form", required=True, help="comma-separated coefficients")
    p.add_argument("--sequence", required=True, help="sequence spec")
    p.add_argument("--m", type=int, default=0, help="growth slack m")
    p.add_argument("--terms", type=int, required=True, help="prefix length K")

    p = sub.add_parser("bound-sweep", parents=[common], formatter_class=fmt,
                       help="check 4^h n^(2h-1) + n < (n+1)^(4h) over a grid")
    p.add_argument("--max-h", type=int, default=6, help="largest h")
    p.add_argument("--max-n", type=int, default=10_000, help="largest n")
    return parser


def _load_set(spec, terms):
    scheme = spec.split(":", 1)[0].strip()
    if ":" not in spec and scheme not in INFINITE_SCHEMES or scheme in ("list", "file"):
        values = parse_set_spec(spec)
        return values if terms is None else values[:terms]
    seq = parse_sequence_spec(spec)
    if terms is None:
        raise UsageError(f"{spec} is infinite; pass --terms")
    return list(seq.prefix(terms))


def cmd_check_form(args):
    form = parse_form(args.form)
    ok, witness = has_property_N(form, max_arity=args.max_arity)
    out = {"property_N": ok, "C": str(form.norm), "h": form.h}
    if witness is not None:
        out["witness"] = witness.to_json()
    zero = vanishing_subset(form)
    if zero is not None:
        out["zero_sum_subset"] = list(zero.indices)
    return out, EXIT_OK if ok else EXIT_FALSE


def cmd_verify(args):
    form = parse_form(args.form)
    A = _load_set(args.set_spec, args.terms)
    ok, witness = is_sidon(form, A, budget=args.budget, n_jobs=args.threads)
    total = len(A) ** form.h
    distinct = total if ok else phi_image(form, A, budget=args.budget, n_jobs=args.threads).distinct
    out = {"sidon": ok, "distinct": distinct, "total": total}
    if witness is not None:
        out["witness"] = witness.to_json()
    return out, EXIT_OK if ok else EXIT_FALSE


def cmd_construct(args):
    form = parse_form(args.form)
    seq = parse_sequence_spec(args.sequence)
    if args.terms < 0:
        raise UsageError("--terms must be >= 0")
    if args.mode == "poly":
        trace = construct_poly(form, seq, args.terms, budget=args.budget)
    else:
        trace = construct_bounded(form, seq, args.m, args.terms, m0=args.m0, budget=args.budget)
    if args.out is None:
        return emit_trace(trace, args.format), EXIT_OK
    emit_trace(trace, args.format, args.out)
    return {"out": args.out, "steps": len(trace), "max_deviation": str(trace.max_deviation)}, EXIT_OK


def cmd_refute(args):
    form = parse_form(args.form)
    cert = refute_bounded(form, parse_sequence_spec(args.sequence), args.m0, args.limit)
    out = {"found": cert is not None}
    if cert is not None:
        out["certificate"] = cert.to_json()
    return out, EXIT_OK if cert is not None else EXIT_FALSE


def cmd_density(args):
    res = density_check(parse_sequence_spec(args.sequence), args.h, args.epsilon, args.terms)
    out = res.to_json()
    out["violation_count"] = len(res.violations)
    out["violations"] = out["violations"][:MAX_REPORTED_VIOLATIONS]
    return out, EXIT_OK if res.passed else EXIT_FALSE


def cmd_growth(args):
    res = check_growth(parse_form(args.form), parse_sequence_spec(args.sequence), args.m, args.terms)
    return res.to_json(), EXIT_OK if res.passed else EXIT_FALSE


def cmd_bound_sweep(args):
    fail = sweep_greedy_bound(args.max_h, args.max_n)
    out = {"all_hold": fail is None, "max_h": args.max_h, "max_n": args.max_n}
    if fail is not None:
        out["first_failure"] = {"h": fail[0], "n": fail[1]}
    return out, EXIT_OK if fail is None else EXIT_FALSE


COMMANDS = {
    "check-form": cmd_check_form,
    "verify": cmd_verify,
    "construct": cmd_construct,
    "refute": cmd_refute,
    "density": cmd_density,
    "growth": cmd_growth,
    "bound-sweep": cmd_bound_sweep,
}


def _summary(command, result, code):
    verdict = {EXIT_OK: "ok", EXIT_FALSE: "negative verdict"}.get(code, "error")
    if isinstance(result, str):
        return f"{command}: {verdict}"
    keys = ", ".join(f"{k}={v}" for k, v in sorted(result.items()) if not isinstance(v, (dict, list)))
    return f"{command}: {verdict} ({keys})"


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    try:
        result, code = COMMANDS[args.command](args)
    except BudgetExceeded as exc:
        print(f"budget refusal: {exc}", file=stderr)
        return EXIT_BUDGET
    except ConstructionError as exc:
        print(f"internal error: {exc}", file=stderr)
        return EXIT_INTERNAL
    except (SidonError, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    if isinstance(result, str):
        stdout.write(result)
    else:
        stdout.write(json.dumps(result, sort_keys=True) + "\n")
    if args.pretty:
        print(_summary(args.command, result, code), file=stderr)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
