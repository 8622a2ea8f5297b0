"""Command line front end; JSON output by default, aligned text with --text.

Exit codes: 0 success/pass, 1 check failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .counting import rep_count, theta_prefix
from .dataset import normalize_block_tag
from .forms import TernaryForm
from .genus import enumerate_genus
from .isometry import automorphism_order, is_isometric
from .search import SearchBounds, search_representing_one, verify_tables
from .ssr import check_ssr, min_square
from .watson import gamma_pair, watson_chain


def _form(text: str) -> TernaryForm:
    try:
        return TernaryForm.parse(text)
    except ValueError as ex:
        raise argparse.ArgumentTypeError(str(ex))


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--text", action="store_true",
                        help="aligned text output instead of JSON")
    ap = argparse.ArgumentParser(
        prog="tsl", parents=[common],
        description="Exact computations for positive definite ternary quadratic forms.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_parser(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    p = add_parser("rcount", help="representation number r(n, form)")
    p.add_argument("form", type=_form)
    p.add_argument("n", type=_nonnegative)
    p.add_argument("--solutions", action="store_true", help="include the solution set")

    p = add_parser("theta", help="r(0..B, form) in one sweep")
    p.add_argument("form", type=_form)
    p.add_argument("bound", type=_nonnegative)

    p = add_parser("ms", help="least n with r(n^2, form) > 0")
    p.add_argument("form", type=_form)
    p.add_argument("--cap", type=_positive, default=200)

    p = add_parser("ssr", help="strongly s-regular check up to a bound")
    p.add_argument("form", type=_form)
    p.add_argument("--bound", type=_positive, default=40)

    p = add_parser("watson", help="apply the lambda_p transformation")
    p.add_argument("form", type=_form)
    p.add_argument("p", type=_positive)
    p.add_argument("--times", type=_positive, default=1)

    p = add_parser("gamma", help="the two index-p sublattices with norm in pZ")
    p.add_argument("form", type=_form)
    p.add_argument("p", type=_positive)

    p = add_parser("genus", help="genus class representatives, orders, mass")
    p.add_argument("form", type=_form)

    p = add_parser("isometric", help="decide isometry of two forms")
    p.add_argument("form_f", type=_form)
    p.add_argument("form_g", type=_form)

    p = add_parser("auto", help="order of the automorphism group")
    p.add_argument("form", type=_form)

    p = add_parser("search", help="search strongly s-regular forms representing 1")
    p.add_argument("--scale", choices=("integral", "half"))
    p.add_argument("--block", help="block tag, e.g. '3∤dL' (ASCII alias '3!|dL')")
    p.add_argument("--bound", type=_positive, default=40)
    p.add_argument("--amax", type=_positive, default=81)
    p.add_argument("--bmax", type=_positive, default=81)
    p.add_argument("--dmax", type=_positive, default=4800)
    p.add_argument("--jobs", type=_positive, default=None)
    p.add_argument("--tables", help="dataset path override")

    p = add_parser("verify-tables", help="verify every dataset entry")
    p.add_argument("--bound", type=_positive, default=40)
    p.add_argument("--tables", help="dataset path override")
    p.add_argument("--skip-identities", action="store_true")
    return ap


def _emit(payload: dict, text_mode: bool) -> None:
    if text_mode:
        for key, value in payload.items():
            if isinstance(value, list) and value and isinstance(value[0], dict):
                print(f"{key}:")
                for item in value:
                    print("  " + "  ".join(f"{k}={v}" for k, v in item.items()))
            else:
                print(f"{key:<12} {value}")
    else:
        print(json.dumps(payload, ensure_ascii=False))


def _run(args) -> int:
    if args.command == "rcount":
        res = rep_count(args.form, args.n, with_solutions=args.solutions)
        payload = {"form": str(args.form), "n": res.n, "count": res.count}
        if args.solutions:
            payload["solutions"] = [list(s) for s in res.solutions]
        _emit(payload, args.text)
        return 0
    if args.command == "theta":
        res = theta_prefix(args.form, args.bound)
        _emit({"form": str(args.form), "bound": res.bound, "counts": list(res.counts)}, args.text)
        return 0
    if args.command == "ms":
        ms = min_square(args.form, args.cap)
        _emit({"form": str(args.form), "cap": args.cap, "ms": ms}, args.text)
        return 0 if ms is not None else 1
    if args.command == "ssr":
        rep = check_ssr(args.form, args.bound)
        payload = {"form": str(args.form), "bound": rep.bound, "ms": rep.m_s,
                   "passed": rep.passed,
                   "counterexample": None if rep.counterexample is None else
                   dict(zip(("n", "lhs", "rhs"), rep.counterexample))}
        _emit(payload, args.text)
        return 0 if rep.passed else 1
    if args.command == "watson":
        chain = watson_chain(args.form, args.p ** args.times)
        payload = {
            "form": str(args.form), "p": args.p, "times": args.times,
            "steps": [{"p": st.p, "input": str(st.input), "index": st.index,
                       "scale_factor": str(st.scale_factor), "output": str(st.output)}
                      for st in chain.steps],
            "output": str(chain.output(args.form)),
        }
        _emit(payload, args.text)
        return 0
    if args.command == "gamma":
        pair = gamma_pair(args.form, args.p)
        _emit({"form": str(args.form), "p": pair.p,
               "gamma1": str(pair.gamma1), "gamma2": str(pair.gamma2)}, args.text)
        return 0
    if args.command == "genus":
        gen = enumerate_genus(args.form)
        _emit({"form": str(args.form),
               "class_number": gen.class_number,
               "classes": [{"form": str(g), "auto_order": o} for g, o in gen.classes],
               "mass": str(gen.mass),
               "neighbor_primes": list(gen.neighbor_primes)}, args.text)
        return 0
    if args.command == "isometric":
        U = is_isometric(args.form_f, args.form_g)
        _emit({"f": str(args.form_f), "g": str(args.form_g),
               "isometric": U is not None,
               "map": None if U is None else [list(r) for r in U]}, args.text)
        return 0 if U is not None else 1
    if args.command == "auto":
        _emit({"form": str(args.form), "order": automorphism_order(args.form)}, args.text)
        return 0
    if args.command == "search":
        rep = search_representing_one(
            bound=args.bound,
            bounds=SearchBounds(a_max=args.amax, b_max=args.bmax, disc_max=args.dmax),
            scale=args.scale,
            block=normalize_block_tag(args.block) if args.block else None,
            jobs=args.jobs, tables_path=args.tables)
        _emit({"bound": rep.bound, "scale": rep.scale, "block": rep.block,
               "candidates_examined": rep.candidates_examined,
               "passers": [str(f) for f in rep.passers],
               "count": len(rep.passers),
               "matched_against_dataset": rep.matched_against_dataset,
               "discrepancies": list(rep.discrepancies),
               "hard_errors": list(rep.hard_errors),
               "note": rep.note}, args.text)
        return 0 if rep.matched_against_dataset else 1
    if args.command == "verify-tables":
        rep = verify_tables(bound=args.bound, tables_path=args.tables,
                            include_identities=not args.skip_identities)
        _emit({"bound": rep.bound, "entries": rep.entries,
               "block_counts": rep.block_counts,
               "entry_failures": list(rep.entry_failures),
               "identity_failures": list(rep.identity_failures),
               "passed": rep.passed, "note": rep.note}, args.text)
        return 0 if rep.passed else 1
    raise AssertionError(f"unhandled command {args.command}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as ex:
        return 2 if ex.code not in (0, None) else 0
    if "TSL_THREADS" in os.environ and getattr(args, "jobs", None) is None:
        try:
            args.jobs = max(1, int(os.environ["TSL_THREADS"]))
        except ValueError:
            print("invalid TSL_THREADS value", file=sys.stderr)
            return 2
    try:
        return _run(args)
    except (ValueError, RuntimeError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
