"""Command-line interface: ``ratknot <command> ...``."""
from __future__ import annotations

import argparse
import json
import multiprocessing
import sys
import time
from contextlib import nullcontext, redirect_stderr, redirect_stdout
from typing import Sequence

from ratknot.algebra import FieldElem
from ratknot.cfalgebra import (
    ContinuedFraction,
    ExtendedRational,
    canonical_link_form,
    even_cf,
    eval_cf,
    parse_cf,
    parse_fraction,
    positive_cf,
)
from ratknot.errors import DomainError, RatKnotError
from ratknot.fpoly import f_poly_brute, f_poly_recursive
from ratknot.invariants import (
    alexander_from_homfly,
    homfly,
    homfly_oracle,
    homfly_theorem,
    jones_from_homfly,
)
from ratknot.poset import poset_from_cf, poset_from_rational, render_ascii, render_dot
from ratknot.verify import DEFAULT_SEED, build_suites, run_suite

__all__ = ["main", "build_parser", "run"]


class UsageError(Exception):
    pass


def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("fraction", nargs="?", help="rational p/q (or a bare integer)")
    p.add_argument("--cf", help="continued fraction c1,c2,... instead of p/q")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ratknot",
        description="HOMFLY, Jones and Alexander polynomials of rational links via path posets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("homfly", help="HOMFLY polynomial in l and q^(1/2)")
    _add_input(p)
    p.add_argument("--method", choices=("theorem", "skein"), default="theorem")
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")

    for name, text in (("jones", "Jones polynomial in t^(1/2)"), ("alexander", "Alexander polynomial in t^(1/2)")):
        p = sub.add_parser(name, help=text)
        _add_input(p)
        p.add_argument("--method", choices=("theorem", "skein"), default="theorem")
        p.add_argument("--json", action="store_true")

    p = sub.add_parser("fpoly", help="F-polynomial of the path poset")
    _add_input(p)
    p.add_argument("--method", choices=("recursive", "brute"), default="recursive")

    p = sub.add_parser("poset", help="draw the path poset")
    _add_input(p)
    p.add_argument("--format", choices=("ascii", "dot"), default="ascii")

    p = sub.add_parser("cf", help="continued fraction expansion")
    p.add_argument("fraction")
    p.add_argument("--form", choices=("positive", "even"), default="positive")

    p = sub.add_parser("verify", help="run the oracle-equivalence suites")
    p.add_argument("--max-num", type=int, default=50, help="largest numerator p for fraction sweeps")
    p.add_argument("--sweep-depth", type=int, default=4, help="longest even CF in the {-4,-2,2,4} sweep")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--random-count", type=int, default=200)

    p = sub.add_parser("batch", help="one fraction per line in, one JSON object per line out")
    p.add_argument("file", help="input file, or - for stdin")
    return parser


# -- input handling -------------------------------------------------------------


def _input(args) -> ExtendedRational | ContinuedFraction:
    frac, cf = args.fraction, getattr(args, "cf", None)
    if (frac is None) == (cf is None):
        raise UsageError("give exactly one of P/Q or --cf")
    if cf is not None:
        return parse_cf(cf)
    return parse_fraction(frac)


def _homfly_of(x, method: str) -> FieldElem:
    oracle = method == "skein"
    if isinstance(x, ContinuedFraction):
        if x.is_even:
            return homfly_oracle(x) if oracle else homfly_theorem(x)
        x = eval_cf(x)
    return homfly(x, "oracle" if oracle else "theorem")


def _poset_input(x):
    if isinstance(x, ContinuedFraction):
        return x, poset_from_cf(x)
    if not x.at_least_one():
        raise DomainError(f"the path poset Q({x}) needs p/q >= 1")
    return positive_cf(x), poset_from_rational(x)


def _emit(value: FieldElem, as_json: bool) -> str:
    if as_json:
        return json.dumps(value.to_json())
    return str(value)


# -- commands ----------------------------------------------------------------------


def _cmd_invariant(args) -> str:
    x = _input(args)
    h = _homfly_of(x, args.method)
    if args.command == "jones":
        h = jones_from_homfly(h)
    elif args.command == "alexander":
        h = alexander_from_homfly(h)
    return _emit(h, args.json)


def _cmd_fpoly(args) -> str:
    x = _input(args)
    cf, poset = _poset_input(x)
    if args.method == "brute":
        return str(f_poly_brute(poset))
    return str(f_poly_recursive(cf))


def _cmd_poset(args) -> str:
    _, poset = _poset_input(_input(args))
    return render_dot(poset) if args.format == "dot" else render_ascii(poset)


def _cmd_cf(args) -> str:
    r = parse_fraction(args.fraction)
    cf = positive_cf(r) if args.form == "positive" else even_cf(r)
    return str(cf)


def _cmd_verify(args, out) -> int:
    suites = build_suites(args.max_num, args.sweep_depth, args.seed, args.random_count)
    print(f"seed {args.seed}", file=out)
    failed = False
    pool = multiprocessing.Pool(args.jobs) if args.jobs > 1 else None
    try:
        for suite in suites:
            start = time.perf_counter()
            passed, total, first = run_suite(suite, pool)
            took = time.perf_counter() - start
            status = "PASS" if first is None else "FAIL"
            print(f"{status} {suite.name}: {passed}/{total} ({took:.2f}s)", file=out)
            if first is not None:
                print(f"  first failure: {first}", file=out)
                failed = True
    finally:
        if pool is not None:
            pool.close()
            pool.join()
    return 1 if failed else 0


def batch_record(line: str) -> dict:
    text = line.strip()
    try:
        r = parse_fraction(text)
        h = homfly(r)
        form = canonical_link_form(r)
        return {
            "input": text,
            "canonical": str(form) if isinstance(form, ContinuedFraction) else form.value,
            "homfly": h.to_json(),
            "homfly_text": str(h),
            "jones": str(jones_from_homfly(h)),
            "alexander": str(alexander_from_homfly(h)),
        }
    except RatKnotError as exc:
        return {"input": text, "error": f"{type(exc).__name__}: {exc}"}


def _cmd_batch(args, out) -> int:
    stream = nullcontext(sys.stdin) if args.file == "-" else open(args.file, encoding="utf-8")
    with stream as lines:
        for line in lines:
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            print(json.dumps(batch_record(line)), file=out)
    return 0


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with redirect_stdout(out), redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command in ("homfly", "jones", "alexander"):
            print(_cmd_invariant(args), file=out)
        elif args.command == "fpoly":
            print(_cmd_fpoly(args), file=out)
        elif args.command == "poset":
            print(_cmd_poset(args), file=out)
        elif args.command == "cf":
            print(_cmd_cf(args), file=out)
        elif args.command == "verify":
            return _cmd_verify(args, out)
        elif args.command == "batch":
            return _cmd_batch(args, out)
    except (UsageError, DomainError) as exc:
        parser.print_usage(err)
        print(f"ratknot: error: {exc}", file=err)
        return 2
    except RatKnotError as exc:
        print(f"ratknot: {type(exc).__name__}: {exc}", file=err)
        return 1
    except OSError as exc:
        print(f"ratknot: {exc}", file=err)
        return 1
    return 0


def main() -> None:
    sys.exit(run())
