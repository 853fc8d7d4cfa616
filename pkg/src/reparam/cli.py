"""Command-line front end.

Exit codes: 0 success, 1 validation failure (the report is still printed),
2 malformed input, 3 internal assertion.
"""
from __future__ import annotations

import argparse
import os
import random
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence

from . import catalog, io
from .construct import (
    DyadicDepthExceeded,
    InvalidStopMap,
    OutOfDomain,
    approximants,
    build_from_stopmap,
    dyadic_assignment,
    dyadic_run,
    evaluate,
    phi_k,
    stop_data_of_reparam,
    sup_distance,
)
from .exactnum import parse_rational
from .pathreg import PLPath, compose, is_regular, paths_equal, regularize, stop_intervals_of_path
from .stopdata import check_conditions, check_conditions_lazy

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_MALFORMED = 2
EXIT_INTERNAL = 3


class UsageError(ValueError):
    pass


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise io.ParseError(f"{path}: {exc.strerror}") from None


def _load(path: str, kind: str):
    return io.parse_document(_read(path), kind)


def _load_path(path: str, force_csv: bool = False) -> PLPath:
    kind = "csv-path" if force_csv or path.lower().endswith(".csv") else "path"
    return _load(path, kind)


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _enumeration(text: Optional[str]) -> Optional[List[int]]:
    if text is None:
        return None
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise UsageError(f"bad enumeration {text!r}; expected e.g. 2,1,3") from None


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def cmd_validate(args) -> int:
    if args.catalog:
        if args.file:
            raise UsageError("give either a stop-map file or --catalog, not both")
        if args.depth is None:
            raise UsageError("--catalog needs --depth")
        params = {}
        for item in args.param or ():
            key, _, value = item.partition("=")
            params[key.replace("-", "_")] = parse_rational(value)
        try:
            entry = catalog.lookup(args.catalog, **params)
        except (KeyError, TypeError) as exc:
            raise UsageError(str(exc).strip("'\"")) from None
        report = check_conditions_lazy(entry.family, entry.values, args.depth)
    else:
        if not args.file:
            raise UsageError("validate needs a stop-map file or --catalog")
        if args.depth is not None:
            raise UsageError("--depth applies only to --catalog families")
        report = check_conditions(_load(args.file, "stopmap"))
    sys.stdout.write(io.render_report_json(report) if args.json else io.render_report(report))
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_build(args) -> int:
    f = _load(args.file, "stopmap")
    try:
        phi = build_from_stopmap(f)
    except InvalidStopMap as exc:
        sys.stdout.write(io.render_report(exc.report))
        return EXIT_INVALID
    _emit(io.render_document(phi), args.output)
    return EXIT_OK


def cmd_stops(args) -> int:
    phi = _load(args.file, "reparam")
    _emit(io.render_document(stop_data_of_reparam(phi)), args.output)
    return EXIT_OK


def cmd_dyadic(args) -> int:
    delta = _load(args.file, "family")
    enum = _enumeration(args.enumeration)
    if args.depth is None:
        phi, assignment = dyadic_run(delta, enum)
        assignment = dyadic_assignment(delta, enum, assignment.depth)
    else:
        phi = phi_k(delta, enum, args.depth)
        assignment = dyadic_assignment(delta, enum, args.depth)
    _emit(io.render_document(phi), args.output)
    if args.assignment:
        Path(args.assignment).write_text(io.dumps(assignment.to_json()), encoding="utf-8")
    return EXIT_OK


def cmd_regularize(args) -> int:
    p = _load_path(args.file, args.csv)
    q, phi = regularize(p)
    if args.q_out is None and args.phi_out is None:
        sys.stdout.write(io.dumps({"q": q.to_json(), "phi": phi.to_json()}))
        return EXIT_OK
    if args.q_out is not None:
        _emit(io.render_document(q), args.q_out)
    if args.phi_out is not None:
        _emit(io.render_document(phi), args.phi_out)
    return EXIT_OK


def cmd_eval(args) -> int:
    phi = _load(args.file, "reparam")
    lines = []
    for text in args.t:
        try:
            lines.append(io.format_rational(evaluate(phi, parse_rational(text))))
        except OutOfDomain as exc:
            raise io.SchemaError(str(exc)) from None
        except ValueError as exc:
            raise io.ParseError(str(exc)) from None
    sys.stdout.write("".join(line + "\n" for line in lines))
    return EXIT_OK


def _detect_sample_kind(path: str, data: bytes) -> str:
    if path.lower().endswith(".csv"):
        return "csv-path"
    return "path" if b'"dim"' in data else "reparam"


def cmd_sample(args) -> int:
    if args.n < 1:
        raise UsageError("-n must be positive")
    data = _read(args.file)
    obj = io.parse_document(data, _detect_sample_kind(args.file, data))
    ts = [Fraction(i, args.n) for i in range(args.n + 1)]
    prec = args.precision
    if isinstance(obj, PLPath):
        header = ["t"] + [f"x{i + 1}" for i in range(obj.dim)]
        rows = [[io.format_decimal(t, prec)] + [io.format_decimal(c, prec) for c in pt]
                for t, pt in zip(ts, obj.evaluate_sorted(ts))]
    else:
        header = ["t", "phi"]
        rows = [[io.format_decimal(t, prec), io.format_decimal(v, prec)]
                for t, v in zip(ts, obj.evaluate_sorted(ts))]
    _emit(io.render_csv(header, rows), args.output)
    return EXIT_OK


def cmd_check_convergence(args) -> int:
    delta = _load(args.file, "family")
    phis = approximants(delta, _enumeration(args.enumeration), args.max_k + 1)
    rows = []
    ok = True
    for k in range(args.max_k + 1):
        dist = sup_distance(phis[k], phis[k + 1])
        bound = Fraction(1, 2 ** k)
        passed = dist < bound
        ok = ok and passed
        rows.append([str(k), io.format_rational(dist), io.format_rational(bound),
                     "PASS" if passed else "FAIL"])
    _emit(io.render_csv(["k", "sup_distance", "bound", "status"], rows), args.output)
    return EXIT_OK if ok else EXIT_INVALID


def cmd_selftest(args) -> int:
    from .testing import random_path, random_stop_map

    seed = int(os.environ.get("REPARAM_SEED", "0"))
    rng = random.Random(seed)
    failures = 0
    for _ in range(args.count):
        f = random_stop_map(rng, max_n=20, max_den=1000)
        if stop_data_of_reparam(build_from_stopmap(f)) != f:
            failures += 1
        p = random_path(rng, max_points=30)
        q, phi = regularize(p)
        if not (is_regular(q) and paths_equal(compose(q, phi), p)):
            failures += 1
        if not p.is_constant() and stop_data_of_reparam(phi).family != stop_intervals_of_path(p):
            failures += 1
    print(f"seed {seed}: {args.count} rounds, {failures} failures")
    return EXIT_OK if failures == 0 else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reparam",
        description="Exact reparametrizations of [0,1] with prescribed stop data.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("validate", help="check a stop map against the realizability conditions")
    p.add_argument("file", nargs="?")
    p.add_argument("--json", action="store_true", help="emit the report as JSON")
    p.add_argument("--catalog", help="check a built-in countable family instead of a file")
    p.add_argument("--param", action="append", metavar="KEY=VALUE",
                   help="rational parameter for the catalog family")
    p.add_argument("--depth", type=int, help="number of generated intervals to inspect")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("build", help="realize a stop map as a reparametrization")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("stops", help="extract the stop map of a reparametrization")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_stops)

    p = sub.add_parser("dyadic", help="realize a stop family by the dyadic construction")
    p.add_argument("file")
    p.add_argument("--enumeration", help="comma separated permutation of 1..n")
    p.add_argument("--depth", type=int, help="emit the approximant of this depth instead of the limit")
    p.add_argument("--assignment", help="also write the dyadic assignment here")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_dyadic)

    p = sub.add_parser("regularize", help="factor a path as q∘phi with q regular")
    p.add_argument("file")
    p.add_argument("--csv", action="store_true", help="read the path as CSV rows t,x1,...,xd")
    p.add_argument("--q-out")
    p.add_argument("--phi-out")
    p.set_defaults(func=cmd_regularize)

    p = sub.add_parser("eval", help="evaluate a reparametrization at rational points")
    p.add_argument("file")
    p.add_argument("t", nargs="+")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sample", help="equispaced decimal samples as CSV")
    p.add_argument("file")
    p.add_argument("-n", type=int, required=True, help="number of subintervals")
    p.add_argument("--precision", type=int, default=12)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("check-convergence", help="tabulate sup|phi_k - phi_k+1| against 1/2^k")
    p.add_argument("file")
    p.add_argument("--max-k", type=int, required=True)
    p.add_argument("--enumeration")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_check_convergence)

    p = sub.add_parser("selftest", help="randomized round trips; seed from REPARAM_SEED")
    p.add_argument("--count", type=int, default=100)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (io.ParseError, io.SchemaError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except ValueError as exc:
        # invariant violations raised while decoding user data
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except (DyadicDepthExceeded, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
