"""Command line front end.

Exit codes: 0 all checks pass, 1 a mathematical identity fails, 2 bad input.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Sequence

from .bounds import degree_bound
from .builtins import BUILTIN_NAMES, builtin
from .group import Chart, chart_maps, chart_convert, left_invariant_fields
from .io import DocumentError, algebra_to_document, dumps, load_algebra
from .lie import LieAlgebra, LieAlgebraError, NotNilpotentError, validate
from .poly import Ring
from .solver import PER_DIRECTION, SUBSPACE, NotLieGeneratingError, SPolyProblem, spoly_basis
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    pass


def _load(spec: str) -> LieAlgebra:
    if spec.startswith("builtin:"):
        return builtin(spec.split(":", 1)[1])
    A, _ = load_algebra(spec)
    return A


def _split_top(text: str) -> list[str]:
    """Split on commas outside square brackets."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def parse_element(A: LieAlgebra, text: str) -> tuple[Fraction, ...]:
    """A linear combination of basis names, e.g. ``X1 + 2*X3`` or ``1/2*[X2,X1]``."""
    subst = text
    for i in sorted(range(A.dim), key=lambda i: -len(A.names[i])):
        subst = subst.replace(A.names[i], f"_e{i}")
    ring = Ring([f"_e{i}" for i in range(A.dim)])
    try:
        p = ring.parse(subst)
    except Exception as exc:
        raise InputError(f"cannot parse algebra element {text!r}: {exc}") from None
    if p.degree() != 1 or any(sum(m) != 1 for m in p.terms):
        raise InputError(f"{text!r} is not a linear combination of {', '.join(A.names)}")
    vec = [Fraction(0)] * A.dim
    for m, c in p.terms.items():
        vec[m.index(1)] = c
    return tuple(vec)


def parse_S(A: LieAlgebra, spec: str, default_k: int | None) -> tuple[list, list[int]]:
    elems, orders = [], []
    for item in _split_top(spec):
        expr, sep, k = item.rpartition(":")
        if not sep:
            expr, k = item, None
        if k is None:
            if default_k is None:
                raise InputError(f"no order for {item!r}; write NAME:ORDER or pass --k")
            order = default_k
        else:
            try:
                order = int(k)
            except ValueError:
                raise InputError(f"order in {item!r} must be an integer") from None
        elems.append(parse_element(A, expr))
        orders.append(order)
    if not elems:
        raise InputError("empty --S")
    return elems, orders


def _emit(args, payload: dict, lines: Sequence[str]) -> None:
    if args.json:
        print(dumps(payload))
    else:
        for line in lines:
            print(line)


# -- verbs --------------------------------------------------------------------

def cmd_validate(args) -> int:
    A = _load(args.algebra)
    try:
        rep = validate(A)
    except NotNilpotentError as exc:
        _emit(args, {"valid": True, "nilpotent": False, "error": str(exc)}, [f"valid Lie algebra, not nilpotent: {exc}"])
        return EXIT_FAIL
    except LieAlgebraError as exc:
        _emit(args, {"valid": False, "error": str(exc)}, [f"invalid: {exc}"])
        return EXIT_FAIL
    d = rep.as_dict()
    d["name"] = A.name
    _emit(
        args,
        d,
        [
            f"{A.name or 'algebra'}: valid, dimension {A.dim}",
            f"step {rep.step}",
            "LCS dims (" + ",".join(map(str, rep.lcs_dims)) + ")",
        ],
    )
    return EXIT_OK


def cmd_solve(args) -> int:
    A = _load(args.algebra)
    if args.subspace:
        if args.S:
            raise InputError("use either --S or --subspace")
        k = args.k or 2
        if args.subspace == "V1":
            if A.weights is None:
                raise InputError("--subspace V1 needs an algebra with layer weights")
            elems = [A.basis_vector(i) for i in A.layer(1)]
        else:
            elems, _ = parse_S(A, args.subspace, k)
        problem = SPolyProblem(A, tuple(elems), (k,) * len(elems), Chart(args.chart), SUBSPACE)
    else:
        if not args.S:
            raise InputError("give directions with --S NAME:ORDER,... or --subspace")
        elems, orders = parse_S(A, args.S, args.k)
        problem = SPolyProblem(A, tuple(elems), tuple(orders), Chart(args.chart), PER_DIRECTION)
    B = spoly_basis(problem, degree=args.degree, method=args.method)
    payload = B.as_dict()
    lines = [
        f"algebra {A.name or '?'}, chart {problem.chart}, mode {problem.mode}, S = {', '.join(problem.describe_S())}",
        f"dimension {B.dimension}, solve degree {B.degree}, {B.certificate} ({B.method})",
    ]
    if B.bound is not None:
        lines.append(f"degree bound: {B.bound}")
    lines += [f"  {p}" for p in B.basis]
    _emit(args, payload, lines)
    return EXIT_OK if B.certificate != "unverified" else EXIT_FAIL


def cmd_verify(args) -> int:
    checks = run_suite(args.suite, seed=args.seed)
    failed = [c for c in checks if not c.passed]
    payload = {
        "suite": args.suite,
        "seed": args.seed,
        "passed": len(checks) - len(failed),
        "failed": len(failed),
        "checks": [c.as_dict() for c in checks],
    }
    lines = [f"{'PASS' if c.passed else 'FAIL'}  [{c.suite}] {c.name}" + (f"  ({c.detail})" if c.detail else "") for c in checks]
    lines.append(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    _emit(args, payload, lines)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_bound(args) -> int:
    w = degree_bound(args.kk, args.s, args.l)
    _emit(args, w.as_dict(), [str(w)])
    return EXIT_OK


def cmd_fields(args) -> int:
    A = _load(args.algebra)
    fields = left_invariant_fields(A, Chart(args.chart))
    payload = {"algebra": A.name, "chart": args.chart, "fields": {A.names[i]: str(f) for i, f in enumerate(fields)}}
    _emit(args, payload, [f"{A.names[i]} = {f}" for i, f in enumerate(fields)])
    return EXIT_OK


def cmd_convert(args) -> int:
    A = _load(args.algebra)
    chart = Chart(args.chart)
    if args.point is None:
        to_first, from_first = chart_maps(A, chart)
        payload = {
            "chart": args.chart,
            "to_first": [str(p) for p in to_first],
            "from_first": [str(p) for p in from_first],
        }
        names = chart.names(A.dim)
        lines = [f"a{i + 1} = {p}" for i, p in enumerate(to_first)]
        lines += [f"{names[i]} = {p}" for i, p in enumerate(from_first)]
        _emit(args, payload, lines)
        return EXIT_OK
    try:
        point = [Fraction(v) for v in _split_top(args.point)]
    except (ValueError, ZeroDivisionError):
        raise InputError(f"--point must be comma separated rationals, got {args.point!r}") from None
    out = chart_convert(A, chart, point, inverse=(args.direction == "from-first"))
    payload = {"chart": args.chart, "direction": args.direction, "input": [str(v) for v in point], "output": [str(v) for v in out]}
    _emit(args, payload, [", ".join(str(v) for v in out)])
    return EXIT_OK


_DESCRIPTIONS = {
    "heisenberg": "[X1,X2]=X3; stratified, step 2",
    "engel": "[X1,X2]=X3, [X1,X3]=X4; stratified, step 3",
    "f23": "[X2,X1]=X3, [X3,X1]=X4, [X3,X2]=X5; free step 3 rank 2",
    "aff_plus": "[X,Y]=-X; affine group of the line (not nilpotent)",
    "sl2r": "[X1,X2]=2X2, [X1,X3]=-2X3, [X2,X3]=X1 (not nilpotent)",
    "free-M-S": "free-nilpotent algebra on M >= 2 generators of step S (Hall basis)",
    "abelian-N": "abelian algebra of dimension N",
}


def cmd_examples(args) -> int:
    payload = {"builtins": [{"name": n, "description": _DESCRIPTIONS[n]} for n in BUILTIN_NAMES]}
    if args.show:
        payload = algebra_to_document(builtin(args.show))
        _emit(args, payload, [dumps(payload)])
        return EXIT_OK
    _emit(args, payload, [f"builtin:{n:<12} {_DESCRIPTIONS[n]}" for n in BUILTIN_NAMES])
    return EXIT_OK


# -- parser -------------------------------------------------------------------

def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output with sorted keys")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks (default 0)")

    parser = argparse.ArgumentParser(prog="nilpoly", description="Exact S-polynomial spaces on nilpotent Lie groups.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("validate", parents=[common], help="check Lie algebra axioms and nilpotency")
    p.add_argument("algebra", help="JSON file or builtin:NAME")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("solve", parents=[common], help="compute the space of S-polynomial functions")
    p.add_argument("algebra")
    p.add_argument("--S", help="directions with orders, e.g. X1:1,X2:2 or X1+X3:2")
    p.add_argument("--subspace", help="V1 or a list of elements: X^k f = 0 for every X in their span")
    p.add_argument("--k", type=_positive, help="order for --subspace, or default order for --S entries")
    p.add_argument("--chart", choices=["first", "second"], default="second")
    p.add_argument("--degree", type=int, help="solve degree; the certificate is downgraded below the bound")
    p.add_argument("--method", choices=["auto", "graded", "free_lift", "direct"], default="auto")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", parents=[common], help="run a property suite")
    p.add_argument("suite", choices=["all", *SUITES])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bound", parents=[common], help="print the degree-bound witness for (k, s, l)")
    p.add_argument("kk", metavar="k", type=_positive)
    p.add_argument("s", type=_positive)
    p.add_argument("l", type=_positive)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("fields", parents=[common], help="print left-invariant vector fields")
    p.add_argument("algebra")
    p.add_argument("--chart", choices=["first", "second"], default="second")
    p.set_defaults(func=cmd_fields)

    p = sub.add_parser("convert", parents=[common], help="change between first- and second-kind coordinates")
    p.add_argument("algebra")
    p.add_argument("--chart", choices=["first", "second"], default="second")
    p.add_argument("--point", help="comma separated rational coordinates; omit to print the maps")
    p.add_argument("--direction", choices=["to-first", "from-first"], default="to-first")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("examples", parents=[common], help="list built-in algebras")
    p.add_argument("--show", metavar="NAME", help="print the JSON document of one built-in")
    p.set_defaults(func=cmd_examples)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InputError, DocumentError, NotLieGeneratingError, NotNilpotentError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (LieAlgebraError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
