"""Reference reproductions and randomized property suites.

Each suite returns a list of :class:`Check` records; the CLI and the test
suite share them.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .builtins import engel, f23, heisenberg
from .counterexamples import COUNTEREXAMPLES, verify_builtin_counterexample
from .group import Chart, algebra_field, bch_product, left_invariant_fields, pushforward
from .hall import free_nilpotent
from .lie import Ad_exp, LieAlgebra, mat_vec
from .poly import Ring
from .solver import PER_DIRECTION, SUBSPACE, SPolyBasis, SPolyProblem, canonical_basis, in_span, same_span, spoly_basis
from .verify import differential_degree, lcs_invariance, leibman_check, verify_representation

__all__ = [
    "Check",
    "ReferenceCase",
    "REFERENCE_CASES",
    "solve_case",
    "reference_suite",
    "representation_suite",
    "leibman_suite",
    "structure_suite",
    "counterexample_suite",
    "SUITES",
    "run_suite",
    "carnot_builtins",
]


@dataclass
class Check:
    suite: str
    name: str
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return {"suite": self.suite, "name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass(frozen=True)
class ReferenceCase:
    key: str
    algebra: Callable[[], LieAlgebra]
    S: tuple[str, ...]
    orders: tuple[int, ...]
    mode: str
    chart: str
    expected: tuple[str, ...]
    expected_first: tuple[str, ...] = ()

    def problem(self, algebra: LieAlgebra | None = None) -> SPolyProblem:
        A = algebra or self.algebra()
        return SPolyProblem.build(A, self.S, self.orders, self.chart, self.mode)


def _f23_from_hall() -> LieAlgebra:
    F = free_nilpotent(2, 3)
    return F.relabel(["X1", "X2", "X3", "X4", "X5"], name="f23")


REFERENCE_CASES = (
    ReferenceCase(
        "heisenberg-X1X2-k2", heisenberg, ("X1", "X2"), (2, 2), PER_DIRECTION, "second",
        ("1", "x1", "x2", "x3", "x1*x2", "x1*x3"),
    ),
    ReferenceCase(
        "heisenberg-affine", heisenberg, ("X1", "X2"), (2, 2), SUBSPACE, "second",
        ("1", "x1", "x2", "x3 - 1/2*x1*x2"), ("1", "a1", "a2", "a3"),
    ),
    ReferenceCase(
        "engel-affine", engel, ("X1", "X2"), (2, 2), SUBSPACE, "second",
        ("1", "x1", "x2", "2*x3 - x1*x2", "3*x4 - x1*x3"), ("1", "a1", "a2", "a3", "6*a4 + a1*a3"),
    ),
    ReferenceCase(
        "engel-X1k1-X2k2", engel, ("X1", "X2"), (1, 2), PER_DIRECTION, "second",
        ("1", "x2", "x3", "x4", "x2*x4 - 1/2*x3^2"),
    ),
    ReferenceCase(
        "f23-X1k1-X2k2", f23, ("X1", "X2"), (1, 2), PER_DIRECTION, "second",
        ("1", "x2", "x3", "x4", "x2*x4 - 1/2*x3^2", "x5 + 1/2*x2*x3"),
    ),
)

_SOLVED: dict = {}


def solve_case(case: ReferenceCase, degree: int | None = None, algebra: LieAlgebra | None = None) -> SPolyBasis:
    """Solve a reference case (memoized per case, degree and algebra source)."""
    key = (case.key, degree, None if algebra is None else algebra.name + repr(sorted(algebra.nonzero_constants().items())))
    if key not in _SOLVED:
        _SOLVED[key] = spoly_basis(case.problem(algebra), degree=degree)
    return _SOLVED[key]


def _parse_all(ring: Ring, texts) -> list:
    return [ring.parse(t) for t in texts]


def reference_suite() -> list[Check]:
    out = []
    for case in REFERENCE_CASES:
        B = solve_case(case)
        ring = B.ring
        expected = _parse_all(ring, case.expected)
        equal = same_span(B.basis, expected)
        contained = all(in_span(e, B.basis) for e in expected)
        detail = f"computed dim {B.dimension} ({B.certificate}), reference dim {len(expected)}"
        if not equal and contained:
            extra = [str(p) for p in B.basis if not in_span(p, expected)]
            detail += f"; reference span is a proper subspace, also solutions: {', '.join(extra)}"
        out.append(Check("appendix", case.key, equal, detail))
        if case.expected_first:
            A = case.algebra()
            first = Chart.first()
            moved = [pushforward(A, Chart.second(), first, p) for p in B.basis]
            ok = same_span(moved, _parse_all(first.ring(A.dim), case.expected_first))
            out.append(Check("appendix", case.key + " (first kind)", ok, ", ".join(str(p) for p in canonical_basis(moved))))
    hall = solve_case(REFERENCE_CASES[4], algebra=_f23_from_hall())
    lit = solve_case(REFERENCE_CASES[4])
    out.append(Check("appendix", "f23 from Hall basis", hall.basis == lit.basis, f"dim {hall.dimension}"))
    return out


def carnot_builtins() -> list[LieAlgebra]:
    return [heisenberg(), engel(), f23()]


def _case_for(A: LieAlgebra) -> list[ReferenceCase]:
    return [c for c in REFERENCE_CASES if c.algebra().name == A.name]


def representation_suite(seed: int = 0, count: int = 50) -> list[Check]:
    """Random instances of the propagation formula on each Carnot built-in."""
    rng = random.Random(seed)
    out = []
    for A in carnot_builtins():
        cases = _case_for(A)
        passed = 0
        failures = []
        for trial in range(count):
            case = rng.choice(cases)
            B = solve_case(case)
            coeffs = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in B.basis]
            f = sum((p.scale(c) for p, c in zip(B.basis, coeffs)), B.ring.zero())
            j = rng.randrange(len(case.S))
            X = case.S[j]
            k = case.orders[j]
            r = rng.randint(0, 3)
            word = [rng.choice(A.names) for _ in range(r)]
            ok = verify_representation(A, Chart(case.chart), f, X, word, k)
            passed += ok
            if not ok:
                failures.append(f"trial {trial}: X={X}, word={word}")
        out.append(Check("representation", A.name, passed == count, f"{passed}/{count} instances" + ("; " + "; ".join(failures) if failures else "")))
    return out


def leibman_suite() -> list[Check]:
    """Leibman degree equals differential degree on every reference basis element."""
    out = []
    for case in REFERENCE_CASES:
        A = case.algebra()
        chart = Chart(case.chart)
        B = solve_case(case)
        for p in B.basis:
            d = differential_degree(A, chart, p)
            ok = leibman_check(A, chart, p, d) and (d < 1 or not leibman_check(A, chart, p, d - 1))
            ok = ok and lcs_invariance(A, chart, p, d)
            out.append(Check("leibman", f"{case.key}: {p}", ok, f"degree {d}"))
    return out


def structure_suite(seed: int = 0) -> list[Check]:
    """Associativity of the group law, fields realizing brackets, Ad as an automorphism."""
    rng = random.Random(seed)
    out = []
    algebras = carnot_builtins() + [free_nilpotent(3, 2), free_nilpotent(2, 4)]
    for A in algebras:
        n = A.dim
        names = [f"{p}{i + 1}" for p in "abc" for i in range(n)]
        ring = Ring(names + ["t"])
        a, b, c = (tuple(ring.var(f"{p}{i + 1}") for i in range(n)) for p in "abc")
        assoc = bch_product(A, bch_product(A, a, b), c) == bch_product(A, a, bch_product(A, b, c))
        out.append(Check("structure", f"{A.name}: BCH associative", assoc))
        for kind in ("first", "second"):
            fields = left_invariant_fields(A, Chart(kind))
            ok = True
            for i in range(n):
                for j in range(n):
                    want = algebra_field(fields, A.bracket(A.basis_vector(i), A.basis_vector(j)))
                    if fields[i].commutator(fields[j]) != want:
                        ok = False
            out.append(Check("structure", f"{A.name}: {kind}-kind fields realize brackets", ok))
        t = ring.var("t")
        x = tuple(t * Fraction(rng.randint(-3, 3)) for _ in range(n))
        ad = Ad_exp(A, x)
        ok = True
        for _ in range(5):
            y = tuple(Fraction(rng.randint(-3, 3)) for _ in range(n))
            z = tuple(Fraction(rng.randint(-3, 3)) for _ in range(n))
            if mat_vec(ad, A.bracket(y, z)) != A.bracket(mat_vec(ad, y), mat_vec(ad, z)):
                ok = False
        out.append(Check("structure", f"{A.name}: Ad_exp(tX) is a bracket automorphism", ok))
    return out


def counterexample_suite() -> list[Check]:
    out = []
    for name in COUNTEREXAMPLES:
        rep = verify_builtin_counterexample(name)
        for label, passed in rep.checks:
            out.append(Check("counterexamples", f"{name}: {label}", passed))
        out.append(Check("counterexamples", f"{name}: verdict", rep.ok, rep.verdict))
    return out


SUITES = {
    "appendix": lambda seed: reference_suite(),
    "representation": lambda seed: representation_suite(seed),
    "leibman": lambda seed: leibman_suite(),
    "structure": lambda seed: structure_suite(seed),
    "counterexamples": lambda seed: counterexample_suite(),
}


def run_suite(name: str, seed: int = 0) -> list[Check]:
    if name == "all":
        return [c for key in SUITES for c in SUITES[key](seed)]
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; known: all, {', '.join(SUITES)}")
    return SUITES[name](seed)
