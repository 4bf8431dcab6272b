"""Spaces of S-polynomial functions in exponential coordinates.

A polynomial ``f`` is *k-polynomial along X* when ``X^k f = 0`` for the
left-invariant field ``X``.  Given a Lie-generating set ``S`` with orders,
the solutions form a finite-dimensional space of polynomials.

Strategy.  When the algebra is positively graded and every direction of
``S`` is homogeneous, each left-invariant field lowers the weighted degree
by its weight, so the solution space splits into independent homogeneous
blocks and each block is a small exact kernel.  Otherwise ``S`` is lifted to
a free-nilpotent algebra, where its generators span the first layer, solved
there, and pulled back along a right inverse of the lifting homomorphism.

Completeness.  For a stratified algebra with ``S`` spanning the first layer,
every solution has homogeneous degree at most ``nu(k_max, s, 2n)``.  A solve
that reaches this degree is ``"certified"``.  When the bound is out of reach
the solve stops after a window of empty blocks and is
``"stabilization-checked"``; a user degree whose next two blocks are not
empty is ``"unverified"``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, permutations
from math import gcd
from typing import Iterable, Mapping, Sequence

from .bounds import DegreeBoundWitness, degree_bound
from .derivation import Derivation
from .group import Chart, ChartError, algebra_field, chart_weights, left_invariant_fields, pushforward
from .hall import extend_hom, free_nilpotent
from .linalg import RationalMatrix, inverse, kernel_basis, rank, rref, span_rref
from .lie import LieAlgebra, LieAlgebraError, NotNilpotentError, lie_generates, lower_central_series
from .poly import Polynomial, Ring, as_fraction, grlex_key

__all__ = [
    "PER_DIRECTION",
    "SUBSPACE",
    "SPolyProblem",
    "SPolyBasis",
    "NotLieGeneratingError",
    "spoly_basis",
    "canonical_basis",
    "same_span",
    "in_span",
    "condition_operators",
]

PER_DIRECTION = "per_direction"
SUBSPACE = "subspace"

CERTIFIED = "certified"
STABILIZED = "stabilization-checked"
UNVERIFIED = "unverified"

# largest ansatz (number of monomials) for which the certified degree is attempted
DEFAULT_BUDGET = 30000


class NotLieGeneratingError(LieAlgebraError):
    pass


def _vector(A: LieAlgebra, x) -> tuple[Fraction, ...]:
    if isinstance(x, str):
        return A.basis_vector(A.index(x))
    if isinstance(x, Mapping):
        return tuple(A.element(x))
    return tuple(as_fraction(c) for c in A._check(x))


@dataclass(frozen=True)
class SPolyProblem:
    """Algebra, directions ``S`` with orders, chart and mode.

    In ``per_direction`` mode the conditions are ``X^{k_X} f = 0`` for each
    ``X`` in ``S``.  In ``subspace`` mode a single order ``k`` applies to every
    element of ``span(S)``.
    """

    algebra: LieAlgebra
    S: tuple[tuple[Fraction, ...], ...]
    orders: tuple[int, ...]
    chart: Chart = Chart("second")
    mode: str = PER_DIRECTION

    def __post_init__(self):
        if not self.S:
            raise ValueError("S must be nonempty")
        if self.mode not in (PER_DIRECTION, SUBSPACE):
            raise ValueError(f"unknown mode {self.mode!r}")
        if len(self.orders) != len(self.S):
            raise ValueError("one order per element of S is required")
        if any((not isinstance(k, int)) or k < 1 for k in self.orders):
            raise ValueError("orders must be integers >= 1")
        if self.mode == SUBSPACE and len(set(self.orders)) != 1:
            raise ValueError("subspace mode uses a single order k")
        if any(not any(x) for x in self.S):
            raise ValueError("S contains the zero element")

    @classmethod
    def build(
        cls,
        algebra: LieAlgebra,
        S: Iterable,
        orders: int | Sequence[int] = 2,
        chart: Chart | str = "second",
        mode: str = PER_DIRECTION,
    ) -> SPolyProblem:
        """``S`` entries may be basis names, ``{name: coeff}`` maps or coordinate vectors."""
        vecs = tuple(_vector(algebra, x) for x in S)
        if isinstance(orders, int):
            orders = (orders,) * len(vecs)
        if isinstance(chart, str):
            chart = Chart(chart)
        return cls(algebra, vecs, tuple(orders), chart, mode)

    @property
    def k_max(self) -> int:
        return max(self.orders)

    def describe_S(self) -> list[str]:
        out = []
        for x, k in zip(self.S, self.orders):
            terms = []
            for c, name in zip(x, self.algebra.names):
                if c == 1:
                    terms.append(name)
                elif c:
                    terms.append(f"{c}*{name}")
            out.append(f"{' + '.join(terms)}:{k}")
        return out


@dataclass
class SPolyBasis:
    problem: SPolyProblem
    basis: list[Polynomial]
    degree: int
    certificate: str
    method: str
    bound: DegreeBoundWitness | None
    certified_degree: int | None
    block_dims: dict[int, int] = field(default_factory=dict)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def ring(self) -> Ring:
        return self.problem.chart.ring(self.problem.algebra.dim)

    def observed_degree(self, weights: Sequence[int] | None = None) -> int:
        return max((p.degree(weights) for p in self.basis), default=-1)

    def as_dict(self) -> dict:
        return {
            "algebra": self.problem.algebra.name,
            "chart": str(self.problem.chart),
            "mode": self.problem.mode,
            "S": self.problem.describe_S(),
            "dimension": self.dimension,
            "basis": [str(p) for p in self.basis],
            "solve_degree": self.degree,
            "certificate": self.certificate,
            "certified_degree": self.certified_degree,
            "method": self.method,
            "bound": self.bound.as_dict() if self.bound else None,
            "observed_degree": self.observed_degree(),
        }


# -- canonical forms ------------------------------------------------------------

def canonical_basis(polys: Iterable[Polynomial], ring: Ring | None = None) -> list[Polynomial]:
    """Reduced echelon basis of the span, pivots at grlex-leading monomials, sorted ascending."""
    polys = [p for p in polys if p]
    if not polys:
        return []
    ring = ring or polys[0].ring
    monos = sorted({m for p in polys for m in p.terms}, key=grlex_key, reverse=True)
    col = {m: i for i, m in enumerate(monos)}
    rows = [{col[m]: c for m, c in p.terms.items()} for p in polys]
    out = []
    for r in rref(rows, len(monos)):
        out.append(Polynomial(ring, {monos[j]: c for j, c in enumerate(r) if c}))
    out.sort(key=lambda p: grlex_key(p.leading_monomial()))
    return out


def same_span(a: Iterable[Polynomial], b: Iterable[Polynomial]) -> bool:
    a, b = list(a), list(b)
    ring = (a or b)[0].ring if (a or b) else None
    return canonical_basis(a, ring) == canonical_basis(b, ring)


def in_span(f: Polynomial, basis: Sequence[Polynomial]) -> bool:
    return len(canonical_basis(list(basis) + [f])) == len(canonical_basis(basis))


# -- conditions ------------------------------------------------------------------

def _independent_subset(vectors: Sequence[tuple], dim: int) -> list[int]:
    chosen: list[int] = []
    for i, v in enumerate(vectors):
        if rank([vectors[j] for j in chosen] + [v], dim) > len(chosen):
            chosen.append(i)
    return chosen


def condition_operators(problem: SPolyProblem) -> list[tuple[tuple[int, ...], ...]]:
    """Each condition as a sum of words over indices into ``problem.S`` (leftmost acts last).

    Subspace mode polarizes ``X^k`` over an independent subset of ``S``:
    one condition per multiset, summing its distinct orderings.
    """
    if problem.mode == PER_DIRECTION:
        return [((i,) * k,) for i, k in enumerate(problem.orders)]
    k = problem.orders[0]
    idx = _independent_subset(problem.S, problem.algebra.dim)
    conds = []
    for multiset in combinations_with_replacement(idx, k):
        conds.append(tuple(sorted(set(permutations(multiset)))))
    return conds


class _Applier:
    """Applies fixed derivations to sparse integer polynomials ``{exps: int}``.

    Each derivation is scaled to integer coefficients first.  Every condition
    is a sum of words with the same letters, so it is only rescaled by a
    nonzero constant and its kernel is unchanged.  Images of monomials are
    memoized.  Only for rings without transcendental generators.
    """

    def __init__(self, derivations: Sequence[Derivation]):
        self.actions = []
        for d in derivations:
            if d.ring.generators:
                raise ValueError("integer applier needs a ring without generators")
            den = 1
            for c in d.coeffs.values():
                for v in c.terms.values():
                    den = den * v.denominator // gcd(den, v.denominator)
            self.actions.append(
                [(j, [(m, int(v * den)) for m, v in c.terms.items()]) for j, c in sorted(d.coeffs.items())]
            )
        self.cache: list[dict] = [dict() for _ in self.actions]

    def _image(self, i: int, m: tuple[int, ...]) -> dict:
        img = self.cache[i].get(m)
        if img is None:
            img = {}
            for j, coeff in self.actions[i]:
                e = m[j]
                if not e:
                    continue
                base = list(m)
                base[j] -= 1
                for cm, cv in coeff:
                    key = tuple(a + b for a, b in zip(base, cm))
                    v = img.get(key, 0) + e * cv
                    if v:
                        img[key] = v
                    else:
                        del img[key]
            self.cache[i][m] = img
        return img

    def apply(self, i: int, f: dict) -> dict:
        acc: dict = {}
        for m, c in f.items():
            for m2, c2 in self._image(i, m).items():
                v = acc.get(m2, 0) + c * c2
                if v:
                    acc[m2] = v
                else:
                    del acc[m2]
        return acc

    def word(self, w: Sequence[int], f: dict) -> dict:
        for i in reversed(w):
            if not f:
                break
            f = self.apply(i, f)
        return f

    def condition(self, cond: Sequence[Sequence[int]], f: dict) -> dict:
        total: dict = {}
        for w in cond:
            for m, c in self.word(w, f).items():
                v = total.get(m, 0) + c
                if v:
                    total[m] = v
                else:
                    del total[m]
        return total


def _monomials_of_weight(weights: Sequence[int], d: int) -> list[tuple[int, ...]]:
    n = len(weights)
    out: list[tuple[int, ...]] = []

    def rec(i: int, rest: int, acc: list[int]):
        if i == n:
            if rest == 0:
                out.append(tuple(acc))
            return
        w = weights[i]
        for e in range(rest // w + 1):
            acc.append(e)
            rec(i + 1, rest - e * w, acc)
            acc.pop()

    rec(0, d, [])
    out.sort(key=grlex_key, reverse=True)
    return out


def _count_up_to(weights: Sequence[int], N: int) -> int:
    counts = [1] + [0] * N
    for w in weights:
        for d in range(w, N + 1):
            counts[d] += counts[d - w]
    return sum(counts)


def _kernel_of_block(applier: _Applier, conds, ring: Ring, monos: list[tuple[int, ...]]) -> list[Polynomial]:
    if not monos:
        return []
    rows: dict = {}
    for j, m in enumerate(monos):
        f = {m: 1}
        for ci, cond in enumerate(conds):
            img = applier.condition(cond, f)
            for m2, c in img.items():
                rows.setdefault((ci, m2), {})[j] = c
    if not rows:
        return [Polynomial._raw(ring, {m: Fraction(1)}) for m in monos]
    M = RationalMatrix.from_sparse_rows(list(rows.values()), len(monos))
    return [Polynomial(ring, {monos[j]: c for j, c in enumerate(v) if c}) for v in kernel_basis(M)]


# -- graded block solver ------------------------------------------------------------

def _homogeneous_weight(A: LieAlgebra, x: Sequence) -> int | None:
    if A.weights is None:
        return None
    ws = {A.weights[i] for i, c in enumerate(x) if c}
    return ws.pop() if len(ws) == 1 else None


def _graded_applicable(A: LieAlgebra, S: Sequence) -> bool:
    return A.weights is not None and A.is_graded() and all(_homogeneous_weight(A, x) for x in S)


def _block_solve(
    A: LieAlgebra,
    chart: Chart,
    S: Sequence[tuple],
    conds,
    degree: int | None,
    certified_degree: int | None,
    window: int,
    budget: int,
):
    """Homogeneous-block kernel. Returns (polys, solve_degree, certificate, block_dims)."""
    n = A.dim
    ring = chart.ring(n)
    weights = chart_weights(A, chart)
    fields = left_invariant_fields(A, chart)
    applier = _Applier([algebra_field(fields, x) for x in S])
    found: list[Polynomial] = []
    dims: dict[int, int] = {}

    def block(d: int) -> list[Polynomial]:
        sols = _kernel_of_block(applier, conds, ring, _monomials_of_weight(weights, d))
        dims[d] = len(sols)
        return sols

    if degree is not None:
        for d in range(degree + 1):
            found.extend(block(d))
        if certified_degree is not None and degree >= certified_degree:
            cert = CERTIFIED
        else:
            extra = block(degree + 1) + block(degree + 2)
            cert = STABILIZED if not extra else UNVERIFIED
            dims.pop(degree + 1, None)
            dims.pop(degree + 2, None)
        return found, degree, cert, dims

    if certified_degree is not None and _count_up_to(weights, certified_degree) <= budget:
        for d in range(certified_degree + 1):
            found.extend(block(d))
        return found, certified_degree, CERTIFIED, dims

    d = 0
    last = 0
    while d - last <= window:
        sols = block(d)
        if sols:
            found.extend(sols)
            last = d
        d += 1
    top = d - 1
    for extra in range(last + 1, top + 1):
        dims.pop(extra, None)
    return found, last, STABILIZED, dims


# -- public entry -----------------------------------------------------------------

def _carnot_bound(A: LieAlgebra, S: Sequence[tuple], k: int, s: int) -> DegreeBoundWitness | None:
    """Witness when ``A`` is stratified and ``S`` lies in and spans the first layer."""
    if A.weights is None or not A.is_stratified():
        return None
    if any(_homogeneous_weight(A, x) != 1 for x in S):
        return None
    if rank(S, A.dim) != len(A.layer(1)):
        return None
    return degree_bound(k, max(s, 1), 2 * A.dim)


def spoly_basis(
    problem: SPolyProblem,
    degree: int | None = None,
    method: str = "auto",
    window: int | None = None,
    budget: int = DEFAULT_BUDGET,
) -> SPolyBasis:
    """Solve ``problem`` exactly.

    ``degree`` fixes the (homogeneous, on the solving side) degree of the
    ansatz; by default the certified bound is used when affordable and a
    stabilization window otherwise.  ``method`` is ``"auto"``, ``"graded"``,
    ``"free_lift"`` or ``"direct"`` (plain total-degree ansatz, needs ``degree``).
    """
    A = problem.algebra
    try:
        lcs = lower_central_series(A)
    except NotNilpotentError as exc:
        raise NotNilpotentError(
            f"{exc}; S-polynomial spaces are only solved on nilpotent algebras "
            "(see verify_builtin_counterexample for the non-nilpotent examples)"
        ) from None
    ok, closure = lie_generates(A, problem.S)
    if not ok:
        names = []
        for v in closure:
            names.append(" + ".join(f"{c}*{A.names[i]}" if c != 1 else A.names[i] for i, c in enumerate(v) if c))
        raise NotLieGeneratingError(
            "S does not Lie generate the algebra, so the solution space is infinite-dimensional; "
            f"generated subalgebra = span{{{', '.join(names)}}} (dimension {len(closure)} < {A.dim})"
        )
    s = max(lcs.step, 1)
    k = problem.k_max
    if window is None:
        window = max(3, s * k)
    conds = condition_operators(problem)
    target = problem.chart

    if method == "direct":
        if degree is None:
            raise ValueError("the direct method needs an explicit degree")
        polys = _direct_solve(A, target, problem.S, conds, degree)
        return SPolyBasis(problem, canonical_basis(polys, target.ring(A.dim)), degree, UNVERIFIED, "direct", None, None)

    if A.weights is None and lcs.step <= 1:
        A_graded = LieAlgebra(A.dim, {}, names=A.names, weights=[1] * A.dim, name=A.name)
    else:
        A_graded = A
    graded = _graded_applicable(A_graded, problem.S)
    if method == "graded" and not graded:
        raise ValueError("graded solving needs a graded algebra with homogeneous directions")
    if method not in ("auto", "graded", "free_lift"):
        raise ValueError(f"unknown method {method!r}")

    if graded and method != "free_lift":
        bound = _carnot_bound(A_graded, problem.S, k, s)
        if bound is not None:
            cert_deg = bound.nu
        else:
            m = len(_independent_subset(problem.S, A.dim))
            bound = _free_bound(m, s, k)
            cert_deg = None if bound is None else bound.nu * max(A_graded.weights)
        work = _working_chart(A_graded, target)
        polys, N, cert, dims = _block_solve(A_graded, work, problem.S, conds, degree, cert_deg, window, budget)
        polys = [pushforward(A_graded, work, target, p) for p in polys]
        return SPolyBasis(problem, canonical_basis(polys, target.ring(A.dim)), N, cert, "graded", bound, cert_deg, dims)

    return _free_lift_solve(problem, conds, s, k, degree, window, budget)


def _working_chart(A: LieAlgebra, chart: Chart) -> Chart:
    try:
        chart_weights(A, chart)
        return chart
    except ChartError:
        return Chart.first()


def _free_bound(m: int, s: int, k: int) -> DegreeBoundWitness | None:
    if m < 2:
        return None
    return degree_bound(k, s, 2 * free_nilpotent(m, s).dim)


def _direct_solve(A: LieAlgebra, chart: Chart, S, conds, N: int) -> list[Polynomial]:
    ring = chart.ring(A.dim)
    fields = left_invariant_fields(A, chart)
    applier = _Applier([algebra_field(fields, x) for x in S])
    monos = []
    for d in range(N + 1):
        monos.extend(_monomials_of_weight([1] * A.dim, d))
    return _kernel_of_block(applier, conds, ring, monos)


def _free_lift_solve(problem: SPolyProblem, conds, s, k, degree, window, budget) -> SPolyBasis:
    A = problem.algebra
    target = problem.chart
    gens_idx = _independent_subset(problem.S, A.dim) if problem.mode == SUBSPACE else list(range(len(problem.S)))
    gens = [problem.S[i] for i in gens_idx]
    m = len(gens)
    if m < 2:
        raise LieAlgebraError("a single direction Lie generates only a line; give the algebra weights to solve it")
    F = free_nilpotent(m, s)
    phi = extend_hom(F, A, gens)
    # conditions on the free side: the i-th generator stands for gens[i]
    if problem.mode == SUBSPACE:
        relabel = {g: i for i, g in enumerate(gens_idx)}
        free_conds = [tuple(tuple(relabel[x] for x in w) for w in c) for c in conds]
    else:
        free_conds = [((i,) * problem.orders[g],) for i, g in enumerate(gens_idx)]
    free_S = [F.basis_vector(i) for i in range(m)]
    fbound = degree_bound(k, s, 2 * F.dim)
    first = Chart.first()
    lifted, N, cert, dims = _block_solve(F, first, free_S, free_conds, degree, fbound.nu, window, budget)

    # keep the lifted functions that factor through phi: d/dz F' = 0 for z in ker(phi)
    ker = kernel_basis(RationalMatrix.from_rows(phi.matrix, F.dim))
    fring = first.ring(F.dim)
    if ker and lifted:
        monos = sorted({mm for p in lifted for mm in p.terms}, key=grlex_key)
        rows: dict = {}
        for j, p in enumerate(lifted):
            for zi, z in enumerate(ker):
                dz = fring.zero()
                for i, c in enumerate(z):
                    if c:
                        dz = dz + p.partial(i).scale(c)
                for mm, c in dz.terms.items():
                    rows.setdefault((zi, mm), {})[j] = c
        if rows:
            M = RationalMatrix.from_sparse_rows(list(rows.values()), len(lifted))
            combos = kernel_basis(M)
            lifted = [
                sum((p.scale(c) for p, c in zip(lifted, v) if c), fring.zero()) for v in combos
            ]
    # pull back along a right inverse psi of phi (first-kind coordinates are linear)
    psi = _right_inverse(phi.matrix, A.dim, F.dim)
    aring = first.ring(A.dim)
    images = [
        sum((aring.var(f"a{j + 1}").scale(psi[i][j]) for j in range(A.dim) if psi[i][j]), aring.zero())
        for i in range(F.dim)
    ]
    pulled = [p.compose(images, aring) for p in lifted]
    polys = [pushforward(A, first, target, p) for p in pulled]
    return SPolyBasis(
        problem, canonical_basis(polys, target.ring(A.dim)), N, cert, "free_lift", fbound, fbound.nu, dims
    )


def _right_inverse(matrix, rows: int, cols: int) -> list[list[Fraction]]:
    """``psi`` (cols x rows) with ``matrix @ psi = id``; picks pivot columns."""
    piv = []
    for j in range(cols):
        cand = piv + [j]
        sub = [[matrix[i][c] for c in cand] for i in range(rows)]
        if rank([list(col) for col in zip(*sub)], rows) == len(cand):
            piv = cand
        if len(piv) == rows:
            break
    sub = [[matrix[i][c] for c in piv] for i in range(rows)]
    inv = inverse(sub)
    psi = [[Fraction(0)] * rows for _ in range(cols)]
    for a, c in enumerate(piv):
        psi[c] = list(inv[a])
    return psi
