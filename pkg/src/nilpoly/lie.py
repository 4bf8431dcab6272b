"""Finite-dimensional Lie algebras given by exact structure constants.

Elements are plain tuples of coefficients with respect to the algebra basis.
Coefficients are usually :class:`~fractions.Fraction`, but any exact scalar
that supports ``+`` and ``*`` with Fractions works, in particular
:class:`~nilpoly.poly.Polynomial` (elements depending on parameters such as
``t``).

Subspaces are always returned as reduced row echelon bases, so two equal
subspaces compare equal as tuples.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping, Sequence

from .linalg import rank, span_rref
from .poly import as_fraction

__all__ = [
    "LieAlgebra",
    "LieAlgebraError",
    "NotNilpotentError",
    "LCSChain",
    "ValidationReport",
    "validate",
    "lower_central_series",
    "Ad_exp",
    "ad_matrix",
    "lie_generates",
    "bracket",
    "mat_vec",
    "mat_mul",
]

ZERO = Fraction(0)


class LieAlgebraError(ValueError):
    pass


class NotNilpotentError(LieAlgebraError):
    pass


def _is_zero(c) -> bool:
    return not c


class LieAlgebra:
    """Structure constants ``c[i, j, k]`` with ``[e_i, e_j] = sum_k c[i, j, k] e_k``.

    The constants are stored exactly as given, so a table violating
    antisymmetry can be built and then diagnosed by :func:`validate`.
    ``weights`` optionally grades the basis (layer index of each element).
    """

    def __init__(
        self,
        dim: int,
        constants: Mapping[tuple[int, int, int], object],
        names: Sequence[str] | None = None,
        weights: Sequence[int] | None = None,
        name: str = "",
        hall_words: Sequence | None = None,
    ):
        if dim < 1:
            raise LieAlgebraError("dimension must be positive")
        self.dim = dim
        self.name = name
        self.names = tuple(names) if names is not None else tuple(f"X{i + 1}" for i in range(dim))
        if len(self.names) != dim:
            raise LieAlgebraError(f"expected {dim} basis names, got {len(self.names)}")
        if len(set(self.names)) != dim:
            raise LieAlgebraError("basis names must be distinct")
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j, k), c in constants.items():
            for idx in (i, j, k):
                if not 0 <= idx < dim:
                    raise LieAlgebraError(f"index {idx + 1} out of range for dimension {dim}")
            c = as_fraction(c)
            if c:
                table.setdefault((i, j), {})[k] = c
        self._table = table
        if weights is not None:
            weights = tuple(int(w) for w in weights)
            if len(weights) != dim or min(weights) < 1:
                raise LieAlgebraError("weights must be positive integers, one per basis element")
        self.weights = weights
        self.hall_words = tuple(hall_words) if hall_words is not None else None
        self._lcs: LCSChain | None = None

    @classmethod
    def from_brackets(
        cls,
        names: Sequence[str],
        relations: Mapping[tuple[str, str], Mapping[str, object]],
        weights: Sequence[int] | None = None,
        name: str = "",
    ) -> LieAlgebra:
        """Antisymmetric algebra from ``{("X1", "X2"): {"X3": 1}, ...}``."""
        index = {n: i for i, n in enumerate(names)}
        constants: dict[tuple[int, int, int], Fraction] = {}
        for (a, b), out in relations.items():
            i, j = index[a], index[b]
            if i == j:
                raise LieAlgebraError(f"[{a}, {a}] must vanish")
            for target, c in out.items():
                k = index[target]
                c = as_fraction(c)
                for key, val in (((i, j, k), c), ((j, i, k), -c)):
                    if key in constants and constants[key] != val:
                        raise LieAlgebraError(f"conflicting values for [{a}, {b}]")
                    constants[key] = val
        return cls(len(names), constants, names=names, weights=weights, name=name)

    # -- structure -------------------------------------------------------
    def structure_constant(self, i: int, j: int, k: int) -> Fraction:
        return self._table.get((i, j), {}).get(k, ZERO)

    def nonzero_constants(self) -> dict[tuple[int, int, int], Fraction]:
        return {(i, j, k): c for (i, j), row in sorted(self._table.items()) for k, c in sorted(row.items())}

    def basis_vector(self, i: int) -> tuple[Fraction, ...]:
        return tuple(Fraction(int(j == i)) for j in range(self.dim))

    def basis(self) -> list[tuple[Fraction, ...]]:
        return [self.basis_vector(i) for i in range(self.dim)]

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"{name!r} is not a basis element of {self.name or 'the algebra'}") from None

    def element(self, coeffs: Mapping[str, object] | Sequence) -> tuple:
        if isinstance(coeffs, Mapping):
            vec = [ZERO] * self.dim
            for n, c in coeffs.items():
                vec[self.index(n)] = as_fraction(c)
            return tuple(vec)
        return self._check(coeffs)

    def _check(self, x: Sequence) -> tuple:
        if len(x) != self.dim:
            raise LieAlgebraError(f"element of length {len(x)} in an algebra of dimension {self.dim}")
        return tuple(x)

    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        x = self._check(x)
        y = self._check(y)
        out: list = [ZERO] * self.dim
        for (i, j), row in self._table.items():
            xi = x[i]
            if _is_zero(xi):
                continue
            yj = y[j]
            if _is_zero(yj):
                continue
            prod = xi * yj
            for k, c in row.items():
                out[k] = out[k] + prod * c
        return tuple(out)

    def is_graded(self) -> bool:
        if self.weights is None:
            return False
        w = self.weights
        return all(w[k] == w[i] + w[j] for (i, j), row in self._table.items() for k in row)

    @property
    def step(self) -> int:
        return lower_central_series(self).step

    def layer(self, w: int) -> list[int]:
        if self.weights is None:
            raise LieAlgebraError("algebra has no grading")
        return [i for i, wi in enumerate(self.weights) if wi == w]

    def is_stratified(self) -> bool:
        """Graded with layers ``1..s`` and ``[V_1, V_j] = V_{j+1}``."""
        if not self.is_graded():
            return False
        s = max(self.weights)
        if set(self.weights) != set(range(1, s + 1)):
            return False
        first = self.layer(1)
        for j in range(1, s + 1):
            brackets = [
                self.bracket(self.basis_vector(a), self.basis_vector(b))
                for a in first
                for b in self.layer(j)
            ]
            expected = len(self.layer(j + 1)) if j < s else 0
            if rank(brackets, self.dim) != expected:
                return False
        return True

    def relabel(self, names: Sequence[str], name: str | None = None) -> LieAlgebra:
        return LieAlgebra(
            self.dim,
            {(i, j, k): c for (i, j), row in self._table.items() for k, c in row.items()},
            names=names,
            weights=self.weights,
            name=self.name if name is None else name,
            hall_words=self.hall_words,
        )

    def __repr__(self) -> str:
        label = self.name or "LieAlgebra"
        return f"<{label}: dim {self.dim}, basis {list(self.names)}>"

    def describe_brackets(self) -> list[str]:
        lines = []
        for (i, j), row in sorted(self._table.items()):
            if i >= j:
                continue
            terms = " + ".join(
                (self.names[k] if c == 1 else f"{c}*{self.names[k]}") for k, c in sorted(row.items())
            )
            lines.append(f"[{self.names[i]}, {self.names[j]}] = {terms}".replace("+ -", "- "))
        return lines


def bracket(A: LieAlgebra, x: Sequence, y: Sequence) -> tuple:
    return A.bracket(x, y)


# -- validation and lower central series ---------------------------------

@dataclass(frozen=True)
class LCSChain:
    """``g = g_0 ⊇ g_1 ⊇ ... ⊇ g_step = 0``; each term an RREF basis."""

    terms: tuple[tuple[tuple[Fraction, ...], ...], ...]

    @property
    def step(self) -> int:
        return len(self.terms) - 1

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(len(t) for t in self.terms)

    def term(self, d: int) -> tuple[tuple[Fraction, ...], ...]:
        return self.terms[d] if d < len(self.terms) else ()


@dataclass(frozen=True)
class ValidationReport:
    dimension: int
    nilpotent: bool
    step: int | None
    lcs: LCSChain | None
    lcs_dims: tuple[int, ...]

    def as_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "nilpotent": self.nilpotent,
            "step": self.step,
            "lcs_dims": list(self.lcs_dims),
        }


def _lcs_terms(A: LieAlgebra):
    current = span_rref(A.basis(), A.dim)
    terms = [current]
    basis = A.basis()
    while current:
        nxt = span_rref((A.bracket(e, v) for e in basis for v in current), A.dim)
        if len(nxt) == len(current):
            return terms, False
        terms.append(nxt)
        current = nxt
    return terms, True


def lower_central_series(A: LieAlgebra) -> LCSChain:
    if A._lcs is not None:
        return A._lcs
    terms, nilpotent = _lcs_terms(A)
    if not nilpotent:
        raise NotNilpotentError(
            f"{A.name or 'algebra'} is not nilpotent: lower central series stabilises at "
            f"dimension {len(terms[-1])}"
        )
    A._lcs = LCSChain(tuple(terms))
    return A._lcs


def validate(A: LieAlgebra, require_nilpotent: bool = True) -> ValidationReport:
    """Check antisymmetry and the Jacobi identity on all basis triples, then nilpotency.

    Failures raise :class:`LieAlgebraError` naming the (1-based) offending triple.
    """
    n = A.dim
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                if A.structure_constant(i, j, k) != -A.structure_constant(j, i, k):
                    raise LieAlgebraError(
                        f"antisymmetry fails at ({i + 1},{j + 1},{k + 1}): "
                        f"c_{i + 1}{j + 1}^{k + 1} = {A.structure_constant(i, j, k)}, "
                        f"c_{j + 1}{i + 1}^{k + 1} = {A.structure_constant(j, i, k)}"
                    )
    basis = A.basis()
    for i in range(n):
        for j in range(i + 1, n):
            bij = A.bracket(basis[i], basis[j])
            for k in range(j + 1, n):
                total = _add(
                    _add(A.bracket(bij, basis[k]), A.bracket(A.bracket(basis[j], basis[k]), basis[i])),
                    A.bracket(A.bracket(basis[k], basis[i]), basis[j]),
                )
                if any(total):
                    raise LieAlgebraError(
                        f"Jacobi identity fails on basis triple ({i + 1},{j + 1},{k + 1}) "
                        f"= ({A.names[i]}, {A.names[j]}, {A.names[k]})"
                    )
    terms, nilpotent = _lcs_terms(A)
    if not nilpotent:
        if require_nilpotent:
            raise NotNilpotentError(
                f"{A.name or 'algebra'} is not nilpotent: lower central series stabilises at "
                f"dimension {len(terms[-1])}"
            )
        return ValidationReport(n, False, None, None, tuple(len(t) for t in terms))
    chain = lower_central_series(A)
    return ValidationReport(n, True, chain.step, chain, chain.dims)


# -- ad / Ad ---------------------------------------------------------------

def _add(x: Sequence, y: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(x, y))


def ad_matrix(A: LieAlgebra, x: Sequence) -> list[list]:
    """Matrix of ``ad_x`` (column j is ``[x, e_j]``)."""
    cols = [A.bracket(x, e) for e in A.basis()]
    return [[cols[j][i] for j in range(A.dim)] for i in range(A.dim)]


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    n, m, p = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = ZERO
            for k in range(m):
                u, v = a[i][k], b[k][j]
                if not _is_zero(u) and not _is_zero(v):
                    acc = acc + u * v
            row.append(acc)
        out.append(row)
    return out


def mat_vec(a: Sequence[Sequence], x: Sequence) -> tuple:
    out = []
    for row in a:
        acc = ZERO
        for u, v in zip(row, x):
            if not _is_zero(u) and not _is_zero(v):
                acc = acc + u * v
        out.append(acc)
    return tuple(out)


def Ad_exp(A: LieAlgebra, x: Sequence) -> list[list]:
    """``Ad_{exp x} = sum_{j < s} ad_x^j / j!``; refuses non-nilpotent algebras."""
    step = lower_central_series(A).step
    ad = ad_matrix(A, x)
    n = A.dim
    power = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    total = [row[:] for row in power]
    for j in range(1, step):
        power = mat_mul(ad, power)
        f = Fraction(1, factorial(j))
        for r in range(n):
            for c in range(n):
                if not _is_zero(power[r][c]):
                    total[r][c] = total[r][c] + power[r][c] * f
    return total


# -- generation ------------------------------------------------------------

def lie_generates(A: LieAlgebra, S: Iterable[Sequence]) -> tuple[bool, tuple[tuple[Fraction, ...], ...]]:
    """Close ``span(S)`` under brackets; returns ``(closure == g, closure basis)``."""
    closure = span_rref((A._check(tuple(map(as_fraction, s))) for s in S), A.dim)
    while True:
        new = span_rref(
            list(closure) + [A.bracket(u, v) for u in closure for v in closure],
            A.dim,
        )
        if len(new) == len(closure):
            return len(closure) == A.dim, closure
        closure = new
