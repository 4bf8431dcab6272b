"""Simply connected nilpotent groups through exponential coordinates.

Points are tuples of first-kind coordinates ``a <-> exp(a_1 X_1 + ... + a_n X_n)``;
entries may be rationals or polynomials (symbolic points).  The product is
the Baker-Campbell-Hausdorff series in Dynkin's commutator form, cut at the
nilpotency step.

Second-kind coordinates with respect to an ordered basis ``(B_1, ..., B_n)``
follow the convention ``x <-> exp(x_n B_n) ... exp(x_1 B_1)`` (last factor
leftmost).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial
from typing import Sequence

from .derivation import Derivation
from .linalg import inverse, rank
from .lie import LieAlgebra, LieAlgebraError, lower_central_series
from .poly import Polynomial, Ring, as_fraction

__all__ = [
    "Chart",
    "ChartError",
    "bch",
    "bch_product",
    "group_inverse",
    "dynkin_coefficients",
    "chart_convert",
    "chart_maps",
    "right_translation",
    "left_invariant_fields",
    "algebra_field",
    "dilate",
    "point_ring",
]

ZERO = Fraction(0)


class ChartError(LieAlgebraError):
    pass


@dataclass(frozen=True)
class Chart:
    """``kind`` is ``"first"`` or ``"second"``; ``basis`` orders the second-kind factors.

    ``basis`` holds coordinate vectors of ``B_1..B_n`` in the algebra basis;
    ``None`` means the algebra basis itself.
    """

    kind: str = "first"
    basis: tuple[tuple[Fraction, ...], ...] | None = None

    def __post_init__(self):
        if self.kind not in ("first", "second"):
            raise ChartError(f"unknown chart kind {self.kind!r}")
        if self.kind == "first" and self.basis is not None:
            raise ChartError("first-kind charts always use the algebra basis")
        if self.basis is not None:
            object.__setattr__(
                self, "basis", tuple(tuple(as_fraction(c) for c in b) for b in self.basis)
            )

    @classmethod
    def first(cls) -> Chart:
        return cls("first")

    @classmethod
    def second(cls, basis: Sequence[Sequence] | None = None) -> Chart:
        return cls("second", None if basis is None else tuple(tuple(b) for b in basis))

    @property
    def prefix(self) -> str:
        return "a" if self.kind == "first" else "x"

    def names(self, n: int) -> tuple[str, ...]:
        return tuple(f"{self.prefix}{i + 1}" for i in range(n))

    def ring(self, n: int) -> Ring:
        return _chart_ring(self.prefix, n)

    def basis_vectors(self, A: LieAlgebra) -> list[tuple[Fraction, ...]]:
        if self.basis is None:
            return A.basis()
        if len(self.basis) != A.dim or any(len(b) != A.dim for b in self.basis):
            raise ChartError(f"chart basis must consist of {A.dim} vectors of length {A.dim}")
        if rank(self.basis, A.dim) != A.dim:
            raise ChartError("chart basis does not span the Lie algebra")
        return list(self.basis)

    def __str__(self) -> str:
        return self.kind if self.basis is None else f"{self.kind}(custom basis)"


@lru_cache(maxsize=None)
def _chart_ring(prefix: str, n: int) -> Ring:
    return Ring(tuple(f"{prefix}{i + 1}" for i in range(n)))


def point_ring(prefix: str, n: int) -> Ring:
    return _chart_ring(prefix, n)


# -- BCH ----------------------------------------------------------------------

@lru_cache(maxsize=None)
def dynkin_coefficients(max_length: int) -> dict[tuple[int, ...], Fraction]:
    """Right-nested words in X=0, Y=1 with their Dynkin coefficients, length <= max_length."""
    coeffs: dict[tuple[int, ...], Fraction] = {}

    def blocks(total: int, count: int):
        if count == 0:
            if total == 0:
                yield ()
            return
        for size in range(1, total - count + 2):
            for r in range(size + 1):
                for rest in blocks(total - size, count - 1):
                    yield ((r, size - r),) + rest

    for length in range(1, max_length + 1):
        for n in range(1, length + 1):
            sign = Fraction((-1) ** (n - 1), n)
            for pairs in blocks(length, n):
                denom = length
                word: list[int] = []
                for r, s in pairs:
                    denom *= factorial(r) * factorial(s)
                    word.extend([0] * r + [1] * s)
                key = tuple(word)
                coeffs[key] = coeffs.get(key, ZERO) + sign / denom
    return {w: c for w, c in coeffs.items() if c and not (len(w) > 1 and w[-1] == w[-2])}


def _scale(c, x: Sequence) -> tuple:
    return tuple(c * v for v in x)


def _vadd(x: Sequence, y: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(x, y))


def bch(A: LieAlgebra, x: Sequence, y: Sequence) -> tuple:
    """``log(exp x exp y)``, exact, truncated at bracket length equal to the step."""
    s = lower_central_series(A).step
    x = A._check(x)
    y = A._check(y)
    letters = (x, y)
    nested: dict[tuple[int, ...], tuple] = {}

    def value(word: tuple[int, ...]) -> tuple:
        got = nested.get(word)
        if got is None:
            if len(word) == 1:
                got = letters[word[0]]
            else:
                got = A.bracket(letters[word[0]], value(word[1:]))
            nested[word] = got
        return got

    total = tuple(ZERO for _ in range(A.dim))
    for word, c in dynkin_coefficients(max(s, 1)).items():
        v = value(word)
        if any(v):
            total = _vadd(total, _scale(c, v))
    return total


def bch_product(A: LieAlgebra, a: Sequence, b: Sequence) -> tuple:
    """Group product of two points in first-kind coordinates."""
    return bch(A, a, b)


def group_inverse(a: Sequence) -> tuple:
    return tuple(-c for c in a)


# -- charts -------------------------------------------------------------------

def _cache(A: LieAlgebra) -> dict:
    cache = getattr(A, "_group_cache", None)
    if cache is None:
        cache = {}
        A._group_cache = cache
    return cache


def _second_to_first(A: LieAlgebra, basis, coords: Sequence) -> tuple:
    n = A.dim
    z = _scale(coords[n - 1], basis[n - 1])
    for i in range(n - 2, -1, -1):
        z = bch(A, z, _scale(coords[i], basis[i]))
    return z


def chart_maps(A: LieAlgebra, chart: Chart):
    """``(to_first, from_first)`` polynomial maps.

    ``to_first`` lists first-kind coordinates as polynomials in the chart
    variables; ``from_first`` lists chart coordinates as polynomials in
    ``a1..an``.  Both are exact mutual inverses.
    """
    key = ("maps", chart)
    cache = _cache(A)
    if key in cache:
        return cache[key]
    n = A.dim
    lower_central_series(A)
    ring_a = point_ring("a", n)
    if chart.kind == "first":
        ident = list(ring_a.gens())
        cache[key] = (ident, ident)
        return cache[key]
    basis = chart.basis_vectors(A)
    ring_x = chart.ring(n)
    to_first = list(_second_to_first(A, basis, ring_x.gens()))
    to_first = [p if isinstance(p, Polynomial) else ring_x.constant(p) for p in to_first]

    # fixed point x <- x + B^{-1}(a - Phi(x)); exact after at most `step` rounds
    # when the basis is adapted to the lower central series
    binv = inverse([[basis[j][i] for j in range(n)] for i in range(n)])
    a_vars = ring_a.gens()

    def in_basis(v):
        return [sum((binv[i][j] * v[j] for j in range(n) if binv[i][j]), ring_a.zero()) for i in range(n)]

    x = in_basis(a_vars)
    step = lower_central_series(A).step
    for _ in range(step + 2):
        phi = [p.compose(x, ring_a) for p in to_first]
        resid = [a - p for a, p in zip(a_vars, phi)]
        if all(not r for r in resid):
            break
        corr = in_basis(resid)
        x = [xi + ci for xi, ci in zip(x, corr)]
    else:
        raise ChartError(
            "second-kind chart does not invert polynomially; order the basis so that it is "
            "adapted to the lower central series"
        )
    roundtrip = [xi.compose(to_first, ring_x) for xi in x]
    if roundtrip != list(ring_x.gens()):
        raise ChartError("second-kind chart maps are not mutually inverse")
    cache[key] = (to_first, x)
    return cache[key]


def chart_convert(A: LieAlgebra, chart: Chart, p: Sequence, inverse: bool = False) -> tuple:
    """Chart coordinates -> first-kind coordinates (or the reverse with ``inverse=True``).

    ``p`` may hold rationals or polynomials over any common ring.
    """
    to_first, from_first = chart_maps(A, chart)
    maps = from_first if inverse else to_first
    vals = list(p)
    if len(vals) != A.dim:
        raise ChartError(f"expected {A.dim} coordinates, got {len(vals)}")
    ring = next((v.ring for v in vals if isinstance(v, Polynomial)), None)
    if ring is None:
        ring = Ring(())
        vals = [ring.constant(v) for v in vals]
    else:
        vals = [v if isinstance(v, Polynomial) else ring.constant(v) for v in vals]
    out = [m.compose(vals, ring) for m in maps]
    if not ring.names:
        return tuple(o.constant_value() for o in out)
    return tuple(out)


def pushforward(A: LieAlgebra, source: Chart, target: Chart, f: Polynomial) -> Polynomial:
    """Re-express a function written in ``source`` coordinates in ``target`` coordinates."""
    n = A.dim
    if source == target:
        return f
    src_ring = source.ring(n)
    f = f.embed(src_ring) if f.ring != src_ring else f
    tgt_ring = target.ring(n)
    # target coords -> first kind -> source coords
    to_first_t, _ = chart_maps(A, target)
    _, from_first_s = chart_maps(A, source)
    src_in_target = [p.compose(to_first_t, tgt_ring) for p in from_first_s]
    return f.compose(src_in_target, tgt_ring)


def right_translation(A: LieAlgebra, chart: Chart, g_prefix: str = "g"):
    """Chart coordinates of ``x * exp(g)`` for symbolic ``x`` (chart) and ``g`` (first kind).

    Returns ``(ring, images)`` where ``ring`` has the chart variables followed
    by ``g1..gn``.
    """
    key = ("right", chart, g_prefix)
    cache = _cache(A)
    if key in cache:
        return cache[key]
    n = A.dim
    base = chart.ring(n)
    g_names = [f"{g_prefix}{i + 1}" for i in range(n)]
    ring = base.extend(g_names)
    to_first, from_first = chart_maps(A, chart)
    a = [p.embed(ring) for p in to_first]
    g = [ring.var(v) for v in g_names]
    prod_first = bch(A, a, g)
    images = [p.compose(list(prod_first), ring) for p in from_first]
    cache[key] = (ring, images)
    return cache[key]


def left_invariant_fields(A: LieAlgebra, chart: Chart) -> list[Derivation]:
    """``X_i f(x) = d/de f(x exp(e X_i))|_{e=0}`` as derivations in chart coordinates."""
    key = ("fields", chart)
    cache = _cache(A)
    if key in cache:
        return cache[key]
    n = A.dim
    base = chart.ring(n)
    ring, images = right_translation(A, chart, "_g")
    zero_g = {f"_g{i + 1}": 0 for i in range(n)}
    fields = []
    for i in range(n):
        coeffs = {}
        for l, img in enumerate(images):
            d = img.partial(f"_g{i + 1}").subs(zero_g, ring=ring)
            coeffs[base.names[l]] = d.embed(base) if d else None
        fields.append(Derivation(base, coeffs))
    cache[key] = fields
    return fields


def algebra_field(fields: Sequence[Derivation], x: Sequence) -> Derivation:
    """Left-invariant field of the algebra element ``x`` (coefficients may be polynomials)."""
    ring = fields[0].ring
    total = Derivation(ring)
    for c, field in zip(x, fields):
        if not c:
            continue
        if isinstance(c, Polynomial):
            total = total + field.embed(c.ring) * c if c.ring != ring else total + field * c
        else:
            total = total + field * c
    return total


def dilate(A: LieAlgebra, lam, f: Polynomial, chart: Chart | None = None) -> Polynomial:
    """Compose ``f`` with the dilation ``x_i -> lam^{w_i} x_i``.

    ``lam`` is a nonzero rational or the name of a (Laurent) ring variable.
    The chart basis must consist of homogeneous elements of a stratification.
    """
    if A.weights is None or not A.is_stratified():
        raise LieAlgebraError("dilations need a stratified algebra (layer weights)")
    n = A.dim
    chart = chart or Chart.second()
    weights = chart_weights(A, chart)
    names = chart.names(n)
    ring = f.ring
    if isinstance(lam, str):
        if lam not in ring:
            ring = ring.extend([lam], laurent=[lam])
            f = f.embed(ring)
        scale = ring.var(lam)
    else:
        scale = ring.constant(lam)
    mapping = {}
    for name, w in zip(names, weights):
        if name in ring:
            mapping[name] = ring.var(name) * scale ** w
    return f.subs(mapping, ring=ring)


def chart_weights(A: LieAlgebra, chart: Chart) -> tuple[int, ...]:
    """Layer weight of each chart coordinate; errors if a chart basis vector is inhomogeneous."""
    if A.weights is None:
        raise LieAlgebraError("algebra has no grading")
    if chart.basis is None:
        return A.weights
    out = []
    for b in chart.basis_vectors(A):
        ws = {A.weights[i] for i, c in enumerate(b) if c}
        if len(ws) != 1:
            raise ChartError("chart basis vector is not homogeneous for the grading")
        out.append(ws.pop())
    return tuple(out)
