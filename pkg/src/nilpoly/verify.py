"""Polynomial degrees on nilpotent groups and checks of the representation formulas.

Two notions of degree for a function ``f`` on a group:

* differential: the least ``d`` with ``X_1 ... X_{d+1} f = 0`` for all
  left-invariant fields ``X_i``;
* Leibman: the least ``d`` with ``D_{g_1} ... D_{g_{d+1}} f = 0`` for all
  group elements, where ``D_g f = f o R_g - f``.

Both are computed here, along with exact checks of the formula
``(X_1..X_r f)(q exp(tX)) = sum_{i<k} t^i/i! (Ad(X_1)..Ad(X_r) X^i f)(q)``
and of the polynomial dependence of ``f`` along concatenated flows.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Sequence

from .bounds import degree_bound
from .derivation import Derivation
from .group import Chart, algebra_field, bch, chart_maps, left_invariant_fields, right_translation
from .lie import Ad_exp, LieAlgebra, lower_central_series, mat_vec
from .linalg import solve
from .poly import Polynomial, Ring, as_fraction
from .solver import canonical_basis

__all__ = [
    "PreconditionError",
    "differential_degree",
    "fields_degree",
    "leibman_check",
    "leibman_degree",
    "verify_representation",
    "restrict_along_flows",
    "flow_formula",
    "lcs_invariance",
    "vandermonde_fit",
    "taylor_coefficients",
    "is_k_polynomial",
]


class PreconditionError(ValueError):
    """A hypothesis of the formula being checked does not hold."""


def _on_chart(A: LieAlgebra, chart: Chart, f: Polynomial) -> Polynomial:
    ring = chart.ring(A.dim)
    return f if f.ring == ring else f.embed(ring)


def fields_degree(fields: Sequence[Derivation], f: Polynomial, limit: int | None = None) -> int:
    """Least ``d`` such that every word of ``d + 1`` fields kills ``f`` (``-1`` for ``f = 0``).

    Iterates ``V_{j+1} = span{X v : v in V_j}`` from ``V_0 = span{f}``.
    Returns ``limit + 1`` if the span is still nonzero after ``limit`` steps.
    """
    layer = canonical_basis([f])
    d = -1
    while layer:
        d += 1
        if limit is not None and d > limit:
            return d
        layer = canonical_basis([X(v) for v in layer for X in fields], f.ring)
    return d


def differential_degree(A: LieAlgebra, chart: Chart, f: Polynomial) -> int:
    return fields_degree(left_invariant_fields(A, chart), _on_chart(A, chart, f))


def is_k_polynomial(field: Derivation, f: Polynomial, k: int) -> bool:
    for _ in range(k):
        if not f:
            return True
        f = field(f)
    return not f


def _difference(A: LieAlgebra, chart: Chart, F: Polynomial, prefix: str) -> Polynomial:
    """``F o R_g - F`` with ``g`` = fresh first-kind symbols ``prefix1..prefixn``."""
    rt_ring, images = right_translation(A, chart, prefix)
    extra = [v for v in rt_ring.names if v not in F.ring]
    ring = F.ring.extend(extra)
    chart_names = set(chart.names(A.dim))
    imgs = [img.embed(ring) for img in images]
    sub = []
    pos = {v: i for i, v in enumerate(chart.names(A.dim))}
    for name in ring.names:
        sub.append(imgs[pos[name]] if name in chart_names else ring.var(name))
    G = F.embed(ring)
    return G.compose(sub, ring) - G


def leibman_check(A: LieAlgebra, chart: Chart, f: Polynomial, d: int) -> bool:
    """True iff ``D_{g_1} ... D_{g_{d+1}} f`` vanishes identically in ``x`` and all ``g_j``."""
    if d < 0:
        return not f
    F = _on_chart(A, chart, f)
    for j in range(d + 1):
        if not F:
            return True
        F = _difference(A, chart, F, f"g{j + 1}_")
    return not F


def leibman_degree(A: LieAlgebra, chart: Chart, f: Polynomial, limit: int = 64) -> int:
    """Least ``d`` passing :func:`leibman_check` (``-1`` for ``f = 0``), found by iterated differences."""
    F = _on_chart(A, chart, f)
    d = -1
    while F:
        d += 1
        if d > limit:
            raise RuntimeError(f"no Leibman degree up to {limit}")
        F = _difference(A, chart, F, f"g{d + 1}_")
    return d


# -- representation formula -----------------------------------------------------

def _vec(A: LieAlgebra, x) -> tuple:
    if isinstance(x, str):
        return A.basis_vector(A.index(x))
    return tuple(x)


def _t_ring(A: LieAlgebra, chart: Chart, tnames: Sequence[str]) -> Ring:
    return chart.ring(A.dim).extend(tnames)


def _field_over(fields_t: Sequence[Derivation], x: Sequence) -> Derivation:
    return algebra_field(fields_t, x)


def verify_representation(
    A: LieAlgebra,
    chart: Chart,
    f: Polynomial,
    X,
    word: Sequence,
    k: int,
) -> bool:
    """Compare both sides of the propagation formula as polynomials in ``(q, t)``."""
    f = _on_chart(A, chart, f)
    n = A.dim
    x = _vec(A, X)
    word = [_vec(A, w) for w in word]
    fields = left_invariant_fields(A, chart)
    Xf = algebra_field(fields, x)
    if not is_k_polynomial(Xf, f, k):
        raise PreconditionError(f"X^{k} f is not zero, so the formula does not apply")
    ring = _t_ring(A, chart, ["t"])
    t = ring.var("t")
    fields_t = [fd.embed(ring) for fd in fields]

    # left side: (X_1..X_r f) composed with q -> q exp(tX)
    h = f
    for w in reversed(word):
        h = algebra_field(fields, w)(h)
    rt_ring, images = right_translation(A, chart, "_r")
    big = rt_ring.extend(["t"])
    g_sub = {f"_r{i + 1}": big.var("t") * x[i] for i in range(n) if x[i]}
    zero_g = {f"_r{i + 1}": 0 for i in range(n) if not x[i]}
    imgs = [img.embed(big).subs({**g_sub, **zero_g}, ring=big).embed(ring) for img in images]
    lhs = h.embed(ring).compose(list(imgs) + [t], ring)

    # right side: Ad-conjugated word applied to X^i f, coefficients polynomial in t
    ad = Ad_exp(A, tuple(t * c for c in x))
    conj = [algebra_field(fields_t, mat_vec(ad, w)) for w in word]
    xf_t = algebra_field(fields_t, x)
    rhs = ring.zero()
    g = f.embed(ring)
    for i in range(k):
        term = g
        for D in reversed(conj):
            term = D(term)
        rhs = rhs + term * (t ** i) * Fraction(1, factorial(i))
        g = xf_t(g)
    return lhs == rhs


def flow_formula(
    A: LieAlgebra,
    chart: Chart,
    f: Polynomial,
    p: Sequence,
    Ys: Sequence,
    k: int,
) -> Polynomial:
    """``f(p exp(t_1Y_1)...exp(t_lY_l))`` rebuilt from derivatives of ``f`` at ``p`` only.

    Peels flows from the right with the propagation formula; the result is a
    sum of Ad-conjugated words applied to ``f`` and evaluated at ``p``.
    """
    n = A.dim
    Ys = [_vec(A, y) for y in Ys]
    l = len(Ys)
    tnames = [f"t{j + 1}" for j in range(l)]
    ring = _t_ring(A, chart, tnames)
    fields_t = [fd.embed(ring) for fd in left_invariant_fields(A, chart)]
    ts = [ring.var(v) for v in tnames]
    ads = [Ad_exp(A, tuple(ts[j] * c for c in Ys[j])) for j in range(l)]
    # terms: (coefficient polynomial in t, word as list of algebra vectors)
    terms: list[tuple[Polynomial, list]] = [(ring.one(), [])]
    for j in range(l - 1, -1, -1):
        new = []
        for coeff, word in terms:
            conj = [mat_vec(ads[j], w) for w in word]
            for i in range(k):
                c = coeff * (ts[j] ** i) * Fraction(1, factorial(i))
                new.append((c, conj + [Ys[j]] * i))
        terms = new
    to_first, from_first = chart_maps(A, chart)
    pc = _point_in_chart(A, chart, p)
    g = _on_chart(A, chart, f).embed(ring)
    at_p = {name: v for name, v in zip(chart.names(n), pc)}
    total = ring.zero()
    for coeff, word in terms:
        h = g
        for w in reversed(word):
            if not h:
                break
            h = algebra_field(fields_t, w)(h)
        if h:
            total = total + coeff * h.subs(at_p, ring=ring)
    return total


def _point_in_chart(A: LieAlgebra, chart: Chart, p: Sequence) -> list:
    _, from_first = chart_maps(A, chart)
    ring_a = from_first[0].ring
    vals = [as_fraction(v) for v in p]
    return [q.evaluate(dict(zip(ring_a.names, vals))) for q in from_first]


def restrict_along_flows(
    A: LieAlgebra,
    chart: Chart,
    f: Polynomial,
    p: Sequence,
    Ys: Sequence,
    k: int,
) -> Polynomial:
    """Exact ``P(t_1..t_l) = f(p exp(t_1Y_1)...exp(t_lY_l))`` for a rational point ``p`` (first kind).

    Checks ``deg P <= nu(k, s, l)``, agreement with :func:`flow_formula`, and
    that the formula only sees the jet of ``f`` at ``p`` of order ``D``.
    """
    n = A.dim
    f = _on_chart(A, chart, f)
    Ys = [_vec(A, y) for y in Ys]
    fields = left_invariant_fields(A, chart)
    for y in Ys:
        if not is_k_polynomial(algebra_field(fields, y), f, k):
            raise PreconditionError("f is not k-polynomial along every flow direction")
    l = len(Ys)
    tnames = [f"t{j + 1}" for j in range(l)]
    ring = _t_ring(A, chart, tnames)
    tring = Ring(tnames)
    z = tuple(ring.constant(as_fraction(v)) for v in p)
    for j, y in enumerate(Ys):
        z = bch(A, z, tuple(ring.var(tnames[j]) * c for c in y))
    _, from_first = chart_maps(A, chart)
    coords = [q.compose(list(z), ring) for q in from_first]
    P = f.embed(ring).compose(coords + [ring.var(v) for v in tnames], ring).embed(tring)

    s = max(lower_central_series(A).step, 1)
    w = degree_bound(k, s, l)
    if P.degree() > w.nu:
        raise AssertionError(f"degree {P.degree()} exceeds the bound {w.nu}")
    if flow_formula(A, chart, f, p, Ys, k).embed(tring) != P:
        raise AssertionError("flow restriction disagrees with the propagation formula")
    jet = _jet(f, _point_in_chart(A, chart, p), w.D)
    if flow_formula(A, chart, jet, p, Ys, k).embed(tring) != P:
        raise AssertionError(f"flow restriction depends on derivatives of order > {w.D}")
    return P


def _jet(f: Polynomial, point: Sequence[Fraction], order: int) -> Polynomial:
    """Taylor polynomial of ``f`` at ``point`` of total order ``order``."""
    ring = f.ring
    shifted = f.compose([ring.var(v) + c for v, c in zip(ring.names, point)], ring)
    low = Polynomial(ring, {m: c for m, c in shifted.terms.items() if sum(m) <= order})
    return low.compose([ring.var(v) - c for v, c in zip(ring.names, point)], ring)


def lcs_invariance(A: LieAlgebra, chart: Chart, f: Polynomial, d: int) -> bool:
    """True iff ``X f = 0`` for every ``X`` in the ``d``-th term of the lower central series."""
    f = _on_chart(A, chart, f)
    fields = left_invariant_fields(A, chart)
    return all(not algebra_field(fields, v)(f) for v in lower_central_series(A).term(d))


def vandermonde_fit(samples: Sequence[tuple], k: int) -> list[Fraction]:
    """Coefficients ``a_0..a_{k-1}`` with ``sum_j a_j t^j = value`` at every sample, solved exactly."""
    pts = [(as_fraction(t), as_fraction(v)) for t, v in samples]
    times = [t for t, _ in pts]
    if len(set(times)) != len(times):
        raise ValueError("sample times must be pairwise distinct")
    if len(pts) < k:
        raise ValueError(f"need at least {k} samples, got {len(pts)}")
    V = [[t ** j for j in range(k)] for t, _ in pts[:k]]
    coeffs = solve(V, [v for _, v in pts[:k]])
    for t, v in pts[k:]:
        if sum(c * t ** j for j, c in enumerate(coeffs)) != v:
            raise ValueError("samples are not values of a polynomial of degree < k")
    return coeffs


def taylor_coefficients(A: LieAlgebra, chart: Chart, f: Polynomial, X, p: Sequence, k: int) -> list[Fraction]:
    """``(X^j f)(p) / j!`` for ``j < k``, with ``p`` in first-kind coordinates."""
    f = _on_chart(A, chart, f)
    field = algebra_field(left_invariant_fields(A, chart), _vec(A, X))
    at = dict(zip(chart.names(A.dim), _point_in_chart(A, chart, p)))
    out = []
    for j in range(k):
        out.append(f.evaluate(at) / factorial(j))
        f = field(f)
    return out
