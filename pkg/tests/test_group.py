from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nilpoly import builtins
from nilpoly.derivation import Derivation
from nilpoly.group import (
    Chart,
    ChartError,
    bch,
    bch_product,
    chart_convert,
    chart_maps,
    dilate,
    dynkin_coefficients,
    group_inverse,
    left_invariant_fields,
    pushforward,
)
from nilpoly.hall import free_nilpotent
from nilpoly.lie import LieAlgebraError
from nilpoly.poly import Ring

F = Fraction


def test_dynkin_low_order_terms():
    c = dynkin_coefficients(3)
    assert c[(0,)] == 1 and c[(1,)] == 1
    # [X, Y] = -[Y, X], so only the antisymmetrized sum is canonical
    assert c.get((0, 1), 0) - c.get((1, 0), 0) == F(1, 2)
    assert all(len(w) < 2 or w[-1] != w[-2] for w in c)


def test_bch_heisenberg():
    H = builtins.heisenberg()
    assert bch(H, (1, 0, 0), (0, 1, 0)) == (1, 1, F(1, 2))
    assert bch(H, (F(1, 3), 2, 5), (0, 0, 0)) == (F(1, 3), 2, 5)


def test_bch_engel():
    E = builtins.engel()
    # log(e^X1 e^X2) = X1 + X2 + 1/2 X3 + 1/12 X4
    assert bch(E, (1, 0, 0, 0), (0, 1, 0, 0)) == (1, 1, F(1, 2), F(1, 12))


def test_group_inverse():
    E = builtins.engel()
    a = (F(2), F(-1), F(3, 2), F(5))
    assert bch_product(E, a, group_inverse(a)) == (0, 0, 0, 0)


# -- matrix oracle ----------------------------------------------------------

def _E(n, i, j):
    M = [[F(0)] * n for _ in range(n)]
    M[i - 1][j - 1] = F(1)
    return M


def _add(*Ms):
    n = len(Ms[0])
    return [[sum((M[i][j] for M in Ms), F(0)) for j in range(n)] for i in range(n)]


def _mul(A, B):
    n = len(A)
    return [[sum((A[i][k] * B[k][j] for k in range(n)), F(0)) for j in range(n)] for i in range(n)]


def _scale(c, A):
    return [[c * v for v in row] for row in A]


def _exp(X):
    n = len(X)
    I = [[F(int(i == j)) for j in range(n)] for i in range(n)]
    out, term = I, I
    for k in range(1, n):
        term = _scale(F(1, k), _mul(term, X))
        out = _add(out, term)
    return out


def _log(U):
    n = len(U)
    N = _add(U, _scale(-1, [[F(int(i == j)) for j in range(n)] for i in range(n)]))
    out, power = _scale(0, N), N
    for k in range(1, n):
        out = _add(out, _scale(F((-1) ** (k + 1), k), power))
        power = _mul(power, N)
    return out


HEIS_MATS = [_E(3, 1, 2), _E(3, 2, 3), _E(3, 1, 3)]
ENGEL_MATS = [_add(_E(4, 1, 2), _E(4, 2, 3), _E(4, 3, 4)), _E(4, 3, 4), _E(4, 2, 4), _E(4, 1, 4)]


def _element(mats, x):
    return _add(*[_scale(c, M) for c, M in zip(x, mats)])


@pytest.mark.parametrize("algebra, mats", [(builtins.heisenberg, HEIS_MATS), (builtins.engel, ENGEL_MATS)])
def test_matrices_realize_brackets(algebra, mats):
    A = algebra()
    for i in range(A.dim):
        for j in range(A.dim):
            comm = _add(_mul(mats[i], mats[j]), _scale(-1, _mul(mats[j], mats[i])))
            assert comm == _element(mats, A.bracket(A.basis_vector(i), A.basis_vector(j)))


vec4 = st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=3), min_size=4, max_size=4)


@settings(max_examples=40, deadline=None)
@given(vec4, vec4)
def test_bch_matches_matrix_logarithm(x, y):
    for algebra, mats in ((builtins.heisenberg, HEIS_MATS), (builtins.engel, ENGEL_MATS)):
        A = algebra()
        a, b = x[: A.dim], y[: A.dim]
        z = bch(A, a, b)
        assert _element(mats, z) == _log(_mul(_exp(_element(mats, a)), _exp(_element(mats, b))))


def test_second_kind_chart_matches_ordered_exponentials():
    A = builtins.engel()
    x = (F(1, 2), F(-2), F(3), F(1, 5))
    a = chart_convert(A, Chart.second(), x)
    U = _exp(_element(ENGEL_MATS, a))
    V = None
    for i in reversed(range(4)):
        step = _exp(_scale(x[i], ENGEL_MATS[i]))
        V = step if V is None else _mul(V, step)
    assert U == V


@settings(max_examples=30, deadline=None)
@given(vec4, vec4, vec4)
def test_bch_associative_numerically(a, b, c):
    E = builtins.engel()
    assert bch_product(E, bch_product(E, a, b), c) == bch_product(E, a, bch_product(E, b, c))


# -- charts ------------------------------------------------------------------

def test_heisenberg_chart_maps():
    to_first, from_first = chart_maps(builtins.heisenberg(), Chart.second())
    assert [str(p) for p in to_first] == ["x1", "x2", "-1/2*x1*x2 + x3"]
    assert [str(p) for p in from_first] == ["a1", "a2", "1/2*a1*a2 + a3"]


def test_abelian_charts_coincide():
    A = builtins.abelian(3)
    to_first, _ = chart_maps(A, Chart.second())
    assert [str(p) for p in to_first] == ["x1", "x2", "x3"]


@settings(max_examples=30, deadline=None)
@given(st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=5), min_size=5, max_size=5))
def test_chart_roundtrip(x):
    A = builtins.f23()
    chart = Chart.second()
    assert chart_convert(A, chart, chart_convert(A, chart, x), inverse=True) == tuple(x)


def test_custom_second_kind_basis():
    H = builtins.heisenberg()
    chart = Chart.second(((1, 1, 0), (0, 1, 0), (0, 0, 1)))
    p = chart.ring(3).var("x1")
    q = pushforward(H, chart, Chart.second(), p)
    assert pushforward(H, Chart.second(), chart, q) == p
    with pytest.raises(ChartError):
        Chart.second(((1, 0, 0), (1, 0, 0), (0, 0, 1))).basis_vectors(H)


# -- left-invariant fields ----------------------------------------------------

def test_heisenberg_second_kind_fields():
    H = builtins.heisenberg()
    X1, X2, X3 = left_invariant_fields(H, Chart.second())
    R = Chart.second().ring(3)
    assert X1 == Derivation(R, {"x1": 1})
    assert X2 == Derivation(R, {"x2": 1, "x3": "x1"})
    assert X3 == Derivation(R, {"x3": 1})


def test_heisenberg_first_kind_fields():
    X1, X2, _ = left_invariant_fields(builtins.heisenberg(), Chart.first())
    R = Chart.first().ring(3)
    assert X1 == Derivation(R, {"a1": 1, "a3": "-1/2*a2"})
    assert X2 == Derivation(R, {"a2": 1, "a3": "1/2*a1"})


def test_engel_second_kind_fields():
    X1, X2, X3, X4 = left_invariant_fields(builtins.engel(), Chart.second())
    R = Chart.second().ring(4)
    assert X1 == Derivation(R, {"x1": 1})
    assert X2 == Derivation(R, {"x2": 1, "x3": "x1", "x4": "1/2*x1^2"})
    assert X3 == Derivation(R, {"x3": 1, "x4": "x1"})


def test_f23_second_kind_field():
    X2 = left_invariant_fields(builtins.f23(), Chart.second())[1]
    R = Chart.second().ring(5)
    assert X2 == Derivation(R, {"x2": 1, "x3": "-x1", "x4": "1/2*x1^2", "x5": "x1*x2"})


@pytest.mark.parametrize("kind", ["first", "second"])
def test_fields_commute_with_left_translation(kind):
    A = builtins.engel()
    chart = Chart(kind)
    n = A.dim
    base = chart.ring(n)
    ring = base.extend([f"h{i + 1}" for i in range(n)])
    to_first, from_first = chart_maps(A, chart)
    x_first = [p.embed(ring) for p in to_first]
    h = [ring.var(f"h{i + 1}") for i in range(n)]
    prod = bch(A, h, x_first)
    left = [p.compose(list(prod), ring) for p in from_first]
    f = base.parse(" + ".join(f"{c}^2*{d}" for c, d in zip(base.names, reversed(base.names))))
    fields = left_invariant_fields(A, chart)
    lifted = [X.embed(ring) for X in fields]
    for X, Xr in zip(fields, lifted):
        lhs = Xr(f.compose(left, ring))
        rhs = X(f).compose(left, ring)
        assert lhs == rhs


# -- dilations --------------------------------------------------------------

def test_dilate_heisenberg():
    H = builtins.heisenberg()
    f = Chart.second().ring(3).parse("x3 - 1/2*x1*x2 + x1")
    assert dilate(H, 2, f) == f.ring.parse("4*x3 - 2*x1*x2 + 2*x1")


def test_dilation_is_a_group_automorphism():
    A = builtins.f23()
    w = A.weights
    a = (F(1), F(-2), F(1, 3), F(2), F(-1))
    b = (F(3), F(1, 2), F(0), F(-1), F(4))
    lam = F(3, 2)
    d = lambda x: tuple(lam ** wi * xi for wi, xi in zip(w, x))
    assert bch_product(A, d(a), d(b)) == d(bch_product(A, a, b))


def test_dilation_needs_stratification():
    f = Chart.second().ring(2).var("x1")
    with pytest.raises(LieAlgebraError):
        dilate(builtins.aff_plus(), 2, f)


def test_symbolic_dilation_parameter():
    H = builtins.heisenberg()
    f = Chart.second().ring(3).parse("x1*x3")
    g = dilate(H, "lam", f)
    assert g == g.ring.parse("lam^3*x1*x3")


def test_free_algebra_fields_realize_brackets():
    A = free_nilpotent(2, 4)
    fields = left_invariant_fields(A, Chart.second())
    from nilpoly.group import algebra_field

    for i in range(A.dim):
        for j in range(A.dim):
            want = algebra_field(fields, A.bracket(A.basis_vector(i), A.basis_vector(j)))
            assert fields[i].commutator(fields[j]) == want
