from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nilpoly import builtins
from nilpoly.hall import extend_hom, free_nilpotent, hall_basis, hall_label
from nilpoly.lie import (
    Ad_exp,
    LieAlgebra,
    LieAlgebraError,
    NotNilpotentError,
    lie_generates,
    lower_central_series,
    mat_vec,
    validate,
)

F = Fraction


def test_heisenberg_brackets():
    H = builtins.heisenberg()
    X1, X2, X3 = H.basis()
    assert H.bracket(X1, X2) == X3
    assert H.bracket(X2, X1) == tuple(-c for c in X3)
    assert not any(H.bracket(X1, X3))


def test_antisymmetry_failure_is_located():
    bad = LieAlgebra(3, {(0, 1, 2): 1})
    with pytest.raises(LieAlgebraError, match=r"antisymmetry fails at \(1,2,3\)"):
        validate(bad)


def test_jacobi_failure_is_located():
    bad = LieAlgebra.from_brackets(["A", "B", "C"], {("A", "B"): {"C": 1}, ("A", "C"): {"A": 1}})
    with pytest.raises(LieAlgebraError, match="Jacobi"):
        validate(bad)


def test_non_nilpotent_is_refused():
    with pytest.raises(NotNilpotentError):
        validate(builtins.sl2r())
    report = validate(builtins.aff_plus(), require_nilpotent=False)
    assert not report.nilpotent


@pytest.mark.parametrize(
    "algebra, dims",
    [(builtins.heisenberg, (3, 1, 0)), (builtins.engel, (4, 2, 1, 0)), (builtins.f23, (5, 3, 2, 0))],
)
def test_lower_central_series(algebra, dims):
    chain = lower_central_series(algebra())
    assert chain.dims == dims
    assert chain.step == len(dims) - 1


def test_builtins_are_stratified():
    for A in (builtins.heisenberg(), builtins.engel(), builtins.f23()):
        validate(A)
        assert A.is_stratified()


def test_ad_exp_heisenberg():
    H = builtins.heisenberg()
    M = Ad_exp(H, (1, 0, 0))
    assert mat_vec(M, (0, 1, 0)) == (0, 1, 1)
    assert mat_vec(M, (0, 0, 1)) == (0, 0, 1)


def test_ad_exp_engel_quadratic_term():
    E = builtins.engel()
    # Ad_{exp X1} X2 = X2 + [X1, X2] + 1/2 [X1, [X1, X2]]
    assert mat_vec(Ad_exp(E, (1, 0, 0, 0)), (0, 1, 0, 0)) == (0, 1, 1, F(1, 2))


vec = st.lists(st.integers(-3, 3).map(F), min_size=5, max_size=5)


@settings(max_examples=40, deadline=None)
@given(vec, vec, vec)
def test_ad_exp_is_automorphism(x, y, z):
    A = builtins.f23()
    M = Ad_exp(A, x)
    assert mat_vec(M, A.bracket(y, z)) == A.bracket(mat_vec(M, y), mat_vec(M, z))


def test_lie_generates():
    H = builtins.heisenberg()
    assert lie_generates(H, [(1, 0, 0), (0, 1, 0)])[0]
    ok, closure = lie_generates(H, [(1, 0, 0), (0, 0, 1)])
    assert not ok and len(closure) == 2
    assert lie_generates(H, [(1, 1, 0), (1, -1, 0)])[0]


# -- free nilpotent algebras -----------------------------------------------

def _mobius(n):
    out, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            out = -out
        p += 1
    return -out if n > 1 else out


def _witt(m, n):
    return sum(_mobius(d) * m ** (n // d) for d in range(1, n + 1) if n % d == 0) // n


@pytest.mark.parametrize("m, s", [(2, 2), (2, 3), (3, 2), (2, 4), (3, 3), (2, 5), (4, 2)])
def test_free_dimensions_follow_witt(m, s):
    F_ = free_nilpotent(m, s)
    assert F_.dim == sum(_witt(m, n) for n in range(1, s + 1))
    assert lower_central_series(F_).step == s
    validate(F_)


def test_named_dimensions():
    assert [free_nilpotent(m, s).dim for m, s in [(2, 2), (2, 3), (3, 2)]] == [3, 5, 6]


def test_one_generator_is_refused():
    with pytest.raises(LieAlgebraError):
        free_nilpotent(1, 2)


def _expand(word):
    """Noncommutative polynomial of a Hall word, as {letters: coefficient}."""
    if not isinstance(word, tuple):
        return {(word,): 1}
    a, b = _expand(word[0]), _expand(word[1])
    out = {}
    for u, c in a.items():
        for v, d in b.items():
            out[u + v] = out.get(u + v, 0) + c * d
            out[v + u] = out.get(v + u, 0) - c * d
    return {k: v for k, v in out.items() if v}


@pytest.mark.parametrize("m, s", [(2, 3), (2, 4), (3, 3)])
def test_structure_constants_match_tensor_commutators(m, s):
    A = free_nilpotent(m, s)
    words = hall_basis(m, s)
    exp = [_expand(w) for w in words]
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = {}
            for u, c in exp[i].items():
                for v, d in exp[j].items():
                    if len(u) + len(v) <= s:
                        lhs[u + v] = lhs.get(u + v, 0) + c * d
                        lhs[v + u] = lhs.get(v + u, 0) - c * d
            rhs = {}
            for k, c in enumerate(A.bracket(A.basis_vector(i), A.basis_vector(j))):
                for u, d in exp[k].items():
                    rhs[u] = rhs.get(u, 0) + c * d
            clean = lambda p: {k: v for k, v in p.items() if v}
            assert clean(lhs) == clean(rhs), (hall_label(words[i], "XY"), hall_label(words[j], "XY"))


def test_hall_labels_of_f23():
    labels = [hall_label(w, ["X1", "X2"]) for w in hall_basis(2, 3)]
    assert labels == ["X1", "X2", "[X2,X1]", "[[X2,X1],X1]", "[[X2,X1],X2]"]


def test_truncation_quotient_is_a_homomorphism():
    for m, s in [(2, 3), (3, 3), (2, 4)]:
        big, small = free_nilpotent(m, s), free_nilpotent(m, s - 1)
        hom = extend_hom(big, small, small.basis()[:m])
        assert hom.is_surjective()
        assert hom.kernel_dimension() == _witt(m, s)
        assert hall_basis(m, s - 1) == hall_basis(m, s)[: small.dim]


def test_extend_hom_onto_heisenberg_and_engel():
    hom = extend_hom(free_nilpotent(2, 2), builtins.heisenberg(), [(1, 0, 0), (0, 1, 0)])
    assert hom.is_surjective() and hom.kernel_dimension() == 0
    E = builtins.engel()
    hom = extend_hom(free_nilpotent(2, 3), E, [(1, 0, 0, 0), (0, 1, 0, 0)])
    assert hom.is_surjective() and hom.kernel_dimension() == 1


def test_extend_hom_refuses_higher_step_target():
    with pytest.raises(LieAlgebraError):
        extend_hom(free_nilpotent(2, 2), builtins.engel(), [(1, 0, 0, 0), (0, 1, 0, 0)])
