from fractions import Fraction

import pytest

from nilpoly import builtins
from nilpoly.group import Chart, left_invariant_fields
from nilpoly.verify import (
    PreconditionError,
    differential_degree,
    lcs_invariance,
    leibman_check,
    leibman_degree,
    restrict_along_flows,
    taylor_coefficients,
    vandermonde_fit,
    verify_representation,
)

SECOND = Chart.second()
H = builtins.heisenberg()
R3 = SECOND.ring(3)

SAMPLES = ["0", "7", "x1", "x3", "x1*x3", "x3 - 1/2*x1*x2", "x1*x2*x3 - x3^2", "x2^3 + x1*x3^2", "x3^3"]


def _brute_degree(fields, f, limit=10):
    """Largest r such that some word of r fields does not kill f."""
    best = -1
    current = [f]
    for r in range(limit + 1):
        if not any(current):
            break
        best = r
        current = [X(g) for g in current for X in fields if g]
    return best


@pytest.mark.parametrize("text", SAMPLES)
def test_differential_degree_matches_word_enumeration(text):
    f = R3.parse(text)
    assert differential_degree(H, SECOND, f) == _brute_degree(left_invariant_fields(H, SECOND), f)


def test_differential_degree_examples():
    assert differential_degree(H, SECOND, R3.parse("x1*x3")) == 3
    assert differential_degree(H, SECOND, R3.zero()) == -1
    assert differential_degree(H, SECOND, R3.one()) == 0


def test_leibman_threshold():
    f = R3.parse("x1*x3")
    assert not leibman_check(H, SECOND, f, 2)
    assert leibman_check(H, SECOND, f, 3)


def _matrix_oracle_degree(sympy, text):
    # x -> [[1, x1, x3], [0, 1, x2], [0, 0, 1]]; exp of first-kind g has
    # entries g1, g2 and g3 + g1 g2 / 2, so x exp(g) has the coordinates below.
    x1, x2, x3 = sympy.symbols("x1 x2 x3")
    f = sympy.sympify(text.replace("^", "**"), locals={"x1": x1, "x2": x2, "x3": x3})
    d = -1
    j = 0
    while sympy.expand(f) != 0:
        d += 1
        j += 1
        g1, g2, g3 = sympy.symbols(f"u{j}_1 u{j}_2 u{j}_3")
        moved = {x1: x1 + g1, x2: x2 + g2, x3: x3 + g3 + g1 * g2 / 2 + x1 * g2}
        f = sympy.expand(f.subs(moved, simultaneous=True) - f)
    return d


@pytest.mark.parametrize("text", SAMPLES)
def test_leibman_degree_matches_matrix_oracle(text, sympy):
    f = R3.parse(text)
    assert leibman_degree(H, SECOND, f) == _matrix_oracle_degree(sympy, text)


@pytest.mark.parametrize("text", SAMPLES)
def test_leibman_equals_differential_degree(text):
    f = R3.parse(text)
    d = differential_degree(H, SECOND, f)
    assert leibman_degree(H, SECOND, f) == d
    assert lcs_invariance(H, SECOND, f, d)


def test_lcs_invariance_fails_below_degree():
    # x3 has degree 2 and is not invariant under X3 in the first LCS term
    assert not lcs_invariance(H, SECOND, R3.var("x3"), 1)


def test_representation_formula_examples():
    f = R3.parse("x1*x3")
    assert verify_representation(H, SECOND, f, "X1", ["X2"], 2)
    assert verify_representation(H, SECOND, f, "X2", ["X1", "X2"], 3)
    E = builtins.engel()
    g = SECOND.ring(4).parse("x2*x4 - 1/2*x3^2")
    assert verify_representation(E, SECOND, g, "X1", ["X2", "X1", "X3"], 1)


def test_representation_precondition():
    with pytest.raises(PreconditionError):
        verify_representation(H, SECOND, R3.parse("x1^2"), "X1", [], 2)


def test_flow_restriction_at_identity():
    P = restrict_along_flows(H, SECOND, R3.parse("x1*x3"), (0, 0, 0), ["X1", "X2"], 2)
    assert str(P) == "t1^2*t2"


def test_flow_restriction_off_identity():
    E = builtins.engel()
    f = SECOND.ring(4).parse("x2*x4 - 1/2*x3^2")
    P = restrict_along_flows(E, SECOND, f, (1, Fraction(-1, 2), 2, 3), ["X2", "X1", "X2"], 2)
    assert P.degree() <= 11


def test_vandermonde_fit():
    assert vandermonde_fit([(0, 0), (1, 1), (2, 4)], 3) == [0, 0, 1]
    assert vandermonde_fit([(1, 3), (2, 5), (5, 11)], 2) == [1, 2]
    with pytest.raises(ValueError):
        vandermonde_fit([(0, 0), (1, 1), (2, 5)], 2)
    with pytest.raises(ValueError):
        vandermonde_fit([(1, 0), (1, 1)], 2)


def test_taylor_coefficients_recover_flow_polynomial():
    f = R3.parse("x1*x3")
    p = (1, 2, 3)
    coeffs = taylor_coefficients(H, SECOND, f, "X2", p, 3)
    P = restrict_along_flows(H, SECOND, f, p, ["X2"], 2)
    samples = [(t, P.evaluate({"t1": Fraction(t)})) for t in range(3)]
    assert vandermonde_fit(samples, 2) == coeffs[:2]
    assert coeffs[2] == 0


def test_engel_first_kind_affine_element_has_degree_three():
    E = builtins.engel()
    first = Chart.first()
    f = first.ring(4).parse("6*a4 + a1*a3")
    assert differential_degree(E, first, f) == 3
