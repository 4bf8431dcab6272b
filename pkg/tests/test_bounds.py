import pytest
from hypothesis import given, strategies as st

from nilpoly.bounds import degree_bound


@pytest.mark.parametrize(
    "k, s, l, nu, D",
    [(2, 2, 2, 3, 3), (2, 3, 2, 4, 4), (1, 5, 9, 0, 0), (2, 2, 6, 63, 63), (3, 1, 4, 8, 8), (5, 2, 1, 4, 4)],
)
def test_known_values(k, s, l, nu, D):
    w = degree_bound(k, s, l)
    assert (w.nu, w.D) == (nu, D)


def test_witness_trace():
    w = degree_bound(2, 2, 3)
    assert w.a == (7, 3, 1)
    assert w.nus == (4, 6)
    assert w.as_dict()["nu"] == 7
    assert str(w) == "k=2 s=2 l=3; a0=7, a1=3, a2=1; nu1=4, nu2=6; nu=7 D=7"


@pytest.mark.parametrize("bad", [(0, 2, 2), (2, 0, 2), (2, 2, 0), (2.0, 2, 2), (True, 2, 2)])
def test_rejects_invalid_input(bad):
    with pytest.raises(ValueError):
        degree_bound(*bad)


def _closed_form(k, s, l):
    if s == 1:
        a = [(k - 1) * (l - j) for j in range(l)]
    else:
        a = [(k - 1) * (s ** (l - j) - 1) // (s - 1) for j in range(l)]
    return l * (k - 1) + (s - 1) * sum(a[1:l]), a[0]


params = st.tuples(st.integers(1, 6), st.integers(1, 5), st.integers(1, 8))


@given(params)
def test_matches_closed_form(p):
    w = degree_bound(*p)
    assert (w.nu, w.D) == _closed_form(*p)


@given(params)
def test_monotone_in_each_argument(p):
    k, s, l = p
    nu = degree_bound(k, s, l).nu
    assert degree_bound(k + 1, s, l).nu >= nu
    assert degree_bound(k, s + 1, l).nu >= nu
    assert degree_bound(k, s, l + 1).nu >= nu


@given(st.integers(1, 6), st.integers(1, 6))
def test_single_flow_is_k_minus_one(k, s):
    assert degree_bound(k, s, 1).nu == k - 1
