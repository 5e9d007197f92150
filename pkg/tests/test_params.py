import pytest
from hypothesis import given, strategies as st

from diffsets.params import (
    InvalidParameters,
    enumerate_params,
    hadamard_params,
    make_params,
    planar_params,
)


def test_make_params_table_row():
    ps = make_params(429, 108, 27)
    assert ps.n == 81
    assert ps.as_tuple() == (429, 108, 27)


def test_make_params_complements():
    ps = make_params(7, 4, 2)
    assert ps.as_tuple() == (7, 3, 1) and ps.n == 2


def test_make_params_bad_identity():
    with pytest.raises(InvalidParameters, match="counting identity"):
        make_params(10, 4, 1)


def test_enumerate_k3():
    assert [p.as_tuple() for p in enumerate_params(3, 3)] == [(7, 3, 1)]


def test_enumerate_empty_range():
    assert list(enumerate_params(10, 9)) == []


@pytest.mark.parametrize("v, expected", [(7, (7, 3, 1)), (3439, (3439, 1719, 859)), (9423, (9423, 4711, 2355))])
def test_hadamard_params(v, expected):
    assert hadamard_params(v).as_tuple() == expected


@pytest.mark.parametrize("n, expected", [(2, (7, 3, 1)), (10, (111, 11, 1)), (107, (11557, 108, 1))])
def test_planar_params(n, expected):
    assert planar_params(n).as_tuple() == expected


def _brute(kmin, kmax):
    out = set()
    for k in range(kmin, kmax + 1):
        for lam in range(1, k):
            if (k * (k - 1)) % lam:
                continue
            v = k * (k - 1) // lam + 1
            if 2 * k <= v and k - lam >= 2:
                out.add((v, k, lam))
    return out


@given(st.integers(min_value=3, max_value=60), st.integers(min_value=0, max_value=15))
def test_enumeration_complete_and_ordered(kmin, width):
    got = [p.as_tuple() for p in enumerate_params(kmin, kmin + width)]
    assert set(got) == _brute(kmin, kmin + width)
    assert got == sorted(got, key=lambda t: (t[1], t[0]))
    for v, k, lam in got:
        assert lam * (v - 1) == k * (k - 1)
