import itertools
from math import gcd, isqrt, prod

import pytest
from hypothesis import given, settings, strategies as st

from diffsets.numtheory import (
    REAL,
    factor,
    hilbert_symbol,
    is_padic_unit_square,
    is_prime,
    jacobi,
    mult_order,
    relevant_places,
    ternary_solvable,
    totient,
)


@pytest.mark.parametrize("n, expected", [
    (429, [(3, 1), (11, 1), (13, 1)]),
    (28325, [(5, 2), (11, 1), (103, 1)]),
    (1, []),
])
def test_factor(n, expected):
    assert list(factor(n).factors) == expected


@pytest.mark.parametrize("n, expected", [
    (3439, False),
    # 8591 = 11^2 * 71, so it is composite (a listed example claimed otherwise)
    (8591, False),
    (1, False),
    (2, True),
    (9423, False),
    (2**61 - 1, True),
])
def test_is_prime(n, expected):
    assert is_prime(n) is expected


def test_8591_factorization():
    assert list(factor(8591).factors) == [(11, 2), (71, 1)]


@pytest.mark.parametrize("a, m, expected", [(2, 7, 3), (3, 143, 15), (16, 101, 25), (2, 111, 36)])
def test_mult_order(a, m, expected):
    assert mult_order(a, m) == expected


def test_mult_order_rejects_non_units():
    with pytest.raises(ValueError):
        mult_order(3, 9)


@pytest.mark.parametrize("a, m, expected", [(2, 7, 1), (2, 3, -1), (6, 3, 0)])
def test_jacobi(a, m, expected):
    assert jacobi(a, m) == expected


@pytest.mark.parametrize("a, b, place, expected", [
    (1, 5, REAL, 1),
    (1, -7, 3, 1),
    (1, 3, 2, 1),
    (-1, -1, REAL, -1),
    (-1, -1, 2, -1),
    (-1, -1, 3, 1),
    (2, 3, 3, -1),
])
def test_hilbert_symbol(a, b, place, expected):
    assert hilbert_symbol(a, b, place) == expected


def _solvable_mod(a, b, p, e):
    # a x^2 + b y^2 = z^2 with a primitive solution mod p^e
    m = p**e
    for x, y, z in itertools.product(range(m), repeat=3):
        if (x % p or y % p or z % p) and (a * x * x + b * y * y - z * z) % m == 0:
            return True
    return False


@pytest.mark.parametrize("a, b", [(-1, -1), (3, 5), (-3, 2), (7, 2), (6, -1), (5, 10), (-2, -5)])
def test_2adic_symbol_matches_exhaustive_mod_32(a, b):
    # at p = 2 local solvability is decided modulo 2^5 for these small inputs
    assert (hilbert_symbol(a, b, 2) == 1) == _solvable_mod(a, b, 2, 5)


@pytest.mark.parametrize("a, b, expected", [(3, -2, True), (6, -1, False), (4, -1, True), (-1, -1, False)])
def test_ternary_solvable(a, b, expected):
    assert ternary_solvable(a, b) is expected


@pytest.mark.parametrize("u, p, expected", [(2, 7, True), (3, 2, False), (17, 2, True), (3, 7, False), (9, 2, True)])
def test_is_padic_unit_square(u, p, expected):
    assert is_padic_unit_square(u, p) is expected


@pytest.mark.parametrize("m, expected", [(39, 24), (143, 120), (1, 1), (1024, 512)])
def test_totient(m, expected):
    assert totient(m) == expected


@given(st.integers(min_value=1, max_value=2**63))
@settings(max_examples=60, deadline=None)
def test_factor_reassembles(n):
    f = factor(n)
    assert prod(p**e for p, e in f.factors) == n
    assert all(is_prime(p) for p in f.primes)


@given(st.integers(min_value=2, max_value=10**6), st.integers(min_value=1, max_value=10**6))
def test_order_divides_totient(m, a):
    if gcd(a, m) != 1:
        return
    o = mult_order(a, m)
    assert totient(m) % o == 0
    assert pow(a, o, m) == 1 % m


nonzero = st.integers(min_value=-500, max_value=500).filter(bool)


@given(nonzero, nonzero, nonzero, st.sampled_from([REAL, 2, 3, 5, 7, 11, 13]))
def test_hilbert_multiplicative(a, a2, b, place):
    assert hilbert_symbol(a * a2, b, place) == hilbert_symbol(a, b, place) * hilbert_symbol(a2, b, place)


@given(nonzero, nonzero)
def test_hilbert_product_formula(a, b):
    assert prod(hilbert_symbol(a, b, pl) for pl in relevant_places(a, b)) == 1


def _small_solution(a, b, bound=200):
    for x in range(bound + 1):
        for y in range(bound + 1):
            if x == y == 0:
                continue
            z2 = a * x * x + b * y * y
            if z2 >= 0 and isqrt(z2) ** 2 == z2:
                return True
    return False


@given(st.integers(min_value=-30, max_value=30).filter(bool), st.integers(min_value=-30, max_value=30).filter(bool))
@settings(max_examples=40, deadline=None)
def test_ternary_agrees_with_small_search(a, b):
    # one-sided: a solution found by search must be confirmed
    if _small_solution(a, b, bound=60):
        assert ternary_solvable(a, b)
