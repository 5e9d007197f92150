import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from diffsets.contraction import (
    ContractionSolution,
    count_solutions,
    count_solutions_upto,
    eliminate_by_contraction,
    filter_autocorrelation,
    is_difference_set,
    iter_solutions,
    make_problem,
    orbit_union_search,
    solve_counts,
)
from diffsets.params import make_params
from diffsets.results import Verdict


@pytest.mark.parametrize("params, w, t, count", [
    ((429, 108, 27), 143, 3, 14896),
    ((303, 151, 75), 303, 16, 2772),
    ((611, 245, 98), 47, 2, 0),
])
def test_solve_counts(params, w, t, count):
    problem = make_problem(make_params(*params), w, t)
    n, stream = solve_counts(problem)
    assert n == count
    assert sum(1 for _ in stream) == count


def test_303_count_is_three_times_binomial():
    # 151 = 25*6 + 1: six of the 25-orbits and one of the three fixed points
    from math import comb

    assert count_solutions(make_problem(make_params(303, 151, 75), 303, 16)) == 3 * comb(12, 6)


def test_429_correlation_filter_kills_everything():
    problem = make_problem(make_params(429, 108, 27), 143, 3)
    assert list(filter_autocorrelation(problem, iter_solutions(problem))) == []


def test_fano_indicator_survives():
    problem = make_problem(make_params(7, 3, 1), 7, 1)
    b = [0, 1, 1, 0, 1, 0, 0]
    # with t = 1 every orbit is a singleton, in order 0..6
    sol = ContractionSolution(tuple(b))
    assert list(filter_autocorrelation(problem, [sol])) == [sol]


def test_3949_two_in_zero_out():
    problem = make_problem(make_params(3949, 189, 9), 3949, 3)
    sols = list(iter_solutions(problem))
    assert len(sols) == 2
    assert list(filter_autocorrelation(problem, sols)) == []


@pytest.mark.parametrize("params, w, t, count", [
    ((429, 108, 27), 143, 3, 14896),
    ((1545, 193, 24), 515, 8, 0),
])
def test_eliminate(params, w, t, count):
    r = eliminate_by_contraction(make_params(*params), w, t)
    assert r.verdict is Verdict.EXCLUDED
    assert r.witness["count"] == count and r.witness["survivors"] == 0


def test_616_count_is_cheap_but_filter_is_capped():
    problem = make_problem(make_params(616, 165, 44), 56, 11)
    assert count_solutions(problem) == 301485532
    r = eliminate_by_contraction(make_params(616, 165, 44), 56, 11)
    assert r.witness["count_exceeds"] == 10**6 and "count" not in r.witness
    assert r.verdict is Verdict.INAPPLICABLE


@pytest.mark.parametrize("params, w, t", [
    ((429, 108, 27), 143, 3),
    ((1056, 211, 42), 44, 13),
    ((2691, 270, 27), 299, 3),
    ((616, 165, 44), 56, 11),
    ((611, 245, 98), 47, 2),
])
@pytest.mark.parametrize("limit", [0, 1, 100, 14895, 14896, 10**6])
def test_count_upto_saturates(params, w, t, limit):
    problem = make_problem(make_params(*params), w, t)
    assert count_solutions_upto(problem, limit) == min(count_solutions(problem), limit + 1)


def test_non_multiplier_rejected():
    with pytest.raises(ValueError):
        eliminate_by_contraction(make_params(429, 108, 27), 143, 5)


@pytest.mark.parametrize("D, v, lam, expected", [
    ({1, 2, 4}, 7, 1, True),
    ({0, 1, 3}, 7, 1, True),
    ({0, 1, 2}, 7, 1, False),
])
def test_is_difference_set(D, v, lam, expected):
    assert is_difference_set(D, v, lam) is expected


def test_orbit_union_303():
    count, found = orbit_union_search(make_params(303, 151, 75), 16)
    assert (count, found) == (2772, [])


def test_orbit_union_fano():
    count, found = orbit_union_search(make_params(7, 3, 1), 2)
    assert frozenset({1, 2, 4}) in found and frozenset({3, 5, 6}) in found


def _brute_count(ps, w, t):
    problem = make_problem(ps, w, t)
    orbs = problem.search_orbits
    cap = problem.coefficient_cap
    n = 0
    for cs in itertools.product(range(cap + 1), repeat=len(orbs)):
        L = sum(c * len(o) for c, o in zip(cs, orbs))
        Q = sum(c * c * len(o) for c, o in zip(cs, orbs))
        n += L == problem.linear_target and Q == problem.square_target
    return n


small = [(31, 10, 3), (37, 9, 2), (40, 13, 4), (45, 12, 3), (56, 11, 2), (63, 31, 15), (21, 5, 1)]


@pytest.mark.parametrize("params", small)
def test_count_matches_product_enumeration(params):
    ps = make_params(*params)
    from diffsets.numtheory import divisors
    from diffsets.multipliers import smallest_w_multiplier

    for w in divisors(ps.v)[1:]:
        found = smallest_w_multiplier(w, ps.n)
        t = found[0] if found else 1
        problem = make_problem(ps, w, t)
        if (problem.coefficient_cap + 1) ** len(problem.search_orbits) > 2 * 10**5:
            continue
        assert count_solutions(problem) == _brute_count(ps, w, t)


@given(st.sampled_from(small), st.data())
@settings(max_examples=25, deadline=None)
def test_solutions_satisfy_linear_and_square(params, data):
    ps = make_params(*params)
    from diffsets.numtheory import divisors

    w = data.draw(st.sampled_from(divisors(ps.v)[1:]))
    problem = make_problem(ps, w, 1)
    if count_solutions(problem) > 5000:
        return
    for sol in iter_solutions(problem):
        b = np.array(sol.expand(problem))
        assert b.sum() == ps.k and (b * b).sum() == problem.square_target
        assert b.min() >= 0 and b.max() <= ps.v // w


@given(st.sampled_from([(7, 3, 1), (13, 4, 1), (11, 5, 2), (15, 7, 3), (21, 5, 1)]))
@settings(deadline=None)
def test_real_difference_set_contraction_survives(params):
    # contracting an actual difference set must give a surviving solution
    from diffsets.constructions import brute_force_search
    from diffsets.numtheory import divisors

    ps = make_params(*params)
    D = brute_force_search(*params, limit=1)[0]
    for w in divisors(ps.v)[1:]:
        problem = make_problem(ps, w, 1)
        b = [0] * w
        for x in D:
            b[x % w] += 1
        sol = ContractionSolution(tuple(b[o[0]] for o in problem.search_orbits))
        assert list(filter_autocorrelation(problem, [sol])) == [sol]
