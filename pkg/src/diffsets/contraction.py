"""Contracted-coefficient solving for a divisor w of v.

If D is a (v,k,lambda) difference set and b_i counts the elements of D
congruent to i mod w, then 0 <= b_i <= v/w and

    sum b_i = k,   sum b_i^2 = n + lambda*v/w,   sum_i b_i b_{i-j} = lambda*v/w  (j != 0).

A w-multiplier t forces b to be constant on the orbits of x -> t*x, so the
unknowns are one coefficient per orbit.  Solutions of the first two
equations are counted exactly by dynamic programming and enumerated by a
pruned depth-first search; the correlation equations are then checked on
batches with integer numpy arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import islice
from math import gcd, isqrt
from typing import Iterable, Iterator

import numpy as np

from .multipliers import OrbitStructure, is_w_multiplier, orbits
from .params import ParamSet
from .results import TestResult, Verdict

BATCH = 4096


@dataclass(frozen=True)
class ContractionProblem:
    params: ParamSet
    w: int
    t: int
    orbit_structure: OrbitStructure

    @property
    def linear_target(self) -> int:
        return self.params.k

    @property
    def correlation_target(self) -> int:
        return self.params.lam * self.params.v // self.w

    @property
    def square_target(self) -> int:
        return self.params.n + self.correlation_target

    @property
    def coefficient_cap(self) -> int:
        return self.params.v // self.w

    @property
    def search_orbits(self) -> list[tuple[int, ...]]:
        """Orbits in search order: size descending, then smallest element."""
        return sorted(self.orbit_structure.orbits, key=lambda o: (-len(o), o[0]))


def make_problem(ps: ParamSet, w: int, t: int) -> ContractionProblem:
    if w < 1 or ps.v % w:
        raise ValueError(f"w = {w} does not divide v = {ps.v}")
    if gcd(t, w) != 1:
        raise ValueError(f"gcd({t}, {w}) != 1")
    return ContractionProblem(ps, w, t % w if w > 1 else 0, orbits(t, w))


@dataclass(frozen=True)
class ContractionSolution:
    """One coefficient per orbit, aligned with ``problem.search_orbits``."""

    coefficients: tuple[int, ...]

    def expand(self, problem: ContractionProblem) -> list[int]:
        b = [0] * problem.w
        for c, orb in zip(self.coefficients, problem.search_orbits):
            for x in orb:
                b[x] = c
        return b


def _feasible(L: int, Q: int, S: int, cap: int) -> bool:
    """Whether sizes summing to S admit coefficients in [0, cap] hitting (L, Q)."""
    if L < 0 or Q < 0:
        return False
    if S == 0:
        return L == 0 and Q == 0
    return L * L <= S * Q and L <= cap * S and Q <= cap * L and (Q - L) % 2 == 0


def _candidates(s: int, L: int, Q: int, S_rest: int, cap: int) -> range:
    """Coefficient range for an orbit of size s, from Cauchy-Schwarz on the rest.

    The range is slightly loose; every value is re-checked by ``_feasible``.
    """
    if S_rest == 0:
        # the last orbit must use up both budgets exactly
        c = L // s
        return range(c, c - 1, -1) if L == s * c and Q == s * c * c and c <= cap else range(0)
    hi = min(cap, L // s, isqrt(Q // s))
    disc = s * S_rest * ((s + S_rest) * Q - L * L)
    if disc < 0:
        return range(0)
    r = isqrt(disc) + 1
    den = s * (s + S_rest)
    lo = max(0, (L * s - r) // den)
    hi = min(hi, -(-(L * s + r) // den))
    return range(hi, lo - 1, -1)


def _forward_states(problem: ContractionProblem) -> list[dict[tuple[int, int], int]]:
    """Per-orbit maps from remaining (linear, square) budget to path counts."""
    sizes = [len(o) for o in problem.search_orbits]
    cap = problem.coefficient_cap
    L0, Q0 = problem.linear_target, problem.square_target
    rest = sum(sizes)
    states = {(L0, Q0): 1} if _feasible(L0, Q0, rest, cap) else {}
    levels = [states]
    for s in sizes:
        rest -= s
        nxt: dict[tuple[int, int], int] = {}
        for (L, Q), cnt in states.items():
            for c in _candidates(s, L, Q, rest, cap):
                key = (L - s * c, Q - s * c * c)
                if _feasible(key[0], key[1], rest, cap):
                    nxt[key] = nxt.get(key, 0) + cnt
        states = nxt
        levels.append(states)
    return levels


def count_solutions(problem: ContractionProblem) -> int:
    """Exact number of orbit assignments solving the linear and square equations."""
    return _forward_states(problem)[-1].get((0, 0), 0)


def count_solutions_upto(problem: ContractionProblem, limit: int) -> int:
    """min(count, limit + 1), stopping as soon as the count passes ``limit``.

    A memoized depth-first count: when solutions are plentiful it saturates
    after visiting a small corner of the state space that ``count_solutions``
    would sweep entirely.
    """
    sizes = [len(o) for o in problem.search_orbits]
    m = len(sizes)
    if m > 500:  # keep clear of the recursion limit
        return min(count_solutions(problem), limit + 1)
    cap = problem.coefficient_cap
    rest = [0] * (m + 1)
    for i in range(m - 1, -1, -1):
        rest[i] = rest[i + 1] + sizes[i]
    sat = limit + 1
    memo: dict[tuple[int, int, int], int] = {}

    def go(i: int, L: int, Q: int) -> int:
        if i == m:
            return 1 if L == 0 and Q == 0 else 0
        key = (i, L, Q)
        if key in memo:
            return memo[key]
        s, total = sizes[i], 0
        for c in _candidates(s, L, Q, rest[i + 1], cap):
            L2, Q2 = L - s * c, Q - s * c * c
            if _feasible(L2, Q2, rest[i + 1], cap):
                total += go(i + 1, L2, Q2)
                if total >= sat:
                    total = sat
                    break
        memo[key] = total
        return total

    L0, Q0 = problem.linear_target, problem.square_target
    if not _feasible(L0, Q0, rest[0], cap):
        return 0
    return go(0, L0, Q0)


Edges = list[dict[tuple[int, int], list[int]]]


def _live_edges(problem: ContractionProblem) -> tuple[int, Edges]:
    """Exact count, and per orbit each reachable budget that can still reach
    the all-zero budget, mapped to its live coefficient choices (descending)."""
    sizes = [len(o) for o in problem.search_orbits]
    cap = problem.coefficient_cap
    rest = [0] * (len(sizes) + 1)
    for i in range(len(sizes) - 1, -1, -1):
        rest[i] = rest[i + 1] + sizes[i]
    levels = _forward_states(problem)
    count = levels[-1].get((0, 0), 0)
    edges: list[dict[tuple[int, int], list[int]]] = [{} for _ in sizes]
    nxt = {(0, 0)} & levels[-1].keys()
    for i in range(len(sizes) - 1, -1, -1):
        if not nxt:
            break
        s = sizes[i]
        for (L, Q) in levels[i]:
            cs = [c for c in _candidates(s, L, Q, rest[i + 1], cap) if (L - s * c, Q - s * c * c) in nxt]
            if cs:
                edges[i][(L, Q)] = cs
        nxt = edges[i].keys()
    return count, edges


def iter_solutions(problem: ContractionProblem) -> Iterator[ContractionSolution]:
    """Depth-first enumeration; orbit order as in ``search_orbits``, coefficients descending.

    Only budgets that can still be completed are entered, so the search never
    backtracks out of a dead subtree.
    """
    for coeffs in _iter_coefficients(problem):
        yield ContractionSolution(coeffs)


def _iter_coefficients(problem: ContractionProblem, edges: Edges | None = None) -> Iterator[tuple[int, ...]]:
    sizes = [len(o) for o in problem.search_orbits]
    m = len(sizes)
    if m == 0:
        return
    if edges is None:
        edges = _live_edges(problem)[1]
    start = (problem.linear_target, problem.square_target)
    if start not in edges[0]:
        return
    coeffs = [0] * m
    # explicit stack keeps deep orbit lists clear of the recursion limit
    stack = [iter(edges[0][start])]
    budget = [start]
    while stack:
        i = len(stack) - 1
        L, Q = budget[i]
        s = sizes[i]
        for c in stack[i]:
            coeffs[i] = c
            if i + 1 == m:
                yield tuple(coeffs)
                continue
            nxt = (L - s * c, Q - s * c * c)
            stack.append(iter(edges[i + 1][nxt]))
            budget.append(nxt)
            break
        else:
            stack.pop()
            budget.pop()


def solve_counts(problem: ContractionProblem) -> tuple[int, Iterator[ContractionSolution]]:
    return count_solutions(problem), iter_solutions(problem)


def _correlation_shifts(problem: ContractionProblem) -> list[int]:
    # the correlation is constant on multiplier orbits of the shift
    return [o[0] for o in problem.orbit_structure.orbits if o[0] != 0]


def filter_autocorrelation(
    problem: ContractionProblem, solutions: Iterable[ContractionSolution]
) -> Iterator[ContractionSolution]:
    """Keep the solutions whose expanded vector has the required correlations.

    Items may also be bare coefficient tuples (as used internally).
    """
    orbs = problem.search_orbits
    idx = np.empty(problem.w, dtype=np.intp)
    for i, orb in enumerate(orbs):
        idx[list(orb)] = i
    shifts = _correlation_shifts(problem)
    target = problem.correlation_target
    it = iter(solutions)
    while True:
        chunk = list(islice(it, BATCH))
        if not chunk:
            return
        coeffs = np.array([getattr(s, "coefficients", s) for s in chunk], dtype=np.int64).reshape(len(chunk), len(orbs))
        B = coeffs[:, idx]
        alive = np.arange(len(chunk))
        for j in shifts:
            Bj = B[alive]
            ok = (Bj * np.roll(Bj, j, axis=1)).sum(axis=1) == target
            alive = alive[ok]
            if alive.size == 0:
                break
        for a in alive:
            yield chunk[int(a)]


def eliminate_by_contraction(
    ps: ParamSet,
    w: int,
    t: int,
    solution_cap: int | None = 10**6,
) -> TestResult:
    """Run the contraction test for one (w, t).

    EXCLUDED when no solution of the linear and square equations passes the
    correlation filter.  If the count exceeds ``solution_cap`` the filter is
    skipped and the result is INAPPLICABLE; the witness then carries
    ``count_exceeds`` instead of the exact ``count``.
    """
    if t % w != 1 % w and not is_w_multiplier(t, w, ps.n):
        raise ValueError(f"{t} is not a {w}-multiplier for order {ps.n}")
    problem = make_problem(ps, w, t)
    witness = {
        "w": w,
        "t": problem.t,
        "orbit_sizes": [[s, c] for s, c in problem.orbit_structure.size_multiset.items()],
    }
    if solution_cap is not None and count_solutions_upto(problem, solution_cap) > solution_cap:
        # the exact count can cost far more than the filter is allowed to
        witness["count_exceeds"] = solution_cap
        witness["skipped"] = "solution cap"
        return TestResult("contraction", Verdict.INAPPLICABLE, witness)
    witness["count"], edges = _live_edges(problem)
    survivors = sum(1 for _ in filter_autocorrelation(problem, _iter_coefficients(problem, edges)))
    witness["survivors"] = survivors
    verdict = Verdict.EXCLUDED if survivors == 0 else Verdict.PASS
    return TestResult("contraction", verdict, witness)


def is_difference_set(D: Iterable[int], v: int, lam: int) -> bool:
    """Whether every nonzero residue mod v is a difference of D exactly lam times."""
    d = np.array(sorted({x % v for x in D}), dtype=np.int64)
    if d.size == 0:
        return False
    diffs = np.subtract.outer(d, d) % v
    counts = np.bincount(diffs.ravel(), minlength=v)
    return bool(counts[0] == d.size and np.all(counts[1:] == lam))


def orbit_union_search(ps: ParamSet, t: int) -> tuple[int, list[frozenset[int]]]:
    """Check every union of t-orbits mod v with total size k."""
    problem = make_problem(ps, ps.v, t)
    orbs = problem.search_orbits
    count = 0
    found = []
    for sol in iter_solutions(problem):
        count += 1
        D = frozenset(x for c, orb in zip(sol.coefficients, orbs) if c for x in orb)
        if is_difference_set(D, ps.v, ps.lam):
            found.append(D)
    return count, found
