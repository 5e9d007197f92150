"""Necessary-condition tests for cyclic difference sets and their orchestrator.

Each test returns a :class:`TestResult` whose witness is enough to redo the
exclusion by hand; :mod:`diffsets.witness` does exactly that.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import gcd

from .constructions import known_construction
from .contraction import eliminate_by_contraction
from .multipliers import is_w_multiplier, smallest_w_multiplier
from .numtheory import (
    factor,
    is_padic_unit_square,
    is_square,
    mult_order,
    ternary_failing_place,
    totient,
)
from .params import ParamSet
from .results import Certificate, TestResult, Verdict

EXCLUDED, PASS, INAPPLICABLE = Verdict.EXCLUDED, Verdict.PASS, Verdict.INAPPLICABLE


def test_schutzenberger(ps: ParamSet) -> TestResult:
    if ps.v % 2:
        return TestResult("schutzenberger", INAPPLICABLE)
    verdict = PASS if is_square(ps.n) else EXCLUDED
    return TestResult("schutzenberger", verdict, {"n": ps.n})


def bcr_coefficients(ps: ParamSet) -> tuple[int, int]:
    sign = -1 if ((ps.v - 1) // 2) % 2 else 1
    return ps.n, sign * ps.lam


def test_bcr(ps: ParamSet) -> TestResult:
    if ps.v % 2 == 0:
        return TestResult("bcr", INAPPLICABLE)
    a, b = bcr_coefficients(ps)
    place = ternary_failing_place(a, b)
    if place is None:
        return TestResult("bcr", PASS, {"a": a, "b": b})
    return TestResult("bcr", EXCLUDED, {"a": a, "b": b, "place": place})


def mann_witness(v: int, n: int) -> tuple[int, int, int] | None:
    """(w, p, j) with w | v, p exactly dividing n and p^j = -1 mod w.

    Scans w from largest to smallest and p from largest to smallest; j is the
    least such exponent.
    """
    primes = [p for p, e in factor(n).factors if e == 1]
    if not primes:
        return None
    for w in reversed(factor_divisors(v)):
        if w == 1:
            break
        for p in reversed(primes):
            if gcd(p, w) != 1:
                continue
            if w == 2:
                return w, p, 1
            order = mult_order(p, w)
            if order % 2 == 0 and pow(p, order // 2, w) == w - 1:
                return w, p, order // 2
    return None


def factor_divisors(m: int) -> list[int]:
    from .numtheory import divisors

    return divisors(m)


def test_mann(ps: ParamSet) -> TestResult:
    found = mann_witness(ps.v, ps.n)
    if found is None:
        return TestResult("mann", PASS)
    w, p, j = found
    return TestResult("mann", EXCLUDED, {"w": w, "p": p, "j": j})


def test_lms(ps: ParamSet) -> TestResult:
    fac = factor(ps.n).factors
    g = gcd(ps.n, ps.v)
    if len(fac) == 1 and fac[0][0] > 3 and g > 1:
        p, a = fac[0]
        return TestResult("lms", EXCLUDED, {"p": p, "a": a, "gcd": g})
    return TestResult("lms", INAPPLICABLE)


def arasu_value(v: int, w: int) -> int:
    sign = -1 if ((v // w - 1) // 2) % 2 else 1
    return w * v * sign


def test_arasu(ps: ParamSet, p: int, w: int) -> TestResult:
    """Arasu's p-adic square condition for one prime p | n and divisor w > 1 of v."""
    v, n = ps.v, ps.n
    if (
        gcd(v, ps.k) != 1
        or is_square(n)
        or n % p
        or gcd(p, v) != 1
        or w <= 1
        or v % w
        or (v // w) % 2 == 0
        or not is_w_multiplier(p, v, n)
    ):
        return TestResult("arasu", INAPPLICABLE)
    x = arasu_value(v, w)
    verdict = PASS if is_padic_unit_square(x, p) else EXCLUDED
    return TestResult("arasu", verdict, {"p": p, "w": w, "value": x})


def test_arasu_scan(ps: ParamSet) -> TestResult:
    """Every prime p of n and every divisor w > 1 of v; first exclusion wins."""
    v, n = ps.v, ps.n
    if gcd(v, ps.k) != 1 or is_square(n):
        return TestResult("arasu", INAPPLICABLE)
    applied = False
    for p in factor(n).primes:
        if gcd(p, v) != 1 or not is_w_multiplier(p, v, n):
            continue
        for w in factor_divisors(v)[1:]:
            r = test_arasu(ps, p, w)
            if r.verdict is EXCLUDED:
                return r
            applied = applied or r.verdict is PASS
    return TestResult("arasu", PASS if applied else INAPPLICABLE)


@dataclass(frozen=True)
class FDescriptor:
    m: int
    n: int
    exponents: tuple[tuple[int, int], ...]  # (p_i, b_i)

    @property
    def value(self) -> int:
        out = 1
        for p, b in self.exponents:
            out *= p**b
        return out


def _m_q(m_primes: list[int], m: int, q: int) -> int:
    out = 1
    if m % 2 == 1 or q == 2:
        for p in m_primes:
            if p != q:
                out *= p
        return out
    out = 4
    for p in m_primes:
        if p not in (2, q):
            out *= p
    return out


def compute_F(m: int, n: int) -> FDescriptor:
    """Field-descent modulus: least exponents b_i <= c_i meeting every (p_i, q) condition."""
    mf = factor(m).factors
    m_primes = [p for p, _ in mf]
    qs = factor(n).primes
    # ord_{m_q}(q), one per prime q of n; None when the order is undefined.
    # Only q^ord modulo small prime powers is needed, never q^ord itself.
    q_ord = {}
    for q in qs:
        mq = _m_q(m_primes, m, q)
        if mq == 1:
            q_ord[q] = 1
        elif gcd(q, mq) != 1:
            q_ord[q] = None
        else:
            q_ord[q] = mult_order(q, mq)
    exps = []
    for p, c in mf:
        for b in range(1, c + 1):
            if all(_pair_ok(p, b, c, q, q_ord[q]) for q in qs):
                break
        exps.append((p, b))
    return FDescriptor(m, n, tuple(exps))


def _pair_ok(p: int, b: int, c: int, q: int, q_ord: int | None) -> bool:
    if q == p and (p, b) != (2, 1):
        return True
    if b == c:
        return True
    return q != p and q_ord is not None and pow(q, q_ord, p ** (b + 1)) != 1


def test_schmidt_bound(ps: ParamSet) -> TestResult:
    F = compute_F(ps.v, ps.n).value
    phi = totient(F)
    verdict = EXCLUDED if 4 * ps.n * phi > F * F else PASS
    return TestResult("schmidt_bound", verdict, {"F": F, "phi": phi})


def test_contraction(ps: ParamSet, config: "BatteryConfig") -> TestResult:
    """Contraction over divisors w of v (ascending, w <= w_max)."""
    attempts = []
    n_fact = factor(ps.n)
    for w in factor_divisors(ps.v)[1:]:
        if w > config.w_max:
            break
        if w in config.multiplier_overrides:
            t = config.multiplier_overrides[w]
        else:
            found = smallest_w_multiplier(w, n_fact)
            if found is not None:
                t = found[0]
            elif w <= config.trivial_w_max:
                t = 1
            else:
                continue
        r = eliminate_by_contraction(ps, w, t, solution_cap=config.solution_cap)
        if r.verdict is EXCLUDED:
            return r
        attempts.append({k: r.witness[k] for k in ("w", "t", "count", "count_exceeds") if k in r.witness})
    if not attempts:
        return TestResult("contraction", INAPPLICABLE)
    return TestResult("contraction", PASS, {"attempts": attempts})


DEFAULT_ORDER = ("schutzenberger", "lms", "mann", "bcr", "schmidt_bound", "arasu")

_SIMPLE_TESTS = {
    "schutzenberger": test_schutzenberger,
    "lms": test_lms,
    "mann": test_mann,
    "bcr": test_bcr,
    "schmidt_bound": test_schmidt_bound,
    "arasu": test_arasu_scan,
}


@dataclass(frozen=True)
class BatteryConfig:
    tests: tuple[str, ...] = DEFAULT_ORDER
    contraction: bool = True
    full: bool = False
    w_max: int = 1000
    trivial_w_max: int = 10
    solution_cap: int | None = 10**6
    multiplier_overrides: dict[int, int] = field(default_factory=dict)
    lookup_constructions: bool = True

    def __hash__(self) -> int:
        return hash((self.tests, self.contraction, self.full, self.w_max))


def run_battery(ps: ParamSet, config: BatteryConfig | None = None) -> Certificate:
    config = config or BatteryConfig()
    start = time.perf_counter()
    cert = Certificate(ps)
    for name in config.tests:
        if name not in _SIMPLE_TESTS:
            raise ValueError(f"unknown test {name!r}")
        cert.results.append(_SIMPLE_TESTS[name](ps))
        if cert.results[-1].excluded and not config.full:
            break
    if config.contraction and (config.full or cert.excluded_by is None):
        cert.results.append(test_contraction(ps, config))
    if config.lookup_constructions:
        tag = known_construction(ps)
        cert.construction = tag.value if tag else None
    cert.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return cert
