"""Prime Power Conjecture checks for cyclic projective planes.

For a planar (n^2+n+1, n+1, 1) difference set every prime divisor of n is a
numerical multiplier (the classical First Multiplier Theorem), so the
multipliers include the subgroup H of units mod v generated by those primes.
If t1 - t2 = t3 - t4 (mod v) for multipliers with t1 != t3, then v must
divide lcm(t1 - t2, t1 - t3).  A quadruple violating this rules the order
out.  Candidate quadruples come from a hash table keyed by small
differences t1 - t2 (mod v); a collision supplies the second pair.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from math import gcd, lcm
from typing import Iterator

from .battery import BatteryConfig, run_battery
from .numtheory import factor, is_prime_power
from .params import planar_params
from .results import Certificate, TestResult, Verdict

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class MultiplierGroup:
    """Subgroup of (Z/v)^* generated by the primes dividing n."""

    n: int
    v: int
    generators: tuple[int, ...]

    def elements(self) -> Iterator[tuple[int, tuple[int, ...]]]:
        """Breadth-first walk from 1, yielding (element, exponent vector).

        Each element equals prod(g_i ** e_i) mod v.  The walk multiplies
        queued elements by the generators in ascending order.
        """
        zero = (0,) * len(self.generators)
        seen = {1 % self.v}
        queue = [(1 % self.v, zero)]
        yield queue[0]
        i = 0
        while i < len(queue):
            x, ex = queue[i]
            i += 1
            for gi, g in enumerate(self.generators):
                y = x * g % self.v
                if y in seen:
                    continue
                seen.add(y)
                ey = ex[:gi] + (ex[gi] + 1,) + ex[gi + 1 :]
                queue.append((y, ey))
                yield y, ey

    def order(self, max_elements: int = 10**6) -> int | None:
        """Group order, or None if it exceeds ``max_elements``."""
        count = 0
        for _ in self.elements():
            count += 1
            if count > max_elements:
                return None
        return count

    def element(self, exponents: tuple[int, ...]) -> int:
        out = 1 % self.v
        for g, e in zip(self.generators, exponents):
            out = out * pow(g, e, self.v) % self.v
        return out


def multiplier_group(n: int, v: int | None = None) -> MultiplierGroup:
    if v is None:
        v = n * n + n + 1
    gens = factor(n).primes
    for p in gens:
        if gcd(p, v) != 1:
            raise ValueError(f"prime {p} of n = {n} divides v = {v}")
    return MultiplierGroup(n, v, gens)


@dataclass(frozen=True)
class ContradictionWitness:
    n: int
    v: int
    t1: int
    t2: int
    t3: int
    t4: int
    d: int
    d2: int
    lcm_value: int
    exponents: tuple[tuple[int, ...], ...] = field(default=())

    def as_dict(self) -> dict:
        return {
            "t": [self.t1, self.t2, self.t3, self.t4],
            "d": self.d,
            "d2": self.d2,
            "lcm": self.lcm_value,
            "exponents": [list(e) for e in self.exponents],
        }


def collision_search(
    n: int,
    difference_bound: int = 10**6,
    budget: int = 2 * 10**7,
    capacity: int = 10**7,
) -> ContradictionWitness | None:
    """Evans-Mann collision search without the prime-power precondition.

    ``budget`` caps the number of (t_i, t_j) pairs examined and ``capacity``
    the number of differences stored (first writer wins).
    """
    group = multiplier_group(n)
    v = group.v
    seen: list[tuple[int, tuple[int, ...]]] = []
    table: dict[int, tuple[int, int]] = {}
    examined = 0
    for y, ey in group.elements():
        for j, (z, _) in enumerate(seen):
            for a, b, ia, ib in ((y, z, -1, j), (z, y, j, -1)):
                examined += 1
                d = (a - b) % v
                if d >= difference_bound:
                    continue
                prev = table.get(d)
                if prev is None:
                    if len(table) < capacity:
                        table[d] = (ia if ia >= 0 else len(seen), ib if ib >= 0 else len(seen))
                    continue
                t1, t2 = _seen_or(prev[0], seen, y), _seen_or(prev[1], seen, y)
                if t1 == a:
                    continue
                d2 = (t1 - a) % v
                m = lcm(d, d2)
                if m % v:
                    exps = (
                        _exps_of(prev[0], seen, ey),
                        _exps_of(prev[1], seen, ey),
                        ey if ia < 0 else seen[ia][1],
                        ey if ib < 0 else seen[ib][1],
                    )
                    return ContradictionWitness(n, v, t1, t2, a, b, d, d2, m, exps)
            if examined >= budget:
                return None
        seen.append((y, ey))
    return None


def _seen_or(index: int, seen: list, current: int) -> int:
    return seen[index][0] if index < len(seen) else current


def _exps_of(index: int, seen: list, current: tuple[int, ...]) -> tuple[int, ...]:
    return seen[index][1] if index < len(seen) else current


def evans_mann_search(
    n: int,
    difference_bound: int = 10**6,
    budget: int = 2 * 10**7,
    capacity: int = 10**7,
) -> ContradictionWitness | None:
    """First Evans-Mann contradiction for a non-prime-power order n.

    Prime-power orders are consistent with the conjecture and return None
    without searching.
    """
    if is_prime_power(n):
        return None
    return collision_search(n, difference_bound, budget, capacity)


@dataclass(frozen=True)
class PPCConfig:
    battery: BatteryConfig = field(default_factory=lambda: BatteryConfig(contraction=False))
    initial_bound: int = 10**6
    max_bound: int = 2 * 10**9
    budget: int = 2 * 10**7
    capacity: int = 10**7


@dataclass
class PPCRow:
    n: int
    certificate: Certificate

    @property
    def eliminated_by(self) -> str:
        """"battery:<test>", "evans_mann" or "SURVIVOR"."""
        hit = self.certificate.excluded_by
        if hit is None:
            return "SURVIVOR"
        return hit.test_name if hit.test_name == "evans_mann" else f"battery:{hit.test_name}"

    @property
    def witness(self) -> dict:
        hit = self.certificate.excluded_by
        return hit.witness if hit is not None else self.certificate.results[-1].witness

    @property
    def survivor(self) -> bool:
        return self.certificate.excluded_by is None


def check_order(n: int, config: PPCConfig | None = None) -> PPCRow:
    """Battery on the planar parameters, then escalating Evans-Mann searches."""
    config = config or PPCConfig()
    start = time.perf_counter()
    cert = run_battery(planar_params(n), config.battery)
    if cert.excluded_by is None:
        bound = config.initial_bound
        while True:
            w = evans_mann_search(n, bound, config.budget, config.capacity)
            if w is not None:
                cert.results.append(TestResult("evans_mann", Verdict.EXCLUDED, {"bound": bound, **w.as_dict()}))
                break
            if bound >= config.max_bound or bound >= n * n + n + 1:
                log.info("order %d survives up to difference bound %d", n, bound)
                cert.results.append(TestResult("evans_mann", Verdict.PASS, {"bound": bound}))
                break
            bound *= 2
    cert.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return PPCRow(n, cert)


def ppc_scan(n_min: int, n_max: int, config: PPCConfig | None = None) -> list[PPCRow]:
    """Check every non-prime-power order in [n_min, n_max]."""
    config = config or PPCConfig()
    return [check_order(n, config) for n in range(max(n_min, 2), n_max + 1) if not is_prime_power(n)]
