"""Contracted (w-)multipliers and the orbits they induce on Z_w."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import gcd

from sympy.ntheory import discrete_log

from .numtheory import Factorization, factor


@dataclass(frozen=True)
class OrbitStructure:
    w: int
    t: int
    orbits: tuple[tuple[int, ...], ...]
    size_multiset: dict[int, int] = field(compare=False)

    @property
    def orbit_of(self) -> list[int]:
        """Index of the orbit containing each residue 0..w-1."""
        idx = [0] * self.w
        for i, orb in enumerate(self.orbits):
            for x in orb:
                idx[x] = i
        return idx

    def size_string(self) -> str:
        """Orbit sizes written as ``size^count``, e.g. ``1^1 3^4 5^2 15^8``."""
        return " ".join(f"{s}^{c}" for s, c in sorted(self.size_multiset.items()))


def orbits(t: int, w: int) -> OrbitStructure:
    """Partition Z_w into orbits of x -> t*x, sorted by minimum element."""
    if w < 1 or gcd(t, w) != 1:
        raise ValueError(f"gcd({t}, {w}) != 1")
    t %= w
    seen = bytearray(w)
    out = []
    for x in range(w):
        if seen[x]:
            continue
        orb = []
        y = x
        while not seen[y]:
            seen[y] = 1
            orb.append(y)
            y = y * t % w
        out.append(tuple(orb))
    sizes = Counter(len(o) for o in out)
    return OrbitStructure(w, t, tuple(out), dict(sorted(sizes.items())))


def is_w_multiplier(t: int, w: int, n_fact: Factorization | int) -> bool:
    """Whether every prime of the order n has a power congruent to t mod w.

    Such t is a w-multiplier of any (v,k,lambda) difference set of order n
    with w | v.
    """
    if gcd(t, w) != 1:
        raise ValueError(f"gcd({t}, {w}) != 1")
    if isinstance(n_fact, int):
        n_fact = factor(n_fact)
    target = t % w
    for p in n_fact.primes:
        if gcd(p, w) != 1:
            return False
        if not _in_cyclic_subgroup(p % w, target, w):
            return False
    return True


def _in_cyclic_subgroup(g: int, target: int, w: int) -> bool:
    """Whether target = g^j mod w for some j >= 1."""
    if w == 1:
        return True
    try:
        discrete_log(w, target % w, g % w)
    except ValueError:
        return False
    return True


def smallest_w_multiplier(w: int, n_fact: Factorization | int) -> tuple[int, OrbitStructure] | None:
    """The least t in [2, w) that is a w-multiplier, with its orbits."""
    if isinstance(n_fact, int):
        n_fact = factor(n_fact)
    if any(gcd(p, w) != 1 for p in n_fact.primes):
        return None
    # the multiplier group mod w is the intersection of the cyclic groups <p_i>
    groups = [_cyclic_subgroup(p % w, w) for p in n_fact.primes]
    common = set.intersection(*groups) if groups else set()
    for t in sorted(common):
        if t >= 2:
            return t, orbits(t, w)
    return None


def _cyclic_subgroup(g: int, w: int) -> set[int]:
    out = {1 % w}
    x = g % w
    while x not in out:
        out.add(x)
        x = x * g % w
    return out
