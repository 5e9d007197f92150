"""Candidate (v, k, lambda) parameter sets and the families built from them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .numtheory import divisors


class InvalidParameters(ValueError):
    pass


@dataclass(frozen=True, order=True)
class ParamSet:
    """A normalized cyclic difference set candidate with k <= v/2.

    Ordering is by (k, v, lam), the order used in every survey table.
    """

    k: int
    v: int
    lam: int

    @property
    def n(self) -> int:
        return self.k - self.lam

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.v, self.k, self.lam)

    def __str__(self) -> str:
        return f"({self.v},{self.k},{self.lam})"


def complement(v: int, k: int, lam: int) -> tuple[int, int, int]:
    return v, v - k, v - 2 * k + lam


def make_params(v: int, k: int, lam: int) -> ParamSet:
    if min(v, k, lam) < 0:
        raise InvalidParameters(f"({v},{k},{lam}): parameters must be nonnegative")
    if lam * (v - 1) != k * (k - 1):
        raise InvalidParameters(
            f"({v},{k},{lam}) violates the counting identity "
            f"lambda*(v-1) = k*(k-1): {lam * (v - 1)} != {k * (k - 1)}"
        )
    if 2 * k > v:
        v, k, lam = complement(v, k, lam)
    if k >= v or lam >= k or lam < 1:
        raise InvalidParameters(f"({v},{k},{lam}) is degenerate")
    if k - lam < 2:
        raise InvalidParameters(f"({v},{k},{lam}) has order n = {k - lam} < 2")
    return ParamSet(k=k, v=v, lam=lam)


def enumerate_params(k_min: int, k_max: int) -> Iterator[ParamSet]:
    """Every valid normalized triple with k_min <= k <= k_max, ordered by (k, v)."""
    for k in range(max(k_min, 2), k_max + 1):
        m = k * (k - 1)
        found = []
        for lam in divisors(m):
            if lam >= k - 1:
                break
            v = m // lam + 1
            if 2 * k <= v:
                found.append(ParamSet(k=k, v=v, lam=lam))
        yield from sorted(found)


def hadamard_params(v: int) -> ParamSet:
    if v % 4 != 3 or v < 7:
        raise InvalidParameters(f"Hadamard parameters need v = 3 mod 4, v >= 7; got {v}")
    return ParamSet(k=(v - 1) // 2, v=v, lam=(v - 3) // 4)


def planar_params(n: int) -> ParamSet:
    if n < 2:
        raise InvalidParameters(f"planar order must be >= 2, got {n}")
    return ParamSet(k=n + 1, v=n * n + n + 1, lam=1)
