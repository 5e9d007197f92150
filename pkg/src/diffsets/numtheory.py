"""Integer and modular arithmetic shared by the nonexistence tests.

Factoring, primality and multiplicative orders are delegated to sympy, whose
routines are deterministic on 64-bit inputs.  Hilbert symbols and local
square tests are implemented here.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt
from typing import Union

import sympy
from sympy.ntheory import n_order

REAL = "inf"
"""Marker for the real (archimedean) place in Hilbert symbol calls."""

Place = Union[int, str]


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def value(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0


def factor(n: int) -> Factorization:
    if n < 1:
        raise ValueError(f"factor() needs n >= 1, got {n}")
    return Factorization(n, tuple(sorted(sympy.factorint(n).items())))


def is_prime(n: int) -> bool:
    return n >= 2 and bool(sympy.isprime(n))


def is_prime_power(n: int) -> bool:
    return n >= 2 and len(factor(n).factors) == 1


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    return [int(d) for d in sympy.divisors(n)]


def mult_order(a: int, m: int) -> int:
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    if gcd(a, m) != 1:
        raise ValueError(f"gcd({a}, {m}) != 1; order undefined")
    return int(n_order(a % m, m))


def totient(m: int) -> int:
    if m < 1:
        raise ValueError(f"totient() needs m >= 1, got {m}")
    out = m
    for p, _ in factor(m).factors:
        out = out // p * (p - 1)
    return out


def jacobi(a: int, m: int) -> int:
    """Jacobi symbol (a/m) for odd positive m."""
    if m < 1 or m % 2 == 0:
        raise ValueError(f"Jacobi symbol needs odd positive modulus, got {m}")
    a %= m
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if m % 8 in (3, 5):
                result = -result
        a, m = m, a
        if a % 4 == 3 and m % 4 == 3:
            result = -result
        a %= m
    return result if m == 1 else 0


def _split(a: int, p: int) -> tuple[int, int]:
    """Write a = p^alpha * u with p not dividing u."""
    alpha = 0
    while a % p == 0:
        a //= p
        alpha += 1
    return alpha, a


def hilbert_symbol(a: int, b: int, place: Place) -> int:
    """Hilbert symbol (a, b) at a prime ``place`` or at ``REAL``."""
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol arguments must be nonzero")
    if place == REAL:
        return -1 if a < 0 and b < 0 else 1
    p = int(place)
    alpha, u = _split(a, p)
    beta, v = _split(b, p)
    if p == 2:
        eps = lambda x: ((x - 1) // 2) % 2  # noqa: E731
        omega = lambda x: ((x * x - 1) // 8) % 2  # noqa: E731
        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    return sign * jacobi(u, p) ** beta * jacobi(v, p) ** alpha


def squarefree_part(a: int) -> int:
    """Signed squarefree kernel: a divided by its largest square factor."""
    if a == 0:
        raise ValueError("squarefree_part(0) is undefined")
    out = -1 if a < 0 else 1
    for p, e in factor(abs(a)).factors:
        if e % 2:
            out *= p
    return out


def relevant_places(a: int, b: int) -> list[Place]:
    primes = set(factor(abs(2 * a * b)).primes)
    return [REAL, *sorted(primes)]


def ternary_failing_place(a: int, b: int) -> Place | None:
    """First place where aX^2 + bY^2 = Z^2 has no nontrivial local solution."""
    a, b = squarefree_part(a), squarefree_part(b)
    for place in relevant_places(a, b):
        if hilbert_symbol(a, b, place) == -1:
            return place
    return None


def ternary_solvable(a: int, b: int) -> bool:
    """Whether aX^2 + bY^2 = Z^2 has a nontrivial integer solution.

    Decided by Hasse-Minkowski: the local symbols at the real place and at
    every prime dividing 2ab must all be +1.
    """
    return ternary_failing_place(a, b) is None


def is_padic_unit_square(u: int, p: int) -> bool:
    """Whether the p-adic unit u is a square in Z_p."""
    if u % p == 0:
        raise ValueError(f"{u} is not a {p}-adic unit")
    if p == 2:
        return u % 8 == 1
    return jacobi(u % p, p) == 1
