"""Known cyclic difference set families and an exhaustive finder.

These are ground truth for the nonexistence tests: a test that excludes
parameters realized here is wrong.
"""

from __future__ import annotations

from enum import Enum
from itertools import product

from .contraction import is_difference_set
from .numtheory import is_prime, jacobi
from .params import ParamSet


class KnownFamilyTag(str, Enum):
    QR_PRIME = "QR_PRIME"
    TWIN_PRIME = "TWIN_PRIME"
    MERSENNE_MSEQ = "MERSENNE_MSEQ"
    SINGER = "SINGER"
    BRUTE_FORCE = "BRUTE_FORCE"


def _checked(D: set[int], v: int, k: int, lam: int) -> frozenset[int]:
    if len(D) != k or not is_difference_set(D, v, lam):
        raise AssertionError(f"construction failed to give a ({v},{k},{lam}) difference set")
    return frozenset(D)


def qr_set(p: int) -> frozenset[int]:
    """Nonzero squares mod a prime p = 3 mod 4 (Paley)."""
    if not is_prime(p) or p % 4 != 3 or p < 7:
        raise ValueError(f"need a prime p = 3 mod 4, p >= 7; got {p}")
    D = {x * x % p for x in range(1, p)}
    return _checked(D, p, (p - 1) // 2, (p - 3) // 4)


def twin_prime_set(p: int) -> frozenset[int]:
    """Twin-prime construction mod p(p+2)."""
    q = p + 2
    if not (is_prime(p) and is_prime(q)):
        raise ValueError(f"{p} and {p + 2} are not both prime")
    v = p * q
    D = {x for x in range(v) if x % q == 0}
    D |= {x for x in range(v) if jacobi(x, p) * jacobi(x, q) == 1}
    return _checked(D, v, (v - 1) // 2, (v - 3) // 4)


# primitive trinomials/pentanomials over GF(2), as exponent lists below the leading term
_PRIMITIVE = {
    3: (1, 0),
    4: (1, 0),
    5: (2, 0),
    6: (1, 0),
    7: (1, 0),
    8: (4, 3, 2, 0),
    9: (4, 0),
    10: (3, 0),
    11: (2, 0),
    12: (6, 4, 1, 0),
    13: (4, 3, 1, 0),
}


def mseq_set(m: int) -> frozenset[int]:
    """Zero positions of one period of a maximal-length binary sequence of degree m."""
    if m not in _PRIMITIVE:
        raise ValueError(f"m must be in [3, 13], got {m}")
    v = 2**m - 1
    taps = _PRIMITIVE[m]
    # s_{i+m} = sum of s_{i+e} over the lower terms x^e of the polynomial
    s = [1] + [0] * (m - 1)
    while len(s) < v:
        i = len(s) - m
        s.append(sum(s[i + e] for e in taps) % 2)
    D = {i for i, bit in enumerate(s) if not bit}
    return _checked(D, v, 2 ** (m - 1) - 1, 2 ** (m - 2) - 1)


def _polymulmod(a: list[int], b: list[int], mod: list[int], q: int) -> list[int]:
    """Product of degree<3 polynomials modulo a monic cubic (low-order first)."""
    prod = [0] * 5
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] += x * y
    for d in (4, 3):
        c = prod[d] % q
        if c:
            for e in range(3):
                prod[d - 3 + e] -= c * mod[e]
        prod[d] = 0
    return [x % q for x in prod[:3]]


def _irreducible_cubic(q: int) -> list[int]:
    # a cubic is irreducible over GF(q) iff it has no root
    for c0, c1, c2 in product(range(q), repeat=3):
        if c0 and all((x**3 + c2 * x * x + c1 * x + c0) % q for x in range(q)):
            return [c0, c1, c2]
    raise AssertionError("unreachable: irreducible cubics exist over every prime field")


def singer_set(q: int) -> frozenset[int]:
    """Singer planar difference set of prime order q, from GF(q^3)."""
    if not is_prime(q) or q > 50:
        raise ValueError(f"need a prime q <= 50, got {q}")
    v = q * q + q + 1
    mod = _irreducible_cubic(q)
    N = q**3 - 1
    for cand in product(range(q), repeat=3):
        g = list(cand)
        if not any(g[1:]):
            continue
        # walk powers of g; keep g if it is primitive
        x = [1, 0, 0]
        hits = []
        for i in range(N):
            if x[2] == 0:
                hits.append(i)
            x = _polymulmod(x, g, mod, q)
            if x == [1, 0, 0] and i + 1 < N:
                break
        else:
            D = {i % v for i in hits}
            return _checked(D, v, q + 1, 1)
    raise AssertionError("no primitive element found")


def brute_force_search(v: int, k: int, lam: int, limit: int | None = None) -> list[frozenset[int]]:
    """Difference sets with these parameters, one per affine class.

    Exhaustive: the result is empty iff no (v,k,lam) difference set exists.
    Each returned set contains {0, 1} and is the least member of its class
    under x -> u*x + c; see :mod:`diffsets.bruteforce`.
    """
    from .bruteforce import canonical_search

    if v > 60:
        raise ValueError("brute force limited to v <= 60")
    if not 2 < k < v - 1:
        return []
    sets, _, _ = canonical_search(v, k, lam, limit or 0)
    return [_checked(set(D), v, k, lam) for D in sets]


def naive_search(v: int, k: int, lam: int, limit: int | None = None) -> list[frozenset[int]]:
    """All k-subsets of Z_v containing 0 that are (v,k,lam) difference sets.

    Plain backtracking without symmetry reduction; only for small v.
    """
    if v > 60:
        raise ValueError("brute force limited to v <= 60")
    found: list[frozenset[int]] = []
    if k > v or k < 1:
        return found
    counts = [0] * v
    chosen = [0]

    def add(x: int) -> bool:
        ok = True
        touched = []
        for y in chosen:
            for d in ((x - y) % v, (y - x) % v):
                counts[d] += 1
                touched.append(d)
                if counts[d] > lam:
                    ok = False
        if not ok:
            for d in touched:
                counts[d] -= 1
        return ok

    def remove(x: int) -> None:
        for y in chosen:
            counts[(x - y) % v] -= 1
            counts[(y - x) % v] -= 1

    def extend(start: int) -> bool:
        if len(chosen) == k:
            found.append(frozenset(chosen))
            return limit is not None and len(found) >= limit
        for x in range(start, v - (k - len(chosen)) + 1):
            if add(x):
                chosen.append(x)
                stop = extend(x + 1)
                chosen.pop()
                remove(x)
                if stop:
                    return True
        return False

    extend(1)
    return [D for D in found if is_difference_set(D, v, lam)]


def known_construction(ps: ParamSet) -> KnownFamilyTag | None:
    """A family from this module realizing the parameters, if one applies."""
    v, k, lam = ps.v, ps.k, ps.lam
    if 4 * lam + 3 == v and 2 * k + 1 == v:
        if is_prime(v):
            return KnownFamilyTag.QR_PRIME
        if (v + 1) & v == 0:
            return KnownFamilyTag.MERSENNE_MSEQ
        r = _isqrt_plus1(v)
        if r is not None and is_prime(r - 1) and is_prime(r + 1):
            return KnownFamilyTag.TWIN_PRIME
    if lam == 1 and is_prime(k - 1):
        return KnownFamilyTag.SINGER
    return None


def _isqrt_plus1(v: int) -> int | None:
    """r with r^2 = v + 1, if any (v = p(p+2) gives r = p + 1)."""
    from math import isqrt

    r = isqrt(v + 1)
    return r if r * r == v + 1 else None
