"""Independent re-verification of exclusion witnesses.

Nothing here calls into the battery, contraction or planar modules; each
check re-derives the exclusion from the witness using a different (slower,
simpler) route: Legendre's criterion instead of Hilbert symbols, Euler's
criterion instead of Jacobi symbols, brute-force powering instead of
multiplicative orders, and plain recursion instead of the pruned solver.

``verify_result`` returns a list of problems; an empty list means the
witness holds up.
"""

from __future__ import annotations

from math import gcd, isqrt, lcm
from typing import Any

import numpy as np
from sympy import factorint

from .params import ParamSet
from .results import Certificate, TestResult

_BRUTE_ORDER_LIMIT = 10**7


def _primes(n: int) -> list[int]:
    return sorted(factorint(abs(n)))


def _order(a: int, m: int) -> int | None:
    """Multiplicative order by repeated multiplication (None if gcd > 1)."""
    if m == 1:
        return 1
    if gcd(a, m) != 1:
        return None
    if m > _BRUTE_ORDER_LIMIT:
        from sympy import n_order

        return int(n_order(a, m))
    x, j = a % m, 1
    while x != 1:
        x = x * a % m
        j += 1
    return j


def _powers_hit(g: int, target: int, m: int) -> bool:
    """Whether g^j = target (mod m) for some j >= 1, by walking powers."""
    if m == 1:
        return True
    if m > _BRUTE_ORDER_LIMIT:
        from sympy.ntheory import discrete_log

        try:
            discrete_log(m, target % m, g % m)
            return True
        except ValueError:
            return False
    x, start = g % m, g % m
    while True:
        if x == target % m:
            return True
        x = x * g % m
        if x == start:
            return False


def _is_multiplier(t: int, w: int, n: int) -> bool:
    if t % w == 1 % w:
        return True
    return all(gcd(q, w) == 1 and _powers_hit(q, t, w) for q in _primes(n))


# --- square classes ---------------------------------------------------------


def _squarefree(a: int) -> int:
    out = -1 if a < 0 else 1
    for p, e in factorint(abs(a)).items():
        if e % 2:
            out *= p
    return out


def _is_square_mod(x: int, m: int) -> bool:
    """x is a square modulo squarefree m (Euler's criterion prime by prime)."""
    for p in _primes(m):
        r = x % p
        if p == 2 or r == 0:
            continue
        if pow(r, (p - 1) // 2, p) != 1:
            return False
    return True


def legendre_solvable(a: int, b: int, c: int) -> bool:
    """Whether a x^2 + b y^2 + c z^2 = 0 has a nontrivial integer solution."""
    a, b, c = _squarefree(a), _squarefree(b), _squarefree(c)
    while True:
        g3 = gcd(gcd(a, b), c)
        a, b, c = a // g3, b // g3, c // g3
        for (x, y, z) in ((a, b, c), (b, c, a), (c, a, b)):
            g = gcd(x, y)
            if g > 1:
                # g | z^2 c' forces g | z; dividing through moves g onto c
                a, b, c = _squarefree(x // g), _squarefree(y // g), _squarefree(z * g)
                break
        else:
            break
    if (a > 0) == (b > 0) == (c > 0):
        return False
    return (
        _is_square_mod(-b * c, abs(a))
        and _is_square_mod(-c * a, abs(b))
        and _is_square_mod(-a * b, abs(c))
    )


# --- per-test checks --------------------------------------------------------


def _check_schutzenberger(ps: ParamSet, wt: dict) -> list[str]:
    r = isqrt(ps.n)
    return [] if ps.v % 2 == 0 and r * r != ps.n else ["v odd or n square"]


def _check_bcr(ps: ParamSet, wt: dict) -> list[str]:
    if ps.v % 2 == 0:
        return ["BCR applied to even v"]
    sign = (-1) ** ((ps.v - 1) // 2)
    if (wt.get("a"), wt.get("b")) != (ps.n, sign * ps.lam):
        return ["BCR coefficients do not match parameters"]
    if legendre_solvable(ps.n, sign * ps.lam, -1):
        return ["n x^2 + (-1)^((v-1)/2) lambda y^2 = z^2 is solvable"]
    return []


def _check_mann(ps: ParamSet, wt: dict) -> list[str]:
    w, p, j = wt["w"], wt["p"], wt["j"]
    out = []
    if w <= 1 or ps.v % w:
        out.append(f"w={w} is not a nontrivial divisor of v")
    if _primes(p) != [p] or ps.n % p or ps.n % (p * p) == 0:
        out.append(f"p={p} does not exactly divide n")
    if j < 1 or pow(p, j, w) != (w - 1) % w:
        out.append(f"{p}^{j} is not -1 mod {w}")
    return out


def _check_lms(ps: ParamSet, wt: dict) -> list[str]:
    p, a = wt["p"], wt["a"]
    if _primes(p) != [p] or p <= 3 or p**a != ps.n:
        return ["n is not a power of a prime > 3"]
    if gcd(ps.n, ps.v) != wt["gcd"] or wt["gcd"] <= 1:
        return ["gcd(n, v) is 1 or misreported"]
    return []


def brute_F(m: int, n: int) -> int:
    """F(m, n) by trying multiples of rad(m) dividing m in increasing order."""
    mf = factorint(m)
    rad = 1
    for p in mf:
        rad *= p
    qs = _primes(n)
    m_primes = sorted(mf)

    def m_q(q: int) -> int:
        if m % 2 == 1 or q == 2:
            out = 1
            for p in m_primes:
                if p != q:
                    out *= p
            return out
        out = 4
        for p in m_primes:
            if p not in (2, q):
                out *= p
        return out

    orders = {q: _order(q, m_q(q)) for q in qs}

    def ok(F: int) -> bool:
        for p, c in mf.items():
            b = 0
            while F % p ** (b + 1) == 0:
                b += 1
            for q in qs:
                if q == p and (p, b) != (2, 1):
                    continue
                if b == c:
                    continue
                if q != p:
                    o = orders[q]
                    if o is not None and pow(q, o, p ** (b + 1)) != 1:
                        continue
                return False
        return True

    cands = sorted(d for d in _divisors(m) if d % rad == 0)
    for F in cands:
        if ok(F):
            return F
    return m


def _divisors(m: int) -> list[int]:
    out = [1]
    for p, e in factorint(m).items():
        out = [d * p**i for d in out for i in range(e + 1)]
    return out


def _totient(m: int) -> int:
    out = m
    for p in _primes(m):
        out = out // p * (p - 1)
    return out


def _check_schmidt(ps: ParamSet, wt: dict) -> list[str]:
    F = brute_F(ps.v, ps.n)
    out = []
    if F != wt["F"]:
        out.append(f"F recomputes to {F}, witness says {wt['F']}")
    if not 4 * ps.n * _totient(F) > F * F:
        out.append(f"bound holds for F={F}")
    return out


def _check_arasu(ps: ParamSet, wt: dict) -> list[str]:
    p, w = wt["p"], wt["w"]
    v, n = ps.v, ps.n
    r = isqrt(n)
    if gcd(v, ps.k) != 1 or r * r == n or n % p or gcd(p, v) != 1:
        return ["Arasu preconditions fail"]
    if w <= 1 or v % w or (v // w) % 2 == 0:
        return [f"w={w} unsuitable"]
    if not _is_multiplier(p, v, n):
        return [f"{p} is not a multiplier mod {v}"]
    x = w * v * (-1) ** ((v // w - 1) // 2)
    # gcd(p, v) = 1 so x is a p-adic unit
    if p == 2:
        square = x % 8 == 1
    else:
        square = pow(x % p, (p - 1) // 2, p) == 1
    return [f"{x} is a {p}-adic square"] if square else []


def _orbits(t: int, w: int) -> list[list[int]]:
    seen, out = set(), []
    for x in range(w):
        if x in seen:
            continue
        orb, y = [], x
        while y not in orb:
            orb.append(y)
            y = y * t % w
        seen.update(orb)
        out.append(orb)
    return out


def contraction_solutions(ps: ParamSet, w: int, t: int) -> np.ndarray:
    """Every orbit-constant b with sum k and sum of squares n + lambda v/w, as rows."""
    orbs = sorted(_orbits(t, w), key=len, reverse=True)
    cap, L, Q = ps.v // w, ps.k, ps.n + ps.lam * ps.v // w
    sols: list[tuple[int, ...]] = []
    coeffs = [0] * len(orbs)
    room = [0] * (len(orbs) + 1)  # orbit sizes still to assign
    for i in range(len(orbs) - 1, -1, -1):
        room[i] = room[i + 1] + len(orbs[i])
    dead: set[tuple[int, int, int]] = set()

    def rec(i: int, l: int, q: int) -> bool:
        # remaining sums: every c in [0, cap] has c <= c^2 <= cap*c and
        # c^2 = c mod 2, and (sum c)^2 <= (number of terms) * sum c^2
        dl, dq = L - l, Q - q
        if dl < 0 or dq < dl or dq > cap * dl or dl > cap * room[i] or (dq - dl) % 2:
            return False
        if dl * dl > room[i] * dq:
            return False
        if i == len(orbs):
            sols.append(tuple(coeffs))
            return True
        if (i, l, q) in dead:
            return False
        s, hit = len(orbs[i]), False
        if i == len(orbs) - 1:
            # last orbit: the linear equation fixes c
            c, r = divmod(dl, s)
            if r or c > cap or s * c * c != dq:
                return False
            coeffs[i] = c
            sols.append(tuple(coeffs))
            return True
        for c in range(min(cap, dl // s, isqrt(dq // s)) + 1):
            coeffs[i] = c
            hit |= rec(i + 1, l + s * c, q + s * c * c)
        if not hit:
            dead.add((i, l, q))
        return hit

    rec(0, 0, 0)
    idx = np.empty(w, dtype=np.intp)
    for i, orb in enumerate(orbs):
        idx[orb] = i
    return np.array(sols, dtype=np.int64).reshape(len(sols), len(orbs))[:, idx]


def _correlation_survivors(B: np.ndarray, target: int) -> int:
    """Rows whose cyclic autocorrelation equals target at every nonzero shift."""
    alive = B
    for j in range(1, B.shape[1]):
        if alive.shape[0] == 0:
            break
        alive = alive[(alive * np.roll(alive, j, axis=1)).sum(axis=1) == target]
    return alive.shape[0]


def _check_contraction(ps: ParamSet, wt: dict, recount_limit: int) -> list[str]:
    w, t = wt["w"], wt["t"]
    if w < 1 or ps.v % w or gcd(t, w) != 1:
        return [f"bad (w, t) = ({w}, {t})"]
    if not _is_multiplier(t, w, ps.n):
        return [f"{t} is not a {w}-multiplier"]
    if wt["count"] > recount_limit:
        return [f"count {wt['count']} above recount limit {recount_limit}"]
    B = contraction_solutions(ps, w, t)
    out = []
    if B.shape[0] != wt["count"]:
        out.append(f"recount gives {B.shape[0]}, witness says {wt['count']}")
    survivors = _correlation_survivors(B, ps.lam * ps.v // w)
    if survivors:
        out.append(f"{survivors} solutions pass every correlation")
    return out


def _check_evans_mann(ps: ParamSet, wt: dict) -> list[str]:
    v, n = ps.v, ps.n
    qs = _primes(n)
    ts = wt["t"]
    out = []
    for t, ex in zip(ts, wt["exponents"]):
        val = 1
        for q, e in zip(qs, ex):
            val = val * pow(q, e, v) % v
        if val != t:
            out.append(f"{t} is not the product {list(zip(qs, ex))} mod {v}")
    t1, t2, t3, t4 = ts
    if t1 == t3 or (t1, t2) == (t3, t4):
        out.append("degenerate quadruple")
    d = (t1 - t2) % v
    if d != (t3 - t4) % v or d != wt["d"]:
        out.append("differences do not agree")
    d2 = (t1 - t3) % v
    if d2 != wt["d2"]:
        out.append("d2 misreported")
    if lcm(d, d2) % v == 0:
        out.append("v divides the lcm")
    return out


def verify_result(ps: ParamSet, result: TestResult, recount_limit: int = 10**6) -> list[str]:
    """Problems with an EXCLUDED result's witness (empty list = verified)."""
    wt: dict[str, Any] = result.witness
    name = result.test_name
    try:
        if name == "schutzenberger":
            return _check_schutzenberger(ps, wt)
        if name == "bcr":
            return _check_bcr(ps, wt)
        if name == "mann":
            return _check_mann(ps, wt)
        if name == "lms":
            return _check_lms(ps, wt)
        if name == "schmidt_bound":
            return _check_schmidt(ps, wt)
        if name == "arasu":
            return _check_arasu(ps, wt)
        if name == "contraction":
            return _check_contraction(ps, wt, recount_limit)
        if name == "evans_mann":
            return _check_evans_mann(ps, wt)
    except KeyError as exc:
        return [f"witness lacks {exc}"]
    return [f"no checker for {name!r}"]


def verify_certificate(cert: Certificate, recount_limit: int = 10**6) -> list[str]:
    out = []
    for r in cert.results:
        if r.excluded:
            out += [f"{r.test_name}: {msg}" for msg in verify_result(cert.params, r, recount_limit)]
    return out
