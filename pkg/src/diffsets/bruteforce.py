"""Exhaustive search for small cyclic difference sets (v <= 63).

Sets are 64-bit masks.  The search fixes {0, 1} inside D (every nonzero
residue, 1 included, is a difference of D, so some translate contains 0 and
1) and adds elements in increasing order.  Two prunings keep it exhaustive:

* difference counts never exceed lambda, and a candidate z is only offered
  if no difference z - c (c already chosen) is saturated;
* coverage: with r elements still to place, each can add at most two new
  pairs at distance d, and only if its neighbours at distance d are still
  available, so an unreachable lambda at some d cuts the branch;
* affine canonicity: for each pair (c, c') in the prefix P with c' - c a
  unit u, the map x -> (x - c)/u sends the same design to another one
  containing {0, 1}.  If that image beats P in the order "smallest element
  of the symmetric difference belongs to the smaller set", P cannot be the
  prefix of the least representative of its affine class, so it is cut.

Only least representatives are returned; every (v, k, lambda) design is
affinely equivalent to one of them.
"""

from __future__ import annotations

from math import gcd

import numba
import numpy as np

_ONE = np.uint64(1)


@numba.njit(cache=True, inline="always")
def _rot(x, c, v, full):
    # {a + c mod v : a in x}
    if c == 0:
        return x
    return ((x << np.uint64(c)) | (x >> np.uint64(v - c))) & full


@numba.njit(cache=True, inline="always")
def _lowbit(x):
    return x & (~x + np.uint64(1))


@numba.njit(cache=True, inline="always")
def _popcount(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return (x * np.uint64(0x0101010101010101)) >> np.uint64(56)


@numba.njit(cache=True, inline="always")
def _scale(x, table, u, nbytes):
    out = np.uint64(0)
    for j in range(nbytes):
        out |= table[u, j, (x >> np.uint64(8 * j)) & np.uint64(255)]
    return out


@numba.njit(cache=True)
def _canonical(chosen, m, P, y, v, full, uinv, table, nbytes, imgs):
    """Check every pair of the prefix chosen[:m+1] (y = chosen[m] is new).

    imgs[m, a, b] holds the image of chosen[:m] under the pair (a, b); the
    image for the longer prefix only gains the image of y.
    """
    below = (_ONE << np.uint64(y + 1)) - _ONE
    for a in range(m + 1):
        ca = chosen[a]
        T = np.uint64(0)
        for b in range(m + 1):
            if a == b:
                continue
            ui = uinv[(chosen[b] - ca) % v]
            if ui == 0:
                continue
            if a < m and b < m:
                img = imgs[m, a, b] | (_ONE << np.uint64(ui * (y - ca) % v))
            else:
                if T == 0:
                    T = _rot(P, (v - ca) % v, v, full)
                img = _scale(T, table, ui, nbytes)
            imgs[m + 1, a, b] = img
            A = img & ~P & below
            if A == 0:
                continue
            B = P & ~img
            if B == 0 or _lowbit(A) < _lowbit(B):
                return False
    return True


@numba.njit(cache=True)
def _search(v, k, lam, limit, out, uinv, table, nbytes):
    full = (_ONE << np.uint64(v)) - _ONE
    counts = np.zeros(v, np.int64)
    chosen = np.zeros(k, np.int64)
    cand = np.zeros(k + 1, np.uint64)
    imgs = np.zeros((k + 1, k, k), np.uint64)
    chosen[0] = 0
    chosen[1] = 1
    counts[1] += 1
    counts[v - 1] += 1
    if counts[1] > lam or counts[v - 1] > lam:
        return 0, 0
    P = np.uint64(3)
    # x -> x and x -> 1 - x both send {0, 1} to itself
    imgs[2, 0, 1] = P
    imgs[2, 1, 0] = P
    sat = np.uint64(0)
    for d in range(1, v):
        if counts[d] == lam:
            sat |= _ONE << np.uint64(d)
    nfound = 0
    nodes = 0
    m = 2
    # candidates for position m: above the last element, no saturated difference
    forb = np.uint64(0)
    for i in range(m):
        forb |= _rot(sat, chosen[i], v, full)
    cand[m] = full & ~forb & ~((_ONE << np.uint64(2)) - _ONE)
    while m >= 2:
        if m == k or cand[m] == 0 or _popcount(cand[m]) < k - m:
            # backtrack: remove chosen[m-1]
            m -= 1
            if m < 2:
                break
            y = chosen[m]
            P &= ~(_ONE << np.uint64(y))
            for i in range(m):
                c = chosen[i]
                d1 = (y - c) % v
                d2 = (c - y) % v
                if counts[d1] == lam:
                    sat &= ~(_ONE << np.uint64(d1))
                if counts[d2] == lam:
                    sat &= ~(_ONE << np.uint64(d2))
                counts[d1] -= 1
                counts[d2] -= 1
            continue
        lb = _lowbit(cand[m])
        cand[m] &= ~lb
        y = 0
        while (_ONE << np.uint64(y)) != lb:
            y += 1
        nodes += 1
        ok = True
        for i in range(m):
            c = chosen[i]
            counts[(y - c) % v] += 1
            counts[(c - y) % v] += 1
        for i in range(m):
            c = chosen[i]
            if counts[(y - c) % v] > lam:
                ok = False
        if ok:
            P |= lb
            chosen[m] = y
            if not _canonical(chosen, m, P, y, v, full, uinv, table, nbytes, imgs):
                ok = False
                P &= ~lb
        if not ok:
            for i in range(m):
                c = chosen[i]
                counts[(y - c) % v] -= 1
                counts[(c - y) % v] -= 1
            continue
        chosen[m] = y
        for i in range(m):
            c = chosen[i]
            for d in ((y - c) % v, (c - y) % v):
                if counts[d] == lam:
                    sat |= _ONE << np.uint64(d)
        m += 1
        if m == k:
            if nfound < out.shape[0]:
                out[nfound, :] = chosen
            nfound += 1
            if limit > 0 and nfound >= limit:
                return nfound, nodes
            continue
        forb = np.uint64(0)
        for i in range(m):
            forb |= _rot(sat, chosen[i], v, full)
        above = ~((_ONE << np.uint64(y + 1)) - _ONE)
        cand[m] = full & ~forb & ~P & above
        # D lies inside S = prefix + candidates.  Each of the r elements still
        # to come adds at most [z-d in S] + [z+d in S] new pairs at distance d.
        c = cand[m]
        S = P | c
        r = k - m
        for d in range(1, v // 2 + 1):
            need = lam - counts[d]
            if need <= 0:
                continue
            lo = _rot(S, d, v, full)
            hi = _rot(S, v - d, v, full)
            two = _popcount(c & lo & hi)
            one = _popcount(c & (lo | hi)) - two
            t2 = two if two < r else r
            t1 = one if one < r - t2 else r - t2
            if 2 * t2 + t1 < need:
                cand[m] = np.uint64(0)
                break
    return nfound, nodes


def _tables(v: int) -> tuple[np.ndarray, np.ndarray, int]:
    nbytes = (v + 7) // 8
    uinv = np.zeros(v, np.int64)
    for u in range(1, v):
        if gcd(u, v) == 1:
            uinv[u] = pow(u, -1, v)
    table = np.zeros((v, nbytes, 256), np.uint64)
    for u in range(1, v):
        if gcd(u, v) != 1:
            continue
        for j in range(nbytes):
            for byte in range(256):
                acc = 0
                for bit in range(8):
                    x = 8 * j + bit
                    if byte >> bit & 1 and x < v:
                        acc |= 1 << (u * x % v)
                table[u, j, byte] = acc
    return uinv, table, nbytes


def canonical_search(v: int, k: int, lam: int, limit: int = 0, max_report: int = 1000) -> tuple[list[list[int]], int, int]:
    """(least representatives found, total number found, nodes visited).

    ``limit`` > 0 stops after that many representatives.
    """
    if not 2 <= k < v <= 63:
        raise ValueError("need 2 <= k < v <= 63")
    uinv, table, nbytes = _tables(v)
    out = np.zeros((max_report, k), np.int64)
    nfound, nodes = _search(v, k, lam, limit, out, uinv, table, nbytes)
    sets = [sorted(int(x) for x in row) for row in out[: min(nfound, max_report)]]
    return sets, int(nfound), int(nodes)
