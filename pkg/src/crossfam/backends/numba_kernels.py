"""Numba @njit kernel implementations (default backend).

Same contracts and the same deterministic enumeration orders as
``numpy_kernels``; see that module for the docstrings.  Masks stay below
2^63, so plain int64 arithmetic is safe everywhere.
"""

import numpy as np
from numba import njit

_M1 = 0x5555555555555555
_M2 = 0x3333333333333333
_M4 = 0x0F0F0F0F0F0F0F0F
_H01 = 0x0101010101010101


@njit(cache=True, inline="always")
def _popcount(x):
    x = x - ((x >> 1) & _M1)
    x = (x & _M2) + ((x >> 2) & _M2)
    x = (x + (x >> 4)) & _M4
    return (x * _H01) >> 56


@njit(cache=True, inline="always")
def _weight(m):
    w = 0
    pos = 1
    while m:
        if m & 1:
            w += pos
        m >>= 1
        pos += 1
    return w


@njit(cache=True)
def _total_weight(masks):
    tot = 0
    for t in range(masks.size):
        tot += _weight(masks[t])
    return tot


@njit(cache=True, inline="always")
def _contains(sorted_masks, v):
    pos = np.searchsorted(sorted_masks, v)
    return pos < sorted_masks.size and sorted_masks[pos] == v


@njit(cache=True)
def _has_mover(masks, other_sorted, ib, jb):
    for t in range(masks.size):
        m = masks[t]
        if m & jb != 0 and m & ib == 0:
            if not _contains(other_sorted, (m ^ jb) | ib):
                return True
    return False


@njit(cache=True)
def _apply_pair(masks, ib, jb):
    new = np.empty_like(masks)
    for t in range(masks.size):
        m = masks[t]
        if m & jb != 0 and m & ib == 0:
            d = (m ^ jb) | ib
            new[t] = m if _contains(masks, d) else d
        else:
            new[t] = m
    return np.sort(new)


@njit(cache=True)
def fixed_point(masks, n):
    cur = np.sort(masks)
    pot = _total_weight(cur)
    steps = np.empty((pot + 1, 4), dtype=np.int64)
    ns = 0
    if cur.size > 0 and n >= 2:
        while True:
            fi = 0
            fj = 0
            for i in range(1, n):
                ib = 1 << (i - 1)
                for j in range(i + 1, n + 1):
                    jb = 1 << (j - 1)
                    if _has_mover(cur, cur, ib, jb):
                        fi = i
                        fj = j
                        break
                if fi != 0:
                    break
            if fi == 0:
                break
            cur = _apply_pair(cur, 1 << (fi - 1), 1 << (fj - 1))
            new_pot = _total_weight(cur)
            steps[ns, 0] = fi
            steps[ns, 1] = fj
            steps[ns, 2] = pot
            steps[ns, 3] = new_pot
            ns += 1
            pot = new_pot
    return cur, steps[:ns].copy()


@njit(cache=True)
def fixed_point_pair(masks_a, masks_b, n):
    cur_a = np.sort(masks_a)
    cur_b = np.sort(masks_b)
    pot = _total_weight(cur_a) + _total_weight(cur_b)
    steps = np.empty((pot + 1, 4), dtype=np.int64)
    ns = 0
    if (cur_a.size > 0 or cur_b.size > 0) and n >= 2:
        while True:
            fi = 0
            fj = 0
            for i in range(1, n):
                ib = 1 << (i - 1)
                for j in range(i + 1, n + 1):
                    jb = 1 << (j - 1)
                    if _has_mover(cur_a, cur_a, ib, jb) or _has_mover(cur_b, cur_b, ib, jb):
                        fi = i
                        fj = j
                        break
                if fi != 0:
                    break
            if fi == 0:
                break
            ib = 1 << (fi - 1)
            jb = 1 << (fj - 1)
            cur_a = _apply_pair(cur_a, ib, jb)
            cur_b = _apply_pair(cur_b, ib, jb)
            new_pot = _total_weight(cur_a) + _total_weight(cur_b)
            steps[ns, 0] = fi
            steps[ns, 1] = fj
            steps[ns, 2] = pot
            steps[ns, 3] = new_pot
            ns += 1
            pot = new_pot
    return cur_a, cur_b, steps[:ns].copy()


@njit(cache=True)
def scan_exhaustive(nonmeet, k):
    total = 1 << k
    best = -1
    best_mask = 0
    for amask in range(total):
        partner = 0
        for t in range(nonmeet.size):
            if amask & nonmeet[t] == 0:
                partner += 1
        prod = _popcount(amask) * partner
        if prod > best:
            best = prod
            best_mask = amask
    return best, best_mask, total


@njit(cache=True)
def scan_galois(meets, k, full_partner):
    total = 1 << k
    best = -1
    best_mask = 0
    best_partner = 0
    nodes = 0
    for amask in range(total):
        partner = full_partner
        rest = amask
        while rest:
            low = rest & -rest
            partner &= meets[_popcount(low - 1)]
            rest ^= low
        closed = True
        for a in range(k):
            if (amask >> a) & 1 == 0 and partner & ~meets[a] == 0:
                closed = False
                break
        if not closed:
            continue
        nodes += 1
        prod = _popcount(amask) * _popcount(partner)
        if prod > best:
            best = prod
            best_mask = amask
            best_partner = partner
    return best, best_mask, best_partner, nodes


@njit(cache=True)
def scan_antichain(flat, offsets, ga, gb):
    n_ac = offsets.size - 1
    best = -1
    best_idx = 0
    for t in range(n_ac):
        lo = offsets[t]
        hi = offsets[t + 1]
        if lo == hi:
            prod = 0
        else:
            upset = 0
            for gi in range(ga.size):
                g = ga[gi]
                for p in range(lo, hi):
                    if flat[p] & ~g == 0:
                        upset += 1
                        break
            partner = 0
            for bi in range(gb.size):
                b = gb[bi]
                ok = True
                for p in range(lo, hi):
                    if flat[p] & b == 0:
                        ok = False
                        break
                if ok:
                    partner += 1
            prod = upset * partner
        if prod > best:
            best = prod
            best_idx = t
    return best, best_idx, n_ac
