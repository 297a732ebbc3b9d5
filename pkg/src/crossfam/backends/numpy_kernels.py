"""Numba-free kernel implementations.

The search scans are vectorized numpy over blocks of candidate masks.
The compression fixed points instead run plain-int loops with a Python
set for membership: the families there are tiny (tens of members), so
per-call numpy overhead would dominate any vectorization win.

All masks are guaranteed sign-bit-free (grounds are capped at 63
elements, candidate masks at 2^22), so int64 arithmetic is safe
throughout.
"""

import numpy as np

if hasattr(np, "bitwise_count"):
    def _popcount(arr):
        return np.bitwise_count(arr).astype(np.int64)
else:  # numpy < 2.0
    _POP16 = np.array([bin(i).count("1") for i in range(1 << 16)], dtype=np.uint8)

    def _popcount(arr):
        a = np.asarray(arr, dtype=np.int64)
        return (_POP16[a & 0xFFFF].astype(np.int64)
                + _POP16[(a >> 16) & 0xFFFF]
                + _POP16[(a >> 32) & 0xFFFF]
                + _POP16[(a >> 48) & 0xFFFF])


def _weight(mask):
    """Sum of the elements of a set given as a bitmask."""
    w = 0
    pos = 1
    while mask:
        if mask & 1:
            w += pos
        mask >>= 1
        pos += 1
    return w


def _first_changing_pair(fams, n):
    """First (i, j), i < j lexicographic, whose compression changes any family."""
    for i in range(1, n):
        ib = 1 << (i - 1)
        for j in range(i + 1, n + 1):
            jb = 1 << (j - 1)
            for masks, present in fams:
                for m in masks:
                    if m & jb and not m & ib:
                        if ((m ^ jb) | ib) not in present:
                            return i, j
    return 0, 0


def _apply_pair(masks, present, ib, jb):
    new = []
    for m in masks:
        if m & jb and not m & ib:
            d = (m ^ jb) | ib
            new.append(m if d in present else d)
        else:
            new.append(m)
    new.sort()
    return new, set(new)


def _fixed_point_many(mask_lists, n):
    fams = [(sorted(int(m) for m in ms), None) for ms in mask_lists]
    fams = [(ms, set(ms)) for ms, _ in fams]
    pot = sum(sum(_weight(m) for m in ms) for ms, _ in fams)
    steps = []
    if n >= 2 and any(ms for ms, _ in fams):
        while True:
            i, j = _first_changing_pair(fams, n)
            if i == 0:
                break
            ib, jb = 1 << (i - 1), 1 << (j - 1)
            fams = [_apply_pair(ms, present, ib, jb) for ms, present in fams]
            new_pot = sum(sum(_weight(m) for m in ms) for ms, _ in fams)
            steps.append((i, j, pot, new_pot))
            pot = new_pot
    outs = [np.array(ms, dtype=np.int64) for ms, _ in fams]
    return outs, np.array(steps, dtype=np.int64).reshape(-1, 4)


def fixed_point(masks, n):
    """Drive one family to its left-compression fixed point.

    Returns (final sorted masks, steps), steps rows being
    (i, j, potential_before, potential_after).
    """
    outs, steps = _fixed_point_many([masks], int(n))
    return outs[0], steps


def fixed_point_pair(masks_a, masks_b, n):
    """Simultaneously drive two families to a joint fixed point."""
    outs, steps = _fixed_point_many([masks_a, masks_b], int(n))
    return outs[0], outs[1], steps


_CHUNK = 1 << 20


def scan_exhaustive(nonmeet, k):
    """Scan all 2^k subfamilies of the enumerated ground.

    ``nonmeet[t]`` is the bitmask of enumerated-ground indices whose member
    does NOT meet partner-ground member t.  A candidate mask admits partner
    member t iff mask & nonmeet[t] == 0.  Returns
    (best_product, best_mask, nodes).
    """
    nonmeet = np.asarray(nonmeet, dtype=np.int64)
    total = 1 << int(k)
    best = -1
    best_mask = 0
    for lo in range(0, total, _CHUNK):
        hi = min(lo + _CHUNK, total)
        amasks = np.arange(lo, hi, dtype=np.int64)
        partner = np.zeros(hi - lo, dtype=np.int64)
        for nm in nonmeet:
            partner += (amasks & nm) == 0
        prods = _popcount(amasks) * partner
        idx = int(np.argmax(prods))
        if int(prods[idx]) > best:
            best = int(prods[idx])
            best_mask = lo + idx
    return best, best_mask, total


def scan_galois(meets, k, full_partner):
    """Scan only Galois-closed subfamilies of the enumerated ground.

    ``meets[t]`` is the partner-side bitset of members met by enumerated
    member t; ``full_partner`` is the all-ones partner bitset.  Returns
    (best_product, best_mask, best_partner_bits, nodes) with nodes counting
    the closed candidates actually scored.
    """
    meets = np.asarray(meets, dtype=np.int64)
    k = int(k)
    total = 1 << k
    partner = np.empty(total, dtype=np.int64)
    partner[0] = full_partner
    for t in range(k):
        lo = 1 << t
        partner[lo:2 * lo] = partner[0:lo] & meets[t]
    amasks = np.arange(total, dtype=np.int64)
    not_closed = np.zeros(total, dtype=bool)
    for a in range(k):
        joins = (partner & ~meets[a]) == 0
        outside = (amasks >> a) & 1 == 0
        not_closed |= joins & outside
    prods = _popcount(amasks) * _popcount(partner)
    prods[not_closed] = -1
    idx = int(np.argmax(prods))
    nodes = int(total - np.count_nonzero(not_closed))
    return int(prods[idx]), int(idx), int(partner[idx]), nodes


_AC_CHUNK = 1 << 13


def scan_antichain(flat, offsets, ga, gb):
    """Score upward-closed candidates given by antichains of minimal members.

    Antichain t holds masks flat[offsets[t]:offsets[t+1]].  Its candidate
    family is the up-set of those masks inside ground ga; its partner count
    is the number of gb members meeting every antichain mask.  Returns
    (best_product, best_antichain_index, nodes).
    """
    flat = np.asarray(flat, dtype=np.int64)
    offsets = np.asarray(offsets, dtype=np.int64)
    ga = np.asarray(ga, dtype=np.int64)
    gb = np.asarray(gb, dtype=np.int64)
    n_ac = offsets.size - 1
    best = -1
    best_idx = 0
    for lo in range(0, n_ac, _AC_CHUNK):
        hi = min(lo + _AC_CHUNK, n_ac)
        offs = offsets[lo:hi + 1]
        lens = np.diff(offs)
        rows = hi - lo
        width = int(lens.max()) if rows else 0
        if width == 0:
            prods = np.zeros(rows, dtype=np.int64)
        else:
            mem = np.zeros((rows, width), dtype=np.int64)
            r_idx = np.repeat(np.arange(rows), lens)
            seg = flat[int(offs[0]):int(offs[-1])]
            c_idx = np.arange(seg.size) - np.repeat(offs[:-1] - offs[0], lens)
            mem[r_idx, c_idx] = seg
            valid = np.arange(width)[None, :] < lens[:, None]
            sup = (mem[:, None, :] & ~ga[None, :, None]) == 0
            sup &= valid[:, None, :]
            upset = sup.any(axis=2).sum(axis=1)
            miss = (mem[:, None, :] & gb[None, :, None]) == 0
            miss &= valid[:, None, :]
            partner = (~miss.any(axis=2)).sum(axis=1)
            prods = (upset * partner).astype(np.int64)
            prods[lens == 0] = 0
        if rows:
            idx = int(np.argmax(prods))
            if int(prods[idx]) > best:
                best = int(prods[idx])
                best_idx = lo + idx
    return best, best_idx, int(n_ac)
