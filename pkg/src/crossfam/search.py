"""Exact maximization of size products over cross-intersecting families.

Given grounds G and H, the task is the exact maximum of |A||B| over all
cross-intersecting A inside G and B inside H.  Three exact strategies,
picked by ground size:

* subset-exhaustive: enumerate every subfamily of the smaller ground;
  for each, the best partner (all members of the other ground meeting
  everything chosen) is counted directly.
* galois-closed: same enumeration, but candidates that are not closed
  under partner-of-partner are skipped; only closed pairs can be maximal.
* antichain-closed: any closed candidate is upward-closed inside its
  ground, hence determined by the antichain of its minimal members, so
  only antichains of ground members are enumerated (7581 such for the
  full power set of [5]).

All three agree with the naive all-pairs enumeration, which is kept as
an independent oracle.  Bounds from the verified product theorems are
attached whenever both grounds are hereditary and compressed; exceeding
one aborts loudly, since that would contradict a proven statement.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from math import prod

import numpy as np

from . import backends
from .errors import (
    BoundViolationError, BudgetExceededError, IdentityViolationError,
    ParameterError,
)
from .families import (
    GroundSpec, SetFamily, as_family, bounded_family, is_hereditary,
    popcount, star, star_size_bound,
)
from .hereditary import enumerate_antichains, subset_leq

__all__ = [
    "SearchResult", "KSearchResult", "STRATEGIES", "resolve_budget",
    "best_partner", "galois_closure", "max_product_pair",
    "max_product_pair_naive", "max_product_k",
    "verify_theorem1", "verify_theorem4", "verify_corollary3",
    "verify_theorem5", "pairwise_to_k_product",
]

STRATEGIES = ("subset-exhaustive", "galois-closed", "antichain-closed")

_STRATEGY_ALIASES = {
    "exhaustive": "subset-exhaustive",
    "galois": "galois-closed",
    "antichain": "antichain-closed",
}

DEFAULT_BUDGET = 1 << 24

#: Ground-size tiers of the automatic strategy ladder.
EXHAUSTIVE_TIER = 16
GALOIS_TIER = 22
GALOIS_PARTNER_CAP = 63


def resolve_budget(budget=None) -> int:
    """Explicit argument, else CROSSFAM_BUDGET, else the default."""
    if budget is None:
        raw = os.environ.get("CROSSFAM_BUDGET", "").strip()
        if not raw:
            return DEFAULT_BUDGET
        try:
            budget = int(raw)
        except ValueError:
            raise ParameterError(f"CROSSFAM_BUDGET={raw!r} is not an integer")
    budget = int(budget)
    if budget < 1:
        raise ParameterError("budget must be a positive integer")
    return budget


@dataclass(frozen=True)
class SearchResult:
    max_product: int
    witness_a: SetFamily
    witness_b: SetFamily
    bound: int | None
    equality: bool | None
    nodes_explored: int
    strategy: str


@dataclass(frozen=True)
class KSearchResult:
    max_product: int
    witnesses: tuple[SetFamily, ...]
    bound: int | None
    equality: bool | None


def best_partner(a: SetFamily, ground) -> SetFamily:
    """Largest subfamily of the ground cross-intersecting with a.

    Empty a admits the whole ground; an empty-set member in a admits nothing.
    """
    g = as_family(ground)
    out = []
    for bm in g.member_bits:
        if all(bm & am for am in a.member_bits):
            out.append(bm)
    return SetFamily(g.ground_n, tuple(out))


def galois_closure(a: SetFamily, ground_a, ground_b) -> SetFamily:
    """best_partner twice: the largest family equivalent to a as a constraint."""
    return best_partner(best_partner(a, ground_b), ground_a)


def _star1_size(f: SetFamily) -> int:
    return len(star(f, 1)) if f.ground_n >= 1 else 0


def _is_verification_ground(ground) -> bool:
    if isinstance(ground, GroundSpec):
        if ground.kind == "bounded":
            return True
        ground = ground.family()
    from .compression import is_compressed
    return is_hereditary(ground) and is_compressed(ground)


def _subfamily(f: SetFamily, index_mask: int) -> SetFamily:
    bits = [m for t, m in enumerate(f.member_bits) if index_mask >> t & 1]
    return SetFamily(f.ground_n, tuple(bits))


def _nonmeet_index_masks(targets: SetFamily, enum: SetFamily) -> np.ndarray:
    """For each target member, the bitmask of enum indices it does NOT meet."""
    out = np.zeros(len(targets), dtype=np.int64)
    for s, bm in enumerate(targets.member_bits):
        acc = 0
        for t, am in enumerate(enum.member_bits):
            if am & bm == 0:
                acc |= 1 << t
        out[s] = acc
    return out


def _meet_index_masks(sources: SetFamily, targets: SetFamily) -> np.ndarray:
    """For each source member, the bitset of target indices it meets."""
    out = np.zeros(len(sources), dtype=np.int64)
    for t, am in enumerate(sources.member_bits):
        acc = 0
        for s, bm in enumerate(targets.member_bits):
            if am & bm:
                acc |= 1 << s
        out[t] = acc
    return out


def _upset_within(ground: SetFamily, antichain) -> SetFamily:
    bits = [m for m in ground.member_bits
            if any(sub & ~m == 0 for sub in antichain)]
    return SetFamily(ground.ground_n, tuple(bits))


def max_product_pair(ground_a, ground_b, strategy: str = "auto",
                     budget=None) -> SearchResult:
    """Exact maximum of |A||B| over cross-intersecting A, B in the two grounds."""
    fa = as_family(ground_a)
    fb = as_family(ground_b)
    budget = resolve_budget(budget)
    strat = _STRATEGY_ALIASES.get(strategy, strategy)
    if strat == "auto":
        small, large = min(len(fa), len(fb)), max(len(fa), len(fb))
        if small <= EXHAUSTIVE_TIER:
            strat = "subset-exhaustive"
        elif small <= GALOIS_TIER and large <= GALOIS_PARTNER_CAP:
            strat = "galois-closed"
        else:
            strat = "antichain-closed"
    if strat not in STRATEGIES:
        raise ParameterError(f"unknown strategy {strategy!r}")

    swap = len(fb) < len(fa)
    enum_f, part_f = (fb, fa) if swap else (fa, fb)
    kern = backends.kernels()

    if strat == "subset-exhaustive":
        k = len(enum_f)
        if k > 62:
            raise ParameterError("subset-exhaustive needs an enumerated side <= 62")
        if 1 << k > budget:
            raise BudgetExceededError(
                f"subset-exhaustive needs 2^{k} candidates, budget is {budget}")
        nonmeet = _nonmeet_index_masks(part_f, enum_f)
        best, amask, nodes = kern.scan_exhaustive(nonmeet, k)
        wit_enum = _subfamily(enum_f, int(amask))
        wit_part = best_partner(wit_enum, part_f)
    elif strat == "galois-closed":
        k = len(enum_f)
        ps = len(part_f)
        if k > 62:
            raise ParameterError("galois-closed needs an enumerated side <= 62")
        if ps > GALOIS_PARTNER_CAP:
            raise ParameterError(
                f"galois-closed needs the partner side <= {GALOIS_PARTNER_CAP} members")
        if 1 << k > budget:
            raise BudgetExceededError(
                f"galois-closed needs 2^{k} candidates, budget is {budget}")
        meets = _meet_index_masks(enum_f, part_f)
        best, amask, pbits, nodes = kern.scan_galois(meets, k, (1 << ps) - 1)
        wit_enum = _subfamily(enum_f, int(amask))
        wit_part = _subfamily(part_f, int(pbits))
    else:  # antichain-closed
        flat: list[int] = []
        offsets = [0]
        antichains = []
        for ac in enumerate_antichains(enum_f.member_bits, subset_leq,
                                       limit=budget):
            antichains.append(ac)
            flat.extend(ac)
            offsets.append(len(flat))
        best, idx, nodes = kern.scan_antichain(
            np.array(flat, dtype=np.int64), np.array(offsets, dtype=np.int64),
            np.array(enum_f.member_bits, dtype=np.int64),
            np.array(part_f.member_bits, dtype=np.int64))
        wit_enum = _upset_within(enum_f, antichains[int(idx)])
        wit_part = best_partner(wit_enum, part_f)

    best = int(best)
    if len(wit_enum) * len(wit_part) != best:
        raise IdentityViolationError(
            f"witness product {len(wit_enum)}*{len(wit_part)} != scanned best {best}")
    wa, wb = (wit_part, wit_enum) if swap else (wit_enum, wit_part)

    bound = equality = None
    if _is_verification_ground(ground_a) and _is_verification_ground(ground_b):
        bound = _star1_size(fa) * _star1_size(fb)
        if best > bound:
            raise BoundViolationError(
                f"search found {best} above the proven bound {bound}")
        equality = best == bound
    return SearchResult(max_product=best, witness_a=wa, witness_b=wb,
                        bound=bound, equality=equality,
                        nodes_explored=int(nodes), strategy=strat)


def max_product_pair_naive(ground_a, ground_b, budget=None) -> tuple:
    """Oracle: enumerate all 2^|G| * 2^|H| subfamily pairs directly.

    Independent of the kernel scans; used to cross-check them.  Returns
    (max_product, witness_a, witness_b).
    """
    fa = as_family(ground_a)
    fb = as_family(ground_b)
    budget = resolve_budget(budget)
    la, lb = len(fa), len(fb)
    if 1 << (la + lb) > budget:
        raise BudgetExceededError(
            f"naive enumeration needs 2^{la + lb} pairs, budget is {budget}")
    nonmeet = [0] * la
    for t, am in enumerate(fa.member_bits):
        for s, bm in enumerate(fb.member_bits):
            if am & bm == 0:
                nonmeet[t] |= 1 << s
    best = -1
    best_pair = (0, 0)
    for amask in range(1 << la):
        blocked = 0
        for t in range(la):
            if amask >> t & 1:
                blocked |= nonmeet[t]
        asize = popcount(amask)
        for bmask in range(1 << lb):
            if bmask & blocked:
                continue
            p = asize * popcount(bmask)
            if p > best:
                best = p
                best_pair = (amask, bmask)
    return best, _subfamily(fa, best_pair[0]), _subfamily(fb, best_pair[1])


def max_product_k(grounds, budget=None) -> KSearchResult:
    """Exact maximum of the size product over k pairwise cross-intersecting families.

    The first k-1 grounds are enumerated exhaustively (with pairwise
    filtering); the last side is always completed to its best partner.
    """
    fams = [as_family(g) for g in grounds]
    if len(fams) < 2:
        raise ParameterError("need at least two grounds")
    budget = resolve_budget(budget)
    if len(fams) == 2:
        res = max_product_pair(fams[0], fams[1], budget=budget)
        refs = [_is_verification_ground(g) for g in grounds]
        bound = res.bound if all(refs) else None
        return KSearchResult(res.max_product, (res.witness_a, res.witness_b),
                             bound, res.equality if bound is not None else None)

    k = len(fams)
    sizes = [len(f) for f in fams]
    cost = prod(1 << s for s in sizes[:-1])
    if cost > budget:
        raise BudgetExceededError(
            f"k-fold enumeration needs {cost} tuples, budget is {budget}")

    # nm[d][e][t]: bitset of side-e indices that member t of side d does not meet
    nm = {}
    for d in range(k - 1):
        for e in range(d + 1, k):
            nm[d, e] = [0] * sizes[d]
            for t, am in enumerate(fams[d].member_bits):
                for s, bm in enumerate(fams[e].member_bits):
                    if am & bm == 0:
                        nm[d, e][t] |= 1 << s

    best = -1
    best_masks: tuple = ()
    best_last = 0
    full_last = (1 << sizes[-1]) - 1
    chosen = [0] * (k - 1)

    def rec(d, forbid, allowed_last, partial):
        nonlocal best, best_masks, best_last
        if d == k - 1:
            p = partial * popcount(allowed_last)
            if p > best:
                best = p
                best_masks = tuple(chosen)
                best_last = allowed_last
            return
        for mask in range(1 << sizes[d]):
            if mask & forbid[d]:
                continue
            new_forbid = list(forbid)
            new_allowed = allowed_last
            m = mask
            while m:
                low = m & -m
                t = low.bit_length() - 1
                for e in range(d + 1, k - 1):
                    new_forbid[e] = new_forbid[e] | nm[d, e][t]
                new_allowed &= ~nm[d, k - 1][t]
                m ^= low
            chosen[d] = mask
            rec(d + 1, new_forbid, new_allowed, partial * popcount(mask))
        chosen[d] = 0

    rec(0, [0] * (k - 1), full_last, 1)

    witnesses = tuple(
        [_subfamily(fams[d], best_masks[d]) for d in range(k - 1)]
        + [_subfamily(fams[-1], best_last)])
    bound = equality = None
    if all(_is_verification_ground(g) for g in grounds):
        bound = prod(_star1_size(f) for f in fams)
        if best > bound:
            raise BoundViolationError(
                f"k-fold search found {best} above the proven bound {bound}")
        equality = best == bound
    return KSearchResult(int(best), witnesses, bound, equality)


# ---------------------------------------------------------------------------
# Theorem-level verification runs


def verify_theorem1(m: int, n: int, r: int, s: int, strategy: str = "auto",
                    budget=None) -> SearchResult:
    """Exact check of the bounded-ground product bound at (m, r) x (n, s).

    The maximum over cross-intersecting A in ([m] choose <= r) and B in
    ([n] choose <= s) must equal the product of the star sizes exactly:
    the bound gives <=, the stars at element 1 give >=.
    """
    if not 1 <= r <= m or not 1 <= s <= n:
        raise ParameterError(f"need r in [m] and s in [n]; got {(m, n, r, s)}")
    res = max_product_pair(GroundSpec.bounded(m, r), GroundSpec.bounded(n, s),
                           strategy=strategy, budget=budget)
    expected = star_size_bound(m, r) * star_size_bound(n, s)
    if res.max_product != expected:
        raise BoundViolationError(
            f"bounded grounds ({m},{r})x({n},{s}): search gave "
            f"{res.max_product}, bound says {expected}")
    return res


def verify_theorem4(g, h, strategy: str = "auto", budget=None) -> SearchResult:
    """Exact check of the hereditary-compressed product bound |G(1)||H(1)|."""
    gf = as_family(g)
    hf = as_family(h)
    for fam in (gf, hf):
        if not _is_verification_ground(fam):
            raise ParameterError("grounds must be hereditary and compressed")
    res = max_product_pair(gf, hf, strategy=strategy, budget=budget)
    expected = _star1_size(gf) * _star1_size(hf)
    if res.max_product != expected:
        raise BoundViolationError(
            f"hereditary grounds: search gave {res.max_product}, "
            f"stars give {expected}")
    return res


def verify_corollary3(n_list, budget=None) -> KSearchResult:
    """k power-set grounds: the exact maximum must be 2^(sum n_i - k)."""
    if len(n_list) < 2:
        raise ParameterError("need at least two ground sizes")
    if any(n < 1 for n in n_list):
        raise ParameterError("ground sizes must be >= 1")
    if len(n_list) > 2 and (len(n_list) > 3 or max(n_list) > 3):
        raise BudgetExceededError(
            "exhaustive k-fold mode supports k <= 3 with n_i <= 3"
            " (pairs scale further)")
    grounds = [bounded_family(n, n) for n in n_list]
    res = max_product_k(grounds, budget=budget)
    expected = 1 << (sum(n_list) - len(n_list))
    if res.max_product != expected:
        raise BoundViolationError(
            f"power-set grounds {n_list}: search gave {res.max_product}, "
            f"bound says {expected}")
    return res


def verify_theorem5(grounds, budget=None) -> KSearchResult:
    """k hereditary compressed grounds: exact maximum = product of star sizes."""
    fams = [as_family(g) for g in grounds]
    if len(fams) < 2:
        raise ParameterError("need at least two grounds")
    for fam in fams:
        if not _is_verification_ground(fam):
            raise ParameterError("grounds must be hereditary and compressed")
    res = max_product_k(fams, budget=budget)
    expected = prod(_star1_size(f) for f in fams)
    if res.max_product != expected:
        raise BoundViolationError(
            f"k-fold hereditary grounds: search gave {res.max_product}, "
            f"stars give {expected}")
    return res


def _mod_star(x: int, y: int) -> int:
    """Modulo remapped to {1..y}: multiples of y give y instead of 0."""
    m = x % y
    return y if m == 0 else m


def pairwise_to_k_product(a_sizes, s_sizes) -> bool:
    """Squaring argument: pairwise bounds a_i a_j <= s_i s_j give the k-fold bound.

    Arranges indices 1..2k into k consecutive pairs reduced into [k], so
    each index occurs exactly twice; multiplying the k pairwise bounds
    squares both full products.  Returns the (always true) conclusion
    prod(a) <= prod(s); unmet pairwise bounds raise ParameterError.
    """
    a = [int(v) for v in a_sizes]
    s = [int(v) for v in s_sizes]
    k = len(a)
    if k < 2 or len(s) != k:
        raise ParameterError("need two equal-length vectors of length >= 2")
    if any(v < 0 for v in a + s):
        raise ParameterError("sizes must be nonnegative")
    for i in range(k):
        for j in range(i + 1, k):
            if a[i] * a[j] > s[i] * s[j]:
                raise ParameterError(
                    f"pairwise bound fails at ({i + 1}, {j + 1}): "
                    f"{a[i]}*{a[j]} > {s[i]}*{s[j]}")
    pairing = [(_mod_star(2 * t - 1, k), _mod_star(2 * t, k))
               for t in range(1, k + 1)]
    lhs_sq = prod(a[p - 1] * a[q - 1] for p, q in pairing)
    rhs_sq = prod(s[p - 1] * s[q - 1] for p, q in pairing)
    if lhs_sq != prod(a) ** 2 or rhs_sq != prod(s) ** 2:
        raise IdentityViolationError("pairing failed to cover each index twice")
    if lhs_sq > rhs_sq:
        raise IdentityViolationError("pairwise products did not multiply up")
    return prod(a) <= prod(s)
