import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from crossfam import (
    BudgetExceededError, GroundSpec, ParameterError, SetFamily, best_partner,
    bounded_family, downward_closure, galois_closure, max_product_k,
    max_product_pair, max_product_pair_naive, pairwise_to_k_product, star,
    verify_corollary3, verify_theorem1, verify_theorem4, verify_theorem5,
)
from crossfam.search import STRATEGIES

import oracles


def fam(n, *sets):
    return SetFamily.from_sets(n, sets)


@st.composite
def small_families(draw, max_n=4, max_size=8):
    n = draw(st.integers(min_value=1, max_value=max_n))
    bits = draw(st.lists(st.integers(0, (1 << n) - 1), max_size=max_size,
                         unique=True))
    return SetFamily.from_bits(n, bits)


# --- best partner / closure ------------------------------------------------------

def test_best_partner_examples():
    g = bounded_family(2, 2)
    assert best_partner(fam(2, {1}), g) == fam(2, {1}, {1, 2})
    assert best_partner(SetFamily.empty(2), g) == g
    assert best_partner(fam(2, set()), g) == SetFamily.empty(2)


def test_galois_closure_examples():
    g = bounded_family(2, 2)
    # two partner applications: {{1,2}} constrains to sets meeting {1} and {2}
    assert galois_closure(fam(2, {1, 2}), g, g) == fam(2, {1, 2})
    closed = fam(2, {1}, {1, 2})
    assert galois_closure(closed, g, g) == closed
    # empty family: the closure is everything compatible with the full ground
    assert galois_closure(SetFamily.empty(2), g, g) == best_partner(g, g)


@settings(deadline=None)
@given(small_families(), small_families())
def test_partner_antitone_closure_monotone(a, b):
    if a.ground_n != b.ground_n:
        return
    n = a.ground_n
    ground = bounded_family(n, n)
    sub = SetFamily.from_bits(n, a.member_bits[: len(a) // 2])
    assert best_partner(a, ground).is_subfamily_of(best_partner(sub, ground))
    ca = galois_closure(a, ground, ground)
    assert a.is_subfamily_of(ca)
    assert galois_closure(ca, ground, ground) == ca
    cb = galois_closure(b, ground, ground)
    if a.is_subfamily_of(b):
        assert ca.is_subfamily_of(cb)


@given(small_families())
def test_partner_is_upward_closed_within_ground(a):
    ground = bounded_family(a.ground_n, a.ground_n)
    partner = best_partner(a, ground)
    pset = partner.mask_set
    for bm in partner.member_bits:
        for gm in ground.member_bits:
            if bm & ~gm == 0:  # bm subset of gm
                assert gm in pset


# --- exact pair search -------------------------------------------------------------

def test_max_product_pair_examples():
    g21 = GroundSpec.bounded(2, 1)
    res = max_product_pair(g21, g21)
    assert res.max_product == 1
    assert oracles.family_sets(res.witness_a) == (frozenset({1}),)
    assert oracles.family_sets(res.witness_b) == (frozenset({1}),)
    assert res.bound == 1 and res.equality

    res = max_product_pair(GroundSpec.bounded(3, 2), GroundSpec.bounded(3, 2))
    assert res.max_product == 9 and res.equality

    degenerate = fam(1, set())  # only the empty set: nothing cross-intersects
    res = max_product_pair(degenerate, bounded_family(1, 1))
    assert res.max_product == 0 and res.bound == 0 and res.equality


def test_witnesses_are_valid():
    from crossfam import are_cross_intersecting
    res = max_product_pair(bounded_family(3, 2), bounded_family(4, 2))
    assert are_cross_intersecting(res.witness_a, res.witness_b)
    assert len(res.witness_a) * len(res.witness_b) == res.max_product
    assert res.witness_a.is_subfamily_of(bounded_family(3, 2))
    assert res.witness_b.is_subfamily_of(bounded_family(4, 2))


def test_strategies_agree_with_each_other_and_naive():
    grounds = [
        (bounded_family(3, 2), bounded_family(3, 3)),
        (bounded_family(2, 1), bounded_family(4, 1)),
        (downward_closure(fam(3, {1, 2}, {3})), bounded_family(3, 2)),
        (fam(3, {1}, {2, 3}, {1, 3}), fam(3, {1, 2}, {3})),  # arbitrary grounds
    ]
    for ga, gb in grounds:
        naive, _, _ = max_product_pair_naive(ga, gb)
        for strat in STRATEGIES:
            res = max_product_pair(ga, gb, strategy=strat)
            assert res.max_product == naive, (strat, ga, gb)


def test_naive_matches_pure_oracle():
    ga = fam(3, {1}, {2}, {1, 3})
    gb = fam(3, {1, 2}, {3}, {2, 3})
    best, wa, wb = max_product_pair_naive(ga, gb)
    assert best == oracles.naive_max_product(ga.as_sets(), gb.as_sets())
    assert oracles.cross(wa.as_sets(), wb.as_sets())
    assert len(wa) * len(wb) == best


def test_budget_guards():
    with pytest.raises(BudgetExceededError):
        max_product_pair(bounded_family(4, 4), bounded_family(4, 4), budget=100)
    with pytest.raises(BudgetExceededError):
        max_product_pair_naive(bounded_family(4, 4), bounded_family(4, 4),
                               budget=1000)
    with pytest.raises(ParameterError):
        max_product_pair(bounded_family(2, 1), bounded_family(2, 1),
                         strategy="bogus")


# --- theorem-level wrappers -----------------------------------------------------------

def test_verify_theorem1_examples():
    assert verify_theorem1(2, 2, 1, 1).max_product == 1
    assert verify_theorem1(3, 3, 2, 2).max_product == 9
    res = verify_theorem1(4, 3, 2, 1)
    assert res.max_product == 4 and res.bound == 4
    with pytest.raises(ParameterError):
        verify_theorem1(3, 3, 0, 2)  # r must be in [m]


def test_verify_theorem4_examples():
    trivial = fam(2, set())
    assert verify_theorem4(trivial, trivial).max_product == 0
    full2 = bounded_family(2, 2)
    assert verify_theorem4(full2, full2).max_product == 4
    g = downward_closure(fam(3, {1, 2}, {1, 3}))
    res = verify_theorem4(g, full2)
    assert res.max_product == len(star(g, 1)) * 2 == 6
    with pytest.raises(ParameterError):
        verify_theorem4(fam(2, {1, 2}), full2)  # not hereditary


def test_verify_corollary3_examples():
    assert verify_corollary3([2, 2]).max_product == 4
    assert verify_corollary3([1, 1]).max_product == 1
    assert verify_corollary3([2, 2, 2]).max_product == 8
    res = verify_corollary3([3, 3])
    assert res.max_product == 16 and res.equality
    with pytest.raises(ParameterError):
        verify_corollary3([2])
    with pytest.raises(BudgetExceededError):
        verify_corollary3([2, 2, 2, 2])


def test_verify_theorem5_examples():
    full2 = bounded_family(2, 2)
    assert verify_theorem5([full2, full2]).max_product == 4
    assert verify_theorem5([fam(2, set()), full2]).max_product == 0
    res = verify_theorem5([bounded_family(2, 1)] * 3)
    assert res.max_product == 1 and res.bound == 1
    with pytest.raises(ParameterError):
        verify_theorem5([fam(2, {1, 2}), full2])


def test_strategies_agree_on_grounds_beyond_naive_reach():
    # 16- and 26-member grounds: naive (2^32+) is out of reach, but the three
    # strategies must still agree among themselves
    import numpy as np
    rng = np.random.default_rng(6021)
    cases = [
        (bounded_family(4, 4), bounded_family(4, 4)),
        (bounded_family(5, 3), bounded_family(4, 4)),
        (SetFamily.from_bits(5, (int(m) for m in rng.choice(32, 18, replace=False))),
         SetFamily.from_bits(5, (int(m) for m in rng.choice(32, 20, replace=False)))),
    ]
    for ga, gb in cases:
        values = {s: max_product_pair(ga, gb, strategy=s).max_product
                  for s in STRATEGIES}
        assert len(set(values.values())) == 1, values


def test_hereditary_sweep_over_4_all_pairs():
    from crossfam import enumerate_downsets
    catalog = enumerate_downsets(4, compressed_only=True).families
    assert len(catalog) == 27
    for g in catalog:
        for h in catalog:
            assert verify_theorem4(g, h).equality is True


def test_hereditary_sampled_pairs_over_5():
    import numpy as np
    from crossfam import enumerate_downsets
    catalog = enumerate_downsets(5, compressed_only=True).families
    assert len(catalog) == 119
    rng = np.random.default_rng(3111)
    for _ in range(60):
        g = catalog[int(rng.integers(len(catalog)))]
        h = catalog[int(rng.integers(len(catalog)))]
        assert verify_theorem4(g, h).equality is True


def test_k3_bounded_grounds_against_triple_oracle():
    grounds = [bounded_family(2, 1), bounded_family(3, 2), bounded_family(2, 2)]
    res = verify_theorem5(grounds)
    assert res.max_product == res.bound == 6  # star sizes 1 * 3 * 2

    # independent triple enumeration on the same grounds
    best = -1
    sets = [g.as_sets() for g in grounds]
    for a in oracles.subfamilies(sets[0]):
        for b in oracles.subfamilies(sets[1]):
            if not oracles.cross(a, b):
                continue
            for c in oracles.subfamilies(sets[2]):
                if oracles.cross(a, c) and oracles.cross(b, c):
                    best = max(best, len(a) * len(b) * len(c))
    assert best == res.max_product


def test_mod_star_pairing():
    from crossfam.search import _mod_star
    assert _mod_star(6, 3) == 3  # multiples map to the modulus, not 0
    assert _mod_star(4, 3) == 1
    pairing = [(_mod_star(2 * t - 1, 3), _mod_star(2 * t, 3)) for t in (1, 2, 3)]
    assert pairing == [(1, 2), (3, 1), (2, 3)]
    counts = {}
    for p, q in pairing:
        counts[p] = counts.get(p, 0) + 1
        counts[q] = counts.get(q, 0) + 1
    assert counts == {1: 2, 2: 2, 3: 2}


def test_k_search_witnesses():
    res = max_product_k([bounded_family(2, 2)] * 3)
    assert res.max_product == 8  # 2^(6-3)
    from crossfam import are_cross_intersecting_k
    assert are_cross_intersecting_k(list(res.witnesses))
    sizes = [len(w) for w in res.witnesses]
    assert np.prod(sizes) == res.max_product


# --- the squaring argument --------------------------------------------------------------

def test_pairwise_to_k_product_examples():
    assert pairwise_to_k_product([2, 2, 2], [2, 2, 2]) is True
    assert pairwise_to_k_product([1, 4], [2, 2]) is True
    with pytest.raises(ParameterError):
        pairwise_to_k_product([3, 3], [2, 2])
    with pytest.raises(ParameterError):
        pairwise_to_k_product([1], [1])


@given(st.integers(2, 6).flatmap(
    lambda k: st.tuples(st.lists(st.integers(0, 30), min_size=k, max_size=k),
                        st.lists(st.integers(0, 30), min_size=k, max_size=k))))
def test_pairwise_to_k_product_property(vectors):
    a, s = vectors
    ok = all(a[i] * a[j] <= s[i] * s[j]
             for i in range(len(a)) for j in range(i + 1, len(a)))
    if not ok:
        with pytest.raises(ParameterError):
            pairwise_to_k_product(a, s)
    else:
        assert pairwise_to_k_product(a, s) is True
