import pytest
from hypothesis import given, strategies as st

from crossfam import (
    FamilyFormatError, GroundSpec, ParameterError, SetFamily, SetWord,
    are_cross_intersecting, are_cross_intersecting_k, bases, bounded_family,
    downward_closure, family_to_text, is_hereditary, is_intersecting,
    parse_family_text, star, star_size_bound, union_support,
)

import oracles


def fam(n, *sets):
    return SetFamily.from_sets(n, sets)


@st.composite
def families(draw, max_n=6, max_size=12):
    n = draw(st.integers(min_value=0, max_value=max_n))
    bits = draw(st.lists(st.integers(0, (1 << n) - 1), max_size=max_size,
                         unique=True))
    return SetFamily.from_bits(n, bits)


# --- SetWord / SetFamily construction ---------------------------------------

def test_setword_validation():
    w = SetWord.from_elements({1, 3}, 5)
    assert w.elements() == (1, 3) and w.size == 2
    assert w.contains(3) and not w.contains(2)
    with pytest.raises(ParameterError):
        SetWord(1 << 4, 4)  # element 5 outside [4]
    with pytest.raises(ParameterError):
        SetWord(0, 64)  # ground cap


def test_family_canonical_order_and_dedup():
    f = SetFamily.from_bits(3, [5, 1, 5, 0])
    assert f.member_bits == (0, 1, 5)
    with pytest.raises(ParameterError):
        SetFamily(2, (3, 1))  # not ascending
    with pytest.raises(ParameterError):
        SetFamily(2, (4,))  # out of ground


# --- bounded_family ----------------------------------------------------------

def test_bounded_family_examples():
    assert oracles.family_sets(bounded_family(2, 1)) == (
        frozenset(), frozenset({1}), frozenset({2}))
    assert oracles.family_sets(bounded_family(3, 0)) == (frozenset(),)
    assert len(bounded_family(3, 3)) == 8  # the full power set of [3]


@pytest.mark.parametrize("n,r", [(4, 2), (5, 3), (6, 0), (6, 6)])
def test_bounded_family_against_oracle(n, r):
    assert set(oracles.family_sets(bounded_family(n, r))) == set(
        oracles.subsets_at_most(n, r))


def test_bounded_family_guards():
    with pytest.raises(ParameterError):
        bounded_family(3, 4)
    with pytest.raises(ParameterError):
        bounded_family(21, 1)


# --- union_support / star ----------------------------------------------------

def test_union_support():
    assert union_support(fam(3, set(), {1}, {3})).elements() == (1, 3)
    assert union_support(SetFamily.empty(4)).bits == 0
    assert union_support(fam(3, {1, 2}, {2, 3})).elements() == (1, 2, 3)


def test_star_examples():
    f = fam(2, set(), {1}, {2}, {1, 2})
    assert oracles.family_sets(star(f, 1)) == (frozenset({1}), frozenset({1, 2}))
    # element outside the union support gives the empty star
    assert len(star(fam(3, {1}, {2}), 3)) == 0
    # oracle: subsets of [4] of size <= 2 containing 1
    assert len(star(bounded_family(4, 2), 1)) == 4
    with pytest.raises(ParameterError):
        star(f, 3)


@given(families())
def test_star_partitions_family(f):
    for x in range(1, f.ground_n + 1):
        s = star(f, x)
        rest = [m for m in f.member_bits if not m >> (x - 1) & 1]
        assert len(s) + len(rest) == len(f)
        assert (len(s) == 0) == (not union_support(f).contains(x))


def test_star_size_bound_values():
    # frozen from direct enumeration: {1},{1,2},{1,3},{1,4} / empty / {1},{1,2},{1,3}
    assert star_size_bound(4, 2) == 4
    assert star_size_bound(7, 0) == 0
    assert star_size_bound(3, 2) == 3


@pytest.mark.parametrize("n", range(0, 13))
def test_star_size_bound_matches_enumeration(n):
    for r in range(0, n + 1):
        want = len(oracles.star_of(oracles.subsets_at_most(n, r), 1))
        assert star_size_bound(n, r) == want
        if n >= 1:
            assert star_size_bound(n, r) == len(star(bounded_family(n, r), 1))


# --- intersection predicates --------------------------------------------------

def test_is_intersecting():
    assert is_intersecting(fam(2, {1}, {1, 2}))
    assert not is_intersecting(fam(2, {1}, {2}))
    assert is_intersecting(SetFamily.empty(3))
    # the self-pair convention: a nonempty family containing {} fails
    assert not is_intersecting(fam(2, set()))


def test_are_cross_intersecting():
    assert are_cross_intersecting(fam(2, {1}), fam(2, {1, 2}))
    assert not are_cross_intersecting(fam(2, {1}), fam(2, {2}))
    assert are_cross_intersecting(SetFamily.empty(2), fam(2, set(), {1}))
    # the empty set intersects nothing
    assert not are_cross_intersecting(fam(2, set()), fam(2, {1}))
    # grounds may differ: elements are compared as integers
    assert are_cross_intersecting(fam(2, {1}), fam(5, {1, 5}))


@given(families(max_n=5, max_size=8))
def test_cross_self_matches_is_intersecting(f):
    if len(f) and 0 not in f.member_bits:
        assert are_cross_intersecting(f, f) == is_intersecting(f)


def test_are_cross_intersecting_k():
    a = fam(2, {1})
    assert are_cross_intersecting_k([a, a, fam(2, {1, 2})])
    assert not are_cross_intersecting_k([a, fam(2, {2}), fam(2, {1, 2})])
    s = star(bounded_family(3, 3), 1)
    assert are_cross_intersecting_k([s, s, s])
    with pytest.raises(ParameterError):
        are_cross_intersecting_k([a])


# --- hereditary machinery ------------------------------------------------------

def test_is_hereditary():
    assert is_hereditary(fam(2, set(), {1}, {2}, {1, 2}))
    assert not is_hereditary(fam(2, {1, 2}))
    assert is_hereditary(SetFamily.empty(2))


def test_downward_closure_examples():
    assert oracles.family_sets(downward_closure(fam(2, {1, 2}))) == (
        frozenset(), frozenset({1}), frozenset({2}), frozenset({1, 2}))
    assert len(downward_closure(fam(3, {1, 2}, {3}))) == 5


@given(families(max_n=5, max_size=6))
def test_downward_closure_properties(f):
    c = downward_closure(f)
    assert is_hereditary(c)
    assert f.is_subfamily_of(c)
    assert downward_closure(c) == c
    assert set(oracles.family_sets(c)) == oracles.closure_fam(f.as_sets())
    # monotone under family inclusion
    sub = SetFamily.from_bits(f.ground_n, f.member_bits[: len(f) // 2])
    assert downward_closure(sub).is_subfamily_of(c)


def test_bases_examples():
    f = fam(3, set(), {1}, {2}, {1, 2}, {3})
    assert set(oracles.family_sets(bases(f))) == {frozenset({1, 2}), frozenset({3})}
    assert bases(fam(3, {1})).member_bits == fam(3, {1}).member_bits
    antichain = fam(3, {1, 2}, {2, 3})
    assert bases(antichain) == antichain


@given(families(max_n=5, max_size=8))
def test_bases_are_antichain_and_regenerate(f):
    b = bases(f)
    masks = b.member_bits
    assert all(not (masks[i] & ~masks[j] == 0)
               for i in range(len(masks)) for j in range(len(masks)) if i != j)
    if is_hereditary(f):
        assert downward_closure(b) == f


# --- ground specs ---------------------------------------------------------------

def test_ground_spec():
    g = GroundSpec.bounded(3, 2)
    assert g.family() == bounded_family(3, 2)
    explicit = GroundSpec.from_family(bounded_family(2, 2))
    assert explicit.family() == bounded_family(2, 2)
    with pytest.raises(ParameterError):
        GroundSpec.from_family(fam(2, {1, 2}))  # not hereditary
    with pytest.raises(ParameterError):
        GroundSpec.from_family(fam(2, set(), {2}))  # hereditary, not compressed
    with pytest.raises(ParameterError):
        GroundSpec.bounded(3, 4)


# --- text format -----------------------------------------------------------------

def test_parse_family_text():
    f = parse_family_text("n=2\n-\n1\n")
    assert oracles.family_sets(f) == (frozenset(), frozenset({1}))
    with pytest.raises(FamilyFormatError):
        parse_family_text("n=2\n3\n")  # element out of range
    with pytest.raises(FamilyFormatError):
        parse_family_text("n=3\n1,2\n1,2\n")  # duplicate
    with pytest.raises(FamilyFormatError):
        parse_family_text("n=3\n2,1\n")  # not increasing
    with pytest.raises(FamilyFormatError):
        parse_family_text("")


def test_format_error_carries_line():
    with pytest.raises(FamilyFormatError) as err:
        parse_family_text("n=2\n1\nx\n")
    assert err.value.line == 3


@given(families())
def test_text_roundtrip(f):
    assert parse_family_text(family_to_text(f)) == f


@given(st.text(max_size=120))
def test_parser_never_crashes(text):
    try:
        parse_family_text(text)
    except FamilyFormatError:
        pass  # the only acceptable failure mode for arbitrary text
