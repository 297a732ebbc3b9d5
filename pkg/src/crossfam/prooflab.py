"""Executable replay of the alteration construction with machine checks.

For compressed cross-intersecting families A, B over a common ground [n],
slicing at n splits each into the members avoiding n and the members
containing n (with n deleted).  When the two top slices fail to
cross-intersect, every offending member A_i of the A-slice is paired with
the unique complementary witness B_i = [n-1] \\ A_i on the B side; moving
the first half of the pairs down on one side and the second half on the
other restores cross-intersection among all four altered families while
the size bookkeeping stays exact.  Every claim along the way is asserted
on concrete data; a failure raises, since the claims are proven facts
about compressed cross-intersecting inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .compression import is_compressed
from .errors import (
    IdentityViolationError, ParameterError, UniquenessViolationError,
)
from .families import (
    SetFamily, SetWord, are_cross_intersecting, is_hereditary, star,
)

__all__ = [
    "SliceDecomposition", "ConflictSystem", "AlterationLedger",
    "slice_family", "star_slice_identity", "find_conflicts",
    "build_alteration", "am_gm_endgame",
]


@dataclass(frozen=True)
class SliceDecomposition:
    """f0 = members avoiding the top element; f1 = members containing it, with it deleted."""

    f0: SetFamily
    f1: SetFamily
    origin: SetFamily
    element: int


def slice_family(f: SetFamily) -> SliceDecomposition:
    """Split f at its top ground element; both parts live over [n-1].

    Sizes add up to |f| by construction.  If f is compressed (hereditary),
    both parts must be too; those implications are asserted.
    """
    n = f.ground_n
    if n < 1:
        raise ParameterError("slicing needs a ground of size >= 1")
    top = 1 << (n - 1)
    f0_bits = tuple(m for m in f.member_bits if not m & top)
    f1_bits = tuple(sorted(m ^ top for m in f.member_bits if m & top))
    f0 = SetFamily(n - 1, f0_bits)
    f1 = SetFamily(n - 1, f1_bits)
    if len(f0) + len(f1) != len(f):
        raise IdentityViolationError("slice sizes do not add up")
    if is_compressed(f) and not (is_compressed(f0) and is_compressed(f1)):
        raise IdentityViolationError("slice of a compressed family not compressed")
    if is_hereditary(f) and not (is_hereditary(f0) and is_hereditary(f1)):
        raise IdentityViolationError("slice of a hereditary family not hereditary")
    return SliceDecomposition(f0, f1, f, n)


def star_slice_identity(f: SetFamily) -> tuple[int, int, int]:
    """(|f(1)|, |f0(1)|, |f1(1)|); the first must equal the sum of the others."""
    if f.ground_n < 2:
        raise ParameterError("star/slice identity needs a ground of size >= 2")
    sl = slice_family(f)
    s = len(star(f, 1))
    s0 = len(star(sl.f0, 1))
    s1 = len(star(sl.f1, 1))
    if s != s0 + s1:
        raise IdentityViolationError(f"star does not split across slices: {s} != {s0}+{s1}")
    return s, s0, s1


@dataclass(frozen=True)
class ConflictSystem:
    """Members of the top A-slice that miss something in the top B-slice.

    ``pairs[i]`` is (A_i, B_i) with B_i = [n-1] \\ A_i the unique member of
    the top B-slice disjoint from A_i (and symmetrically A_i unique for B_i).
    k = 0 means the top slices already cross-intersect.
    """

    conflicts: SetFamily
    pairs: tuple[tuple[SetWord, SetWord], ...]
    k: int
    r: int


def find_conflicts(a: SetFamily, b: SetFamily) -> ConflictSystem:
    """Locate and certify the conflict pairs between the top slices of a and b.

    Preconditions: a and b share a ground, are compressed, and are
    cross-intersecting.  Under those, each conflict A_i has exactly one
    disjoint partner, namely the complement B_i; any other outcome raises
    UniquenessViolationError (it would mean a precondition was broken).
    """
    if a.ground_n != b.ground_n:
        raise ParameterError("families must share a ground")
    if a.ground_n < 1:
        raise ParameterError("conflict search needs a ground of size >= 1")
    if not (is_compressed(a) and is_compressed(b)):
        raise ParameterError("families must be compressed")
    if not are_cross_intersecting(a, b):
        raise ParameterError("families must be cross-intersecting")
    n = a.ground_n
    a1 = slice_family(a).f1
    b1 = slice_family(b).f1
    full = (1 << (n - 1)) - 1

    top = 1 << (n - 1)
    conflict_bits = []
    pairs = []
    for am in a1.member_bits:
        disjoint = [bm for bm in b1.member_bits if am & bm == 0]
        if not disjoint:
            continue
        comp = full & ~am
        if disjoint != [comp]:
            raise UniquenessViolationError(
                f"A-slice member {am:#x} has disjoint partners "
                f"{[hex(d) for d in disjoint]}, expected exactly the complement")
        back = [xm for xm in a1.member_bits if xm & comp == 0]
        if back != [am]:
            raise UniquenessViolationError(
                f"B-slice member {comp:#x} has disjoint partners "
                f"{[hex(d) for d in back]}, expected exactly {am:#x}")
        if (am | top) not in a or (comp | top) not in b:
            raise IdentityViolationError(
                "slice member lost its lifted original in the full family")
        conflict_bits.append(am)
        pairs.append((SetWord(am, n - 1), SetWord(comp, n - 1)))
    k = len(conflict_bits)
    return ConflictSystem(
        conflicts=SetFamily(n - 1, tuple(conflict_bits)),
        pairs=tuple(pairs), k=k, r=k // 2)


@dataclass(frozen=True)
class AlterationLedger:
    """The four altered families, the odd-k variants, and exact size bookkeeping.

    ``sizes`` keys: a0, a1, b0, b1 (slice sizes), a0p, a1p, b0p, b1p
    (altered), a0pp, a1pp, b0pp, b1pp (odd-k variants, absent when k even),
    g0, g1, h0, h1 (star sizes of the sliced grounds, absent when no
    grounds were supplied), k, r.
    """

    a0p: SetFamily
    a1p: SetFamily
    b0p: SetFamily
    b1p: SetFamily
    a0pp: SetFamily | None
    a1pp: SetFamily | None
    b0pp: SetFamily | None
    b1pp: SetFamily | None
    sizes: dict

    def altered_cross_checks(self) -> dict:
        out = {}
        for pname, pfam in (("a0p", self.a0p), ("a1p", self.a1p)):
            for qname, qfam in (("b0p", self.b0p), ("b1p", self.b1p)):
                out[f"{pname}~{qname}"] = are_cross_intersecting(pfam, qfam)
        if self.a0pp is not None:
            for pname, pfam in (("a0pp", self.a0pp), ("a1pp", self.a1pp)):
                for qname, qfam in (("b0pp", self.b0pp), ("b1pp", self.b1pp)):
                    out[f"{pname}~{qname}"] = are_cross_intersecting(pfam, qfam)
        return out

    def size_identity_checks(self) -> dict:
        """Re-evaluate every bookkeeping identity from the recorded sizes."""
        s = self.sizes
        k, r = s["k"], s["r"]
        out = {
            "a0p=a0+r": s["a0p"] == s["a0"] + r,
            "a1p=a1+r-k": s["a1p"] == s["a1"] + r - k,
            "b0p=b0+k-r": s["b0p"] == s["b0"] + k - r,
            "b1p=b1-r": s["b1p"] == s["b1"] - r,
            "|A|=a0p+a1p+k-2r": s["a0"] + s["a1"] == s["a0p"] + s["a1p"] + k - 2 * r,
            "|B|=b0p+b1p+2r-k": s["b0"] + s["b1"] == s["b0p"] + s["b1p"] + 2 * r - k,
        }
        if "a0pp" in s:
            for p in (0, 1):
                out[f"a{p}pp=a{p}p+1"] = s[f"a{p}pp"] == s[f"a{p}p"] + 1
                out[f"b{p}pp=b{p}p-1"] = s[f"b{p}pp"] == s[f"b{p}p"] - 1
        return out

    def induction_inequalities(self) -> dict | None:
        """|A'_p||B'_q| <= g_p h_q (and the odd-k variant), when grounds known."""
        s = self.sizes
        if s.get("g0") is None:
            return None
        out = {}
        for p in (0, 1):
            for q in (0, 1):
                out[f"a{p}p*b{q}p<=g{p}*h{q}"] = (
                    s[f"a{p}p"] * s[f"b{q}p"] <= s[f"g{p}"] * s[f"h{q}"])
                if "a0pp" in s:
                    out[f"a{p}pp*b{q}pp<=g{p}*h{q}"] = (
                        s[f"a{p}pp"] * s[f"b{q}pp"] <= s[f"g{p}"] * s[f"h{q}"])
        return out


def _star1_size(f: SetFamily) -> int:
    return len(star(f, 1)) if f.ground_n >= 1 else 0


def build_alteration(cs: ConflictSystem, a: SetFamily, b: SetFamily,
                     ground_a: SetFamily | None = None,
                     ground_b: SetFamily | None = None) -> AlterationLedger:
    """Construct the altered families for a conflict system with k >= 1.

    Verifies on the spot: the four cross-intersection claims, that no
    conflict set (or partner) was already in the bottom slice, and the
    exact size identities, including |A| and |B| reconstruction.  Supplying
    hereditary compressed grounds additionally records the star sizes of
    their slices and checks containment of the altered families.
    """
    if cs.k < 1:
        raise ParameterError("alteration needs at least one conflict pair")
    sa = slice_family(a)
    sb = slice_family(b)
    a0s, a1s = set(sa.f0.member_bits), set(sa.f1.member_bits)
    b0s, b1s = set(sb.f0.member_bits), set(sb.f1.member_bits)
    n1 = a.ground_n - 1
    k, r = cs.k, cs.r
    amasks = [w.bits for w, _ in cs.pairs]
    bmasks = [w.bits for _, w in cs.pairs]
    if any(m not in a1s for m in amasks) or any(m not in b1s for m in bmasks):
        raise ParameterError("conflict system does not match the given families")

    for m in amasks:
        if m in a0s:
            raise IdentityViolationError(
                f"conflict set {m:#x} already in the bottom A-slice")
    for m in bmasks:
        if m in b0s:
            raise IdentityViolationError(
                f"conflict partner {m:#x} already in the bottom B-slice")

    def fam(bits):
        return SetFamily(n1, tuple(sorted(bits)))

    a0p = fam(a0s | set(amasks[:r]))
    a1p = fam(a1s - set(amasks[r:]))
    b0p = fam(b0s | set(bmasks[r:]))
    b1p = fam(b1s - set(bmasks[:r]))

    for p in (a0p, a1p):
        for q in (b0p, b1p):
            if not are_cross_intersecting(p, q):
                raise IdentityViolationError(
                    "altered families failed to cross-intersect")

    sizes = {
        "k": k, "r": r,
        "a0": len(sa.f0), "a1": len(sa.f1),
        "b0": len(sb.f0), "b1": len(sb.f1),
        "a0p": len(a0p), "a1p": len(a1p),
        "b0p": len(b0p), "b1p": len(b1p),
    }
    expect = {
        "a0p": sizes["a0"] + r,
        "a1p": sizes["a1"] + r - k,
        "b0p": sizes["b0"] + k - r,
        "b1p": sizes["b1"] - r,
    }
    for key, want in expect.items():
        if sizes[key] != want:
            raise IdentityViolationError(
                f"size of {key} is {sizes[key]}, bookkeeping demands {want}")
    if len(a) != sizes["a0p"] + sizes["a1p"] + k - 2 * r:
        raise IdentityViolationError("|A| reconstruction identity failed")
    if len(b) != sizes["b0p"] + sizes["b1p"] + 2 * r - k:
        raise IdentityViolationError("|B| reconstruction identity failed")

    a0pp = a1pp = b0pp = b1pp = None
    if k % 2 == 1:
        extra_a = amasks[r]
        extra_b = bmasks[r]
        a0pp = fam(set(a0p.member_bits) | {extra_a})
        a1pp = fam(set(a1p.member_bits) | {extra_a})
        b0pp = fam(set(b0p.member_bits) - {extra_b})
        b1pp = fam(set(b1p.member_bits) - {extra_b})
        for p in (a0pp, a1pp):
            for q in (b0pp, b1pp):
                if not are_cross_intersecting(p, q):
                    raise IdentityViolationError(
                        "odd-k altered families failed to cross-intersect")
        sizes.update(a0pp=len(a0pp), a1pp=len(a1pp),
                     b0pp=len(b0pp), b1pp=len(b1pp))
        for p in (0, 1):
            if sizes[f"a{p}pp"] != sizes[f"a{p}p"] + 1:
                raise IdentityViolationError(f"a{p}pp size identity failed")
            if sizes[f"b{p}pp"] != sizes[f"b{p}p"] - 1:
                raise IdentityViolationError(f"b{p}pp size identity failed")

    if ground_a is not None or ground_b is not None:
        if ground_a is None or ground_b is None:
            raise ParameterError("supply both grounds or neither")
        for g, f, side in ((ground_a, a, "A"), (ground_b, b, "B")):
            if not (is_hereditary(g) and is_compressed(g)):
                raise ParameterError(f"ground for side {side} must be hereditary and compressed")
            if not f.is_subfamily_of(g):
                raise ParameterError(f"side {side} is not inside its ground")
        sg = slice_family(ground_a)
        sh = slice_family(ground_b)
        sizes.update(g0=_star1_size(sg.f0), g1=_star1_size(sg.f1),
                     h0=_star1_size(sh.f0), h1=_star1_size(sh.f1))
        contain = [
            (a0p, sg.f0), (a1p, sg.f1), (b0p, sh.f0), (b1p, sh.f1),
        ]
        if a0pp is not None:
            contain += [(a0pp, sg.f0), (a1pp, sg.f1), (b0pp, sh.f0), (b1pp, sh.f1)]
        for fam_, ground_slice in contain:
            if not fam_.is_subfamily_of(ground_slice):
                raise IdentityViolationError(
                    "altered family escaped its sliced ground")

    return AlterationLedger(a0p=a0p, a1p=a1p, b0p=b0p, b1p=b1p,
                            a0pp=a0pp, a1pp=a1pp, b0pp=b0pp, b1pp=b1pp,
                            sizes=sizes)


def am_gm_endgame(n: int, a_size: int) -> int:
    """a_size * (2^n - a_size), checked against the balanced square (2^(n-1))^2."""
    if n < 0 or not 0 <= a_size <= (1 << n):
        raise ParameterError(f"need 0 <= a_size <= 2^{n}")
    value = a_size * ((1 << n) - a_size)
    cap = ((1 << n) * (1 << n)) // 4
    if value > cap:
        raise IdentityViolationError(
            f"{a_size}*(2^{n}-{a_size}) = {value} exceeds {cap}")
    return value
