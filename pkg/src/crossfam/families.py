"""Canonical bitmask representation of finite set families over [n].

A subset of [n] = {1, ..., n} is stored as an n-bit word: bit i-1 is set
iff element i belongs to the set.  Families are deduplicated tuples of
such words in ascending numeric order, which makes equality, hashing and
serialization deterministic.  Everything here is immutable and pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import FamilyFormatError, ParameterError

#: Hard cap on the ground size, from the 63-bit word representation.
MAX_GROUND = 63

#: Stricter cap for operations that enumerate all of 2^[n].
MAX_ENUM_GROUND = 20


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_elements(mask: int) -> tuple[int, ...]:
    """Elements of a bitmask, ascending (bit i-1 -> element i)."""
    out = []
    x = mask
    while x:
        low = x & -x
        out.append(low.bit_length())
        x ^= low
    return tuple(out)


def elements_mask(elements: Iterable[int]) -> int:
    mask = 0
    for e in elements:
        if e < 1:
            raise ParameterError(f"element {e} out of range (must be >= 1)")
        mask |= 1 << (e - 1)
    return mask


@dataclass(frozen=True, order=True)
class SetWord:
    """One subset of [ground_n], as an n-bit characteristic word."""

    bits: int
    ground_n: int

    def __post_init__(self):
        if not 0 <= self.ground_n <= MAX_GROUND:
            raise ParameterError(
                f"ground size {self.ground_n} out of range [0, {MAX_GROUND}]")
        if self.bits < 0 or self.bits >> self.ground_n:
            raise ParameterError(
                f"bits {self.bits:#x} has elements outside [{self.ground_n}]")

    @classmethod
    def from_elements(cls, elements: Iterable[int], ground_n: int) -> "SetWord":
        return cls(elements_mask(elements), ground_n)

    @property
    def size(self) -> int:
        return popcount(self.bits)

    def elements(self) -> tuple[int, ...]:
        return mask_elements(self.bits)

    def contains(self, x: int) -> bool:
        return bool(self.bits >> (x - 1) & 1) if 1 <= x <= self.ground_n else False

    def __repr__(self):
        inner = "{" + ",".join(map(str, self.elements())) + "}"
        return f"SetWord({inner}, n={self.ground_n})"


@dataclass(frozen=True)
class SetFamily:
    """Deduplicated, ascending-ordered collection of subsets of [ground_n]."""

    ground_n: int
    member_bits: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.ground_n <= MAX_GROUND:
            raise ParameterError(
                f"ground size {self.ground_n} out of range [0, {MAX_GROUND}]")
        limit = 1 << self.ground_n
        prev = -1
        for m in self.member_bits:
            if m < 0 or m >= limit:
                raise ParameterError(
                    f"member {m:#x} not a subset of [{self.ground_n}]")
            if m <= prev:
                raise ParameterError("members must be strictly ascending")
            prev = m

    @classmethod
    def from_bits(cls, ground_n: int, bits: Iterable[int]) -> "SetFamily":
        return cls(ground_n, tuple(sorted(set(bits))))

    @classmethod
    def from_sets(cls, ground_n: int, sets: Iterable[Iterable[int]]) -> "SetFamily":
        return cls.from_bits(ground_n, (elements_mask(s) for s in sets))

    @classmethod
    def empty(cls, ground_n: int) -> "SetFamily":
        return cls(ground_n, ())

    @property
    def members(self) -> tuple[SetWord, ...]:
        return tuple(SetWord(m, self.ground_n) for m in self.member_bits)

    @property
    def mask_set(self) -> frozenset:
        return frozenset(self.member_bits)

    def __len__(self) -> int:
        return len(self.member_bits)

    def __iter__(self) -> Iterator[SetWord]:
        return iter(self.members)

    def __contains__(self, item) -> bool:
        bits = item.bits if isinstance(item, SetWord) else int(item)
        return bits in self.mask_set

    def is_subfamily_of(self, other: "SetFamily") -> bool:
        return self.mask_set <= other.mask_set

    def as_sets(self) -> tuple[frozenset, ...]:
        return tuple(frozenset(mask_elements(m)) for m in self.member_bits)

    def __repr__(self):
        shown = ", ".join(
            "{" + ",".join(map(str, mask_elements(m))) + "}"
            for m in self.member_bits[:8])
        if len(self.member_bits) > 8:
            shown += f", ... ({len(self.member_bits)} members)"
        return f"SetFamily(n={self.ground_n}, [{shown}])"


# ---------------------------------------------------------------------------
# Core operations


def bounded_family(n: int, r: int) -> SetFamily:
    """All subsets of [n] of size at most r, in canonical order."""
    if not 0 <= r <= n:
        raise ParameterError(f"need 0 <= r <= n, got r={r}, n={n}")
    if n > MAX_ENUM_GROUND:
        raise ParameterError(
            f"n={n} exceeds the enumeration guard ({MAX_ENUM_GROUND})")
    if r == n:
        bits = range(1 << n)
    else:
        bits = (m for m in range(1 << n) if popcount(m) <= r)
    return SetFamily(n, tuple(bits))


def union_support(f: SetFamily) -> SetWord:
    """Union of all members (the empty word for an empty family)."""
    agg = 0
    for m in f.member_bits:
        agg |= m
    return SetWord(agg, f.ground_n)


def star(f: SetFamily, x: int) -> SetFamily:
    """Subfamily of members containing the element x."""
    if not 1 <= x <= f.ground_n:
        raise ParameterError(f"element {x} out of range [1, {f.ground_n}]")
    bit = 1 << (x - 1)
    return SetFamily(f.ground_n, tuple(m for m in f.member_bits if m & bit))


def star_size_bound(n: int, r: int) -> int:
    """sum_{j=0}^{r} C(n-1, j-1), the size of a full star of ([n] choose <= r)."""
    if not 0 <= r <= n:
        raise ParameterError(f"need 0 <= r <= n, got r={r}, n={n}")
    return sum(math.comb(n - 1, j - 1) for j in range(1, r + 1))


def is_intersecting(f: SetFamily) -> bool:
    """True iff every two members (a member paired with itself included) meet.

    Consequence of the self-pair convention: a nonempty family containing the
    empty set is not intersecting.
    """
    masks = f.member_bits
    if not masks:
        return True
    if masks[0] == 0:
        return False
    for i in range(len(masks)):
        for j in range(i + 1, len(masks)):
            if masks[i] & masks[j] == 0:
                return False
    return True


def are_cross_intersecting(a: SetFamily, b: SetFamily) -> bool:
    """True iff every member of a meets every member of b (vacuous if either empty).

    Ground sizes may differ; words are compared on the shared integer elements.
    """
    for ma in a.member_bits:
        for mb in b.member_bits:
            if ma & mb == 0:
                return False
    return True


def are_cross_intersecting_k(fams: list) -> bool:
    """True iff every pair of distinct families in the list is cross-intersecting."""
    if len(fams) < 2:
        raise ParameterError("need at least two families")
    for i in range(len(fams)):
        for j in range(i + 1, len(fams)):
            if not are_cross_intersecting(fams[i], fams[j]):
                return False
    return True


def is_hereditary(f: SetFamily) -> bool:
    """True iff f is closed under taking subsets.

    Single-element deletions suffice: closure under them implies closure
    under arbitrary subsets.
    """
    present = f.mask_set
    for m in f.member_bits:
        x = m
        while x:
            low = x & -x
            if m ^ low not in present:
                return False
            x ^= low
    return True


def downward_closure(f: SetFamily) -> SetFamily:
    """Smallest hereditary family containing f (union of member power sets)."""
    out = set()
    for m in f.member_bits:
        if m in out:
            continue
        # enumerate all submasks of m, including 0 and m itself
        sub = m
        while True:
            out.add(sub)
            if sub == 0:
                break
            sub = (sub - 1) & m
    return SetFamily(f.ground_n, tuple(sorted(out)))


def bases(f: SetFamily) -> SetFamily:
    """Inclusion-maximal members of f."""
    masks = f.member_bits
    out = []
    for i, m in enumerate(masks):
        maximal = True
        for j, other in enumerate(masks):
            if i != j and m & ~other == 0:
                maximal = False
                break
        if maximal:
            out.append(m)
    return SetFamily(f.ground_n, tuple(out))


# ---------------------------------------------------------------------------
# Ground specifications


@dataclass(frozen=True)
class GroundSpec:
    """A verification universe: ([n] choose <= r) or an explicit validated family."""

    kind: str  # "bounded" | "explicit"
    n: int = 0
    r: int = 0
    explicit: SetFamily | None = None

    @classmethod
    def bounded(cls, n: int, r: int) -> "GroundSpec":
        if not 0 <= r <= n <= MAX_ENUM_GROUND:
            raise ParameterError(
                f"bounded ground needs 0 <= r <= n <= {MAX_ENUM_GROUND}")
        return cls("bounded", n=n, r=r)

    @classmethod
    def from_family(cls, family: SetFamily, validate: bool = True) -> "GroundSpec":
        if validate:
            from .compression import is_compressed  # deferred: avoids cycle
            if not is_hereditary(family):
                raise ParameterError("explicit ground must be hereditary")
            if not is_compressed(family):
                raise ParameterError("explicit ground must be compressed")
        return cls("explicit", n=family.ground_n, explicit=family)

    def family(self) -> SetFamily:
        if self.kind == "bounded":
            return bounded_family(self.n, self.r)
        assert self.explicit is not None
        return self.explicit


def as_family(ground) -> SetFamily:
    """Accept a GroundSpec or a plain SetFamily and return the family."""
    if isinstance(ground, GroundSpec):
        return ground.family()
    if isinstance(ground, SetFamily):
        return ground
    raise ParameterError(f"not a ground: {ground!r}")


# ---------------------------------------------------------------------------
# Family text format
#
#     n=<int>
#     1,3
#     2
#     -
#
# One set per line as strictly increasing comma-separated elements of [n];
# "-" denotes the empty set.  Duplicate lines are rejected.


def parse_family_text(text: str) -> SetFamily:
    lines = text.splitlines()
    header = None
    header_line = 0
    for idx, raw in enumerate(lines, start=1):
        if raw.strip():
            header = raw.strip()
            header_line = idx
            break
    if header is None:
        raise FamilyFormatError("missing 'n=<int>' header")
    if not header.startswith("n="):
        raise FamilyFormatError("expected 'n=<int>' header", header_line)
    try:
        n = int(header[2:])
    except ValueError:
        raise FamilyFormatError(f"bad ground size {header[2:]!r}", header_line)
    if not 0 <= n <= MAX_GROUND:
        raise FamilyFormatError(
            f"ground size {n} out of range [0, {MAX_GROUND}]", header_line)

    seen: dict[int, int] = {}
    masks = []
    for idx in range(header_line, len(lines)):
        line = lines[idx].strip()
        lineno = idx + 1
        if not line:
            continue
        if line == "-":
            mask = 0
        else:
            mask = 0
            prev = 0
            for tok in line.split(","):
                try:
                    e = int(tok)
                except ValueError:
                    raise FamilyFormatError(f"bad element {tok.strip()!r}", lineno)
                if e <= prev:
                    raise FamilyFormatError(
                        "elements must be strictly increasing", lineno)
                if e > n:
                    raise FamilyFormatError(
                        f"element {e} exceeds ground size {n}", lineno)
                mask |= 1 << (e - 1)
                prev = e
        if mask in seen:
            raise FamilyFormatError(
                f"duplicate set (first seen on line {seen[mask]})", lineno)
        seen[mask] = lineno
        masks.append(mask)
    return SetFamily.from_bits(n, masks)


def family_to_text(f: SetFamily) -> str:
    lines = [f"n={f.ground_n}"]
    for m in f.member_bits:
        lines.append(",".join(map(str, mask_elements(m))) if m else "-")
    return "\n".join(lines) + "\n"


def read_family(path) -> SetFamily:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_family_text(fh.read())


def write_family(f: SetFamily, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(family_to_text(f))
