"""Element-replacement compression of set families and fixed-point driving.

``delta`` moves element j to element i inside one set when j is present
and i is absent.  Lifted to a family, the operation relocates a member
only when its image is not already present, so family size is invariant.
A family untouched by every left-compression (i < j) is *compressed*.

Fixed points are reached by the deterministic scan implemented in the
kernel backends: try pairs (i, j), i < j, in lexicographic order, apply
the first one that changes anything, restart.  Every applied step
strictly lowers the element-sum potential, which both proves termination
and is recorded per step so the argument is checkable as data.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backends
from .errors import ParameterError
from .families import SetFamily, SetWord

__all__ = [
    "CompressionPair", "CompressionStep", "CompressionTrace",
    "delta", "delta_mask", "apply_compression", "is_compressed",
    "potential", "compress_to_fixed_point", "compress_pair_to_fixed_point",
]


@dataclass(frozen=True)
class CompressionPair:
    """An ordered element pair (i, j); i < j makes it a left-compression."""

    i: int
    j: int

    def __post_init__(self):
        if self.i < 1 or self.j < 1:
            raise ParameterError(f"elements must be >= 1, got ({self.i}, {self.j})")

    @property
    def is_left(self) -> bool:
        return self.i < self.j


@dataclass(frozen=True)
class CompressionStep:
    pair: CompressionPair
    potential_before: int
    potential_after: int


@dataclass(frozen=True)
class CompressionTrace:
    """Applied steps plus the initial/final family (or pair of families)."""

    initial: tuple[SetFamily, ...]
    final: tuple[SetFamily, ...]
    steps: tuple[CompressionStep, ...]

    def __post_init__(self):
        for s in self.steps:
            if s.potential_after >= s.potential_before:
                raise ParameterError(
                    "trace potentials must strictly decrease at every step")


def delta_mask(i: int, j: int, mask: int) -> int:
    """Bitmask form of the single-set operation."""
    ib, jb = 1 << (i - 1), 1 << (j - 1)
    if mask & jb and not mask & ib:
        return (mask ^ jb) | ib
    return mask


def delta(p: CompressionPair, a: SetWord) -> SetWord:
    """(A \\ {j}) | {i} when j in A and i not in A, else A unchanged."""
    if p.i > a.ground_n or p.j > a.ground_n:
        raise ParameterError(
            f"pair ({p.i}, {p.j}) outside ground [{a.ground_n}]")
    return SetWord(delta_mask(p.i, p.j, a.bits), a.ground_n)


def apply_compression(p: CompressionPair, f: SetFamily) -> SetFamily:
    """Family-level compression: move each member whose image is absent."""
    if p.i > f.ground_n or p.j > f.ground_n:
        raise ParameterError(
            f"pair ({p.i}, {p.j}) outside ground [{f.ground_n}]")
    present = f.mask_set
    out = []
    for m in f.member_bits:
        d = delta_mask(p.i, p.j, m)
        out.append(m if d in present else d)
    return SetFamily(f.ground_n, tuple(sorted(out)))


def is_compressed(f: SetFamily) -> bool:
    """True iff (F \\ {j}) | {i} is a member whenever i < j in F, i not in F."""
    present = f.mask_set
    n = f.ground_n
    for m in f.member_bits:
        for j in range(2, n + 1):
            jb = 1 << (j - 1)
            if not m & jb:
                continue
            for i in range(1, j):
                ib = 1 << (i - 1)
                if not m & ib and ((m ^ jb) | ib) not in present:
                    return False
    return True


def potential(f: SetFamily) -> int:
    """Sum over members of the sum of their elements."""
    total = 0
    for m in f.member_bits:
        x = m
        while x:
            low = x & -x
            total += low.bit_length()
            x ^= low
    return total


def _masks_array(f: SetFamily) -> np.ndarray:
    return np.array(f.member_bits, dtype=np.int64)


def _trace(initial, final, steps_arr) -> CompressionTrace:
    steps = tuple(
        CompressionStep(CompressionPair(int(i), int(j)), int(before), int(after))
        for i, j, before, after in steps_arr)
    return CompressionTrace(initial=tuple(initial), final=tuple(final), steps=steps)


def compress_to_fixed_point(f: SetFamily) -> tuple[SetFamily, CompressionTrace]:
    """Apply changing left-compressions until none changes the family.

    The result passes ``is_compressed``, has the same size as the input,
    and the trace records the strictly decreasing potential per step.
    """
    out_masks, steps_arr = backends.kernels().fixed_point(
        _masks_array(f), f.ground_n)
    out = SetFamily(f.ground_n, tuple(int(m) for m in out_masks))
    return out, _trace([f], [out], steps_arr)


def compress_pair_to_fixed_point(
        a: SetFamily, b: SetFamily) -> tuple[SetFamily, SetFamily, CompressionTrace]:
    """Apply each chosen left-compression to both families simultaneously.

    Inputs must be cross-intersecting; the outputs then are as well, with
    sizes preserved.  The recorded potential is the sum over both families.
    """
    from .families import are_cross_intersecting
    if a.ground_n != b.ground_n:
        raise ParameterError("pair compression needs a common ground")
    if not are_cross_intersecting(a, b):
        raise ParameterError("input families are not cross-intersecting")
    out_a_masks, out_b_masks, steps_arr = backends.kernels().fixed_point_pair(
        _masks_array(a), _masks_array(b), a.ground_n)
    out_a = SetFamily(a.ground_n, tuple(int(m) for m in out_a_masks))
    out_b = SetFamily(b.ground_n, tuple(int(m) for m in out_b_masks))
    return out_a, out_b, _trace([a, b], [out_a, out_b], steps_arr)
