"""Independent brute-force references used as test oracles.

Everything here works on frozensets and plain itertools enumeration and
deliberately shares no code with the library: values asserted in the
tests were computed through these routes (or by hand from the
definitions) and then frozen.
"""

import itertools


def subsets_at_most(n, r):
    """All subsets of {1..n} of size <= r, as frozensets."""
    out = []
    for k in range(r + 1):
        out.extend(frozenset(c) for c in itertools.combinations(range(1, n + 1), k))
    return out


def powerset(n):
    return subsets_at_most(n, n)


def star_of(fam, x):
    return [s for s in fam if x in s]


def is_intersecting_fam(fam):
    fam = list(fam)
    return all(a & b for a in fam for b in fam)


def cross(a, b):
    return all(x & y for x in a for y in b)


def delta_set(i, j, s):
    if j in s and i not in s:
        return frozenset(s - {j} | {i})
    return frozenset(s)


def compress_fam(i, j, fam):
    fam = set(map(frozenset, fam))
    out = set()
    for s in fam:
        d = delta_set(i, j, s)
        out.add(s if d in fam else d)
    return out


def is_compressed_fam(fam, n):
    fam = set(map(frozenset, fam))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if compress_fam(i, j, fam) != fam:
                return False
    return True


def is_hereditary_fam(fam):
    fam = set(map(frozenset, fam))
    return all(frozenset(sub) in fam
               for s in fam
               for k in range(len(s) + 1)
               for sub in itertools.combinations(s, k))


def closure_fam(fam):
    out = set()
    for s in fam:
        for k in range(len(s) + 1):
            out.update(frozenset(c) for c in itertools.combinations(s, k))
    return out


def bases_fam(fam):
    fam = list(map(frozenset, fam))
    return {s for s in fam if not any(s < t for t in fam)}


def hereditary_subfamilies(n):
    """Brute force: filter every subfamily of the power set (n <= 4)."""
    univ = powerset(n)
    out = []
    for mask in range(1 << len(univ)):
        fam = [univ[t] for t in range(len(univ)) if mask >> t & 1]
        if is_hereditary_fam(fam):
            out.append(frozenset(fam))
    return out


def compressed_subfamilies(n):
    univ = powerset(n)
    out = []
    for mask in range(1 << len(univ)):
        fam = [univ[t] for t in range(len(univ)) if mask >> t & 1]
        if is_compressed_fam(fam, n):
            out.append(frozenset(fam))
    return out


def subfamilies(ground):
    ground = list(ground)
    for mask in range(1 << len(ground)):
        yield [ground[t] for t in range(len(ground)) if mask >> t & 1]


def naive_max_product(ground_a, ground_b):
    """Exact maximum of |A||B| by checking every subfamily pair directly."""
    best = -1
    for a in subfamilies(ground_a):
        for b in subfamilies(ground_b):
            if cross(a, b):
                best = max(best, len(a) * len(b))
    return best


def family_sets(f):
    """Library SetFamily -> sorted tuple of frozensets (for comparisons)."""
    return tuple(sorted(f.as_sets(), key=lambda s: (len(s), sorted(s))))
