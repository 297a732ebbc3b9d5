"""crossfam: exact verification toolkit for cross-intersecting set families.

Families of subsets of [n] are bitmask words; the package provides the
compression (shifting) operators with checkable termination traces,
hereditary-family catalogs with the star-halving certificate, an
executable replay of the alteration construction, and exact maximization
of size products over cross-intersecting families with theorem-level
verification runs.
"""

__version__ = "0.1.0"

from .errors import (
    BoundViolationError, BudgetExceededError, CrossfamError,
    FamilyFormatError, HypothesisNotMet, IdentityViolationError,
    ParameterError, UniquenessViolationError, VerificationError,
)
from .families import (
    GroundSpec, SetFamily, SetWord, are_cross_intersecting,
    are_cross_intersecting_k, bases, bounded_family, downward_closure,
    family_to_text, is_hereditary, is_intersecting, parse_family_text,
    read_family, star, star_size_bound, union_support, write_family,
)
from .compression import (
    CompressionPair, CompressionStep, CompressionTrace, apply_compression,
    compress_pair_to_fixed_point, compress_to_fixed_point, delta,
    is_compressed, potential,
)
from .hereditary import (
    DownsetCatalog, InjectionReport, dominance_closure, enumerate_antichains,
    enumerate_downsets, lemma2_check, lemma2_injection, lemma2_sweep,
)
from .prooflab import (
    AlterationLedger, ConflictSystem, SliceDecomposition, am_gm_endgame,
    build_alteration, find_conflicts, slice_family, star_slice_identity,
)
from .search import (
    KSearchResult, SearchResult, best_partner, galois_closure,
    max_product_k, max_product_pair, max_product_pair_naive,
    pairwise_to_k_product, verify_corollary3, verify_theorem1,
    verify_theorem4, verify_theorem5,
)
