"""Extremal sums of entrywise products of permutations.

For a multiset of k permutations r_1..r_k of {1..n}, the value

    v = sum_{i=1..n} prod_{j=1..k} r_j(i)

is maximized exactly by k copies of a single permutation (the power sum
1**k + ... + n**k) and minimized by sets this package finds by exhaustive
search with symmetry reduction: one member is fixed to the identity, the
last is filled in by the rearrangement completion, and the remaining k-2
are swept as combinations with replacement over all n! permutations.
Minimizing multisets are counted up to simultaneous composition with a
common position-permutation, with canonical representatives ordered by
their base-(n+1) concatenation key.
"""

from ._version import __version__
from .closed_forms import ClosedFormAnswer, Source, nmax, nmin_trivial, vmax, vmin_closed
from .perms import (
    CompletionExplosion,
    DuplicateEntry,
    InvalidPermutation,
    KSet,
    Overflow,
    Perm,
    ProductVector,
    all_optimal_completions,
    base_key,
    canonicalize,
    canonicalize_exhaustive,
    compose,
    count_optimal_completions,
    ensure_capacity,
    evaluate_v,
    identity,
    inverse,
    make_kset,
    make_permutation,
    optimal_completion,
    product_vector,
)
from .results import (
    A260355_DIRECTION,
    ANTIDIAGONAL_ID,
    COLUMN_SEQUENCES,
    ConflictDetected,
    Direction,
    Method,
    MissingCell,
    ParseError,
    Quantity,
    ResultRecord,
    SequenceRecord,
    UnknownSequence,
    VerifyReport,
    antidiagonal_sequence,
    emit_bfile,
    fetch_reference,
    format_kset,
    format_permutation,
    load_store,
    make_record,
    parse_bfile,
    read_store,
    reference_bfile,
    render_table,
    store_append,
    verify_against_reference,
)
from .search import (
    InstanceTooLarge,
    InvalidConfig,
    Mode,
    SearchConfig,
    SearchResult,
    brute_force_oracle,
    multiset_count,
    partition_space,
    rank_multiset,
    search,
    unrank_multiset,
)

__all__ = [
    "__version__",
    # perms
    "Perm",
    "KSet",
    "ProductVector",
    "InvalidPermutation",
    "DuplicateEntry",
    "Overflow",
    "CompletionExplosion",
    "make_permutation",
    "make_kset",
    "identity",
    "inverse",
    "compose",
    "ensure_capacity",
    "evaluate_v",
    "product_vector",
    "optimal_completion",
    "count_optimal_completions",
    "all_optimal_completions",
    "base_key",
    "canonicalize",
    "canonicalize_exhaustive",
    # closed forms
    "ClosedFormAnswer",
    "Source",
    "vmax",
    "vmin_closed",
    "nmin_trivial",
    "nmax",
    # search
    "Mode",
    "SearchConfig",
    "SearchResult",
    "InvalidConfig",
    "InstanceTooLarge",
    "search",
    "brute_force_oracle",
    "partition_space",
    "multiset_count",
    "rank_multiset",
    "unrank_multiset",
    # results
    "Quantity",
    "Method",
    "Direction",
    "A260355_DIRECTION",
    "COLUMN_SEQUENCES",
    "ANTIDIAGONAL_ID",
    "ResultRecord",
    "SequenceRecord",
    "VerifyReport",
    "ConflictDetected",
    "MissingCell",
    "ParseError",
    "UnknownSequence",
    "make_record",
    "store_append",
    "read_store",
    "load_store",
    "emit_bfile",
    "parse_bfile",
    "antidiagonal_sequence",
    "verify_against_reference",
    "reference_bfile",
    "fetch_reference",
    "render_table",
    "format_permutation",
    "format_kset",
]
