"""
Counting and listing the minimizing k-sets
==========================================

Two k-sets are equivalent when one is the other with every member composed
with a common position-permutation.  N_min counts the equivalence classes
attaining v_min; each class is reported by its canonical representative
(smallest base-(n+1) concatenation), and permutations past n=9 print with
letters (a=10, b=11, ...).
"""

from permprod import (
    Mode,
    SearchConfig,
    brute_force_oracle,
    format_kset,
    format_permutation,
    search,
)

# ---------------------------------------------------------------------------
# The census for (5,3): three nonequivalent sets achieve v_min = 89.

result = search(SearchConfig(5, 3, Mode.LIST_MINIMIZERS))
print("v_min(5,3) =", result.v_min, "  N_min =", result.n_min)
for kset in result.minimizers:
    print("  ", format_kset(kset))

# The lex-smallest one doubles as the cell's published representative.
print("representative:", format_kset(result.lex_min_set))

# ---------------------------------------------------------------------------
# N_min is wildly non-monotone.  The n=3 row for k = 3..12:

print("\nN_min(3,k) for k=3..12:")
counts = [search(SearchConfig(3, k, Mode.COUNT_MINIMIZERS)).n_min
          for k in range(3, 13)]
print(" ", counts)

# ---------------------------------------------------------------------------
# Letter notation appears from n=10 up.

big = search(SearchConfig(10, 3, Mode.LIST_MINIMIZERS))
print("\nv_min(10,3) =", big.v_min, "  N_min =", big.n_min)
print("lex-min set:", format_kset(big.lex_min_set))
print("one member, spelled out:", big.lex_min_set.perms[1],
      "->", format_permutation(big.lex_min_set.perms[1]))

# ---------------------------------------------------------------------------
# The naive oracle shares no code with the fast sweep: it walks all
# (n!)^(k-1) ordered tuples and canonicalizes by brute force over all n!
# common compositions.  Agreement on the full triple is the trust check.

fast = search(SearchConfig(4, 3, Mode.COUNT_MINIMIZERS))
slow = brute_force_oracle(4, 3)
print("\noracle check (4,3):")
print("  search:", fast.v_min, fast.n_min, format_kset(fast.lex_min_set))
print("  oracle:", slow.v_min, slow.n_min, format_kset(slow.lex_min_set))
print("  nodes:", fast.enumerated, "vs", slow.enumerated)
