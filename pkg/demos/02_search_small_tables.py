"""
Exhaustive search with symmetry reduction
=========================================

Interior cells of the v_min table have no closed form; they are found by
sweeping every multiset of k-2 permutations (one member is pinned to the
identity, the last is filled in by the rearrangement completion).  The
sweep size is C(n!+k-3, k-2), which is what makes n=6, k=6 a ten-minute
job and n=7, k=6 a non-starter.
"""

import math

from permprod import (
    Mode,
    SearchConfig,
    multiset_count,
    partition_space,
    search,
    unrank_multiset,
    vmax,
)

# ---------------------------------------------------------------------------
# A single cell.  ValueOnly is the cheap mode: no counting, no listing.

result = search(SearchConfig(n=4, k=4))
print("v_min(4,4) =", result.v_min)
print("nodes swept:", result.enumerated, "= C(4!+1, 2) =",
      multiset_count(math.factorial(4), 2))
print(f"elapsed: {result.elapsed * 1000:.1f} ms")

# ---------------------------------------------------------------------------
# A small corner of the v_min table, with v_max alongside for contrast.

print("\nn\\k     2      3      4      5")
for n in range(2, 6):
    row = [search(SearchConfig(n, k)).v_min for k in range(2, 6)]
    print(n, " ".join(f"{v:6d}" for v in row))

print("\nvmax row (n=4):", [vmax(4, k) for k in range(2, 6)])

# ---------------------------------------------------------------------------
# Progress reporting.  checkpoint_interval sets how many nodes go between
# callbacks; the sweep runs in two passes when minimizers are requested
# (pass 1 finds the value, pass 2 re-walks to collect exact matches).

ticks = []
search(
    SearchConfig(5, 5, Mode.COUNT_MINIMIZERS, checkpoint_interval=100_000),
    progress=lambda pass_no, done, total: ticks.append((pass_no, done, total)),
)
print("\nprogress ticks for (5,5):", len(ticks))
print("first:", ticks[0], " last:", ticks[-1])

# ---------------------------------------------------------------------------
# The rank space splits into contiguous, worker-stable ranges, so threaded
# runs partition deterministically no matter how the pool schedules them.

print("\npartition_space(3, 4, workers=4):", partition_space(3, 4, 4))
ranges = partition_space(4, 6, 8)
print("(4,6) over 8 workers:", ranges[:3], "...")
print("covers", ranges[-1][1], "ranks =", multiset_count(24, 4))

# Any rank can be turned back into its multiset of permutation indices.
print("rank 100 of (4,6) sweep ->", unrank_multiset(100, 24, 4))

threaded = search(SearchConfig(4, 6, Mode.COUNT_MINIMIZERS, workers=4))
single = search(SearchConfig(4, 6, Mode.COUNT_MINIMIZERS, workers=1))
print("threaded == single-threaded:",
      (threaded.v_min, threaded.n_min) == (single.v_min, single.n_min))
