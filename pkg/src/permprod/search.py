"""Exhaustive search for v_min and the census of minimizing k-sets.

One member of a minimizing multiset can always be fixed to the identity
(compose everything with a member's inverse), and the final member is
determined by the rearrangement completion, so the search space is the
combinations-with-replacement of k-2 permutations drawn from all n!.
Multisets are enumerated in lexicographic order over permutations in lex
order; the position of a multiset in that order is its *rank*, which is
what partitioning, checkpointing and the collect pass all speak in.

Counting runs in two passes: a value-only sweep establishes v_min, then a
second sweep records the ranks whose completed value matches it exactly.
Each matching multiset is expanded through every tied optimal completion,
canonicalized, and deduplicated by base key, so memory stays proportional
to the answer rather than to the stream of superseded minima.

The naive oracle enumerates all (n!)**(k-1) ordered tuples with no
rearrangement shortcut and canonicalizes by minimizing over all n!
compositions; it shares nothing with the fast path but the primitive
types, and is the trust anchor the fast path is tested against.
"""

from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from . import _kernels
from .perms import (
    KSet,
    Perm,
    ProductVector,
    all_optimal_completions,
    canonicalize,
    canonicalize_exhaustive,
    ensure_capacity,
    identity,
    optimal_completion,
    product_vector,
)

#: Hard cap on the naive oracle: (n!)**(k-1) ordered tuples.
ORACLE_NODE_LIMIT = 10**8

#: Above this the int64 kernels could overflow (value <= n**(k+1)) and the
#: sweep falls back to arbitrary-precision Python.
_INT64_VALUE_BOUND = 2**63

ProgressFn = Callable[[int, int, int], None]


class InvalidConfig(ValueError):
    """Search configuration violates a documented precondition."""


class InstanceTooLarge(ValueError):
    """The naive oracle refuses instances beyond its node limit."""


class Mode(Enum):
    VALUE_ONLY = "ValueOnly"
    COUNT_MINIMIZERS = "CountMinimizers"
    LIST_MINIMIZERS = "ListMinimizers"


@dataclass(frozen=True)
class SearchConfig:
    n: int
    k: int
    mode: Mode = Mode.VALUE_ONLY
    workers: int = 1
    completion_cap: int = 10**6
    checkpoint_interval: int = 0


@dataclass(frozen=True)
class SearchResult:
    n: int
    k: int
    v_min: int
    n_min: int | None
    lex_min_set: KSet | None
    enumerated: int
    elapsed: float
    minimizers: tuple[KSet, ...] | None = None


def _validate(cfg: SearchConfig) -> None:
    if not isinstance(cfg.mode, Mode):
        raise InvalidConfig(f"unknown mode {cfg.mode!r}")
    if not 1 <= cfg.n <= 15:
        raise InvalidConfig(f"n must be in 1..15, got {cfg.n}")
    if cfg.k < 1:
        raise InvalidConfig(f"k must be >= 1, got {cfg.k}")
    if cfg.workers < 1:
        raise InvalidConfig(f"workers must be >= 1, got {cfg.workers}")
    if cfg.completion_cap < 1:
        raise InvalidConfig(f"completion_cap must be >= 1, got {cfg.completion_cap}")
    if cfg.checkpoint_interval < 0:
        raise InvalidConfig(
            f"checkpoint_interval must be >= 0, got {cfg.checkpoint_interval}"
        )


# ---------------------------------------------------------------------------
# Multiset ranking over the lexicographic combinations-with-replacement order.

def multiset_count(P: int, m: int) -> int:
    """Number of size-m multisets from P objects: C(P+m-1, m)."""
    return math.comb(P + m - 1, m)


def unrank_multiset(rank: int, P: int, m: int) -> tuple[int, ...]:
    """The rank-th non-decreasing m-tuple over 0..P-1, lex order."""
    total = multiset_count(P, m)
    if not 0 <= rank < total:
        raise ValueError(f"rank {rank} outside [0, {total})")
    if m == 0:
        return ()
    if m == 1:
        return (rank,)
    out = []
    lo = 0
    for pos in range(m):
        remaining = m - pos - 1
        for c in range(lo, P):
            # multisets of the remaining positions confined to c..P-1
            block = math.comb(P - c + remaining - 1, remaining)
            if rank < block:
                out.append(c)
                lo = c
                break
            rank -= block
    return tuple(out)


def rank_multiset(values: Sequence[int], P: int) -> int:
    """Inverse of unrank_multiset."""
    m = len(values)
    rank = 0
    lo = 0
    for pos, v in enumerate(values):
        if not lo <= v < P:
            raise ValueError(f"tuple {tuple(values)} is not non-decreasing over 0..{P - 1}")
        remaining = m - pos - 1
        for c in range(lo, v):
            rank += math.comb(P - c + remaining - 1, remaining)
        lo = v
    return rank


def _split(total: int, parts: int) -> list[tuple[int, int]]:
    base, extra = divmod(total, parts)
    ranges = []
    start = 0
    for i in range(parts):
        stop = start + base + (1 if i < extra else 0)
        ranges.append((start, stop))
        start = stop
    return ranges


def partition_space(n: int, k: int, workers: int) -> list[tuple[int, int]]:
    """Split the rank space of (k-2)-multisets into `workers` stable ranges.

    Ranges are contiguous half-open [start, stop) rank intervals, disjoint,
    covering [0, C(n!+k-3, k-2)), and depend only on (n, k, workers).
    """
    if not 1 <= n <= 15:
        raise InvalidConfig(f"n must be in 1..15, got {n}")
    if k < 2:
        raise InvalidConfig(f"k must be >= 2, got {k}")
    if workers < 1:
        raise InvalidConfig(f"workers must be >= 1, got {workers}")
    return _split(multiset_count(math.factorial(n), k - 2), workers)


# ---------------------------------------------------------------------------
# Permutation tables.

@lru_cache(maxsize=2)
def _perm_matrix(n: int) -> np.ndarray:
    """All n! permutations of 1..n as an int8 matrix in lex order.

    Filled in compiled code: materializing n! Python tuples first would be
    prohibitive for n >= 10.  Treated as read-only by every consumer.
    """
    out = np.empty((math.factorial(n), n), dtype=np.int8)
    _kernels.fill_perm_matrix(out)
    return out


def _row_tuple(mat: np.ndarray, i: int) -> Perm:
    return tuple(int(x) for x in mat[i])


_warmed = False


def _warm_kernels() -> None:
    """Compile (or load from cache) both kernels before any threads start."""
    global _warmed
    if _warmed:
        return
    mat = _perm_matrix(2)
    _kernels.sweep_min(mat, np.zeros(1, dtype=np.int64), 1)
    _kernels.sweep_collect(
        mat, np.zeros(1, dtype=np.int64), 1, 0, -1, np.empty(4, dtype=np.int64)
    )
    _warmed = True


# ---------------------------------------------------------------------------
# The search itself.

def _chunk_ranges(total: int, workers: int, checkpoint_interval: int) -> list[tuple[int, int]]:
    if checkpoint_interval > 0:
        size = checkpoint_interval
    else:
        size = max(10**6, -(-total // (8 * workers)))
    parts = max(workers, -(-total // size))
    parts = min(parts, total, 10_000) or 1
    return _split(total, parts)


def _trivial_result(
    cfg: SearchConfig, v_min: int, kset: KSet, enumerated: int, t0: float
) -> SearchResult:
    counting = cfg.mode is not Mode.VALUE_ONLY
    return SearchResult(
        n=cfg.n,
        k=cfg.k,
        v_min=v_min,
        n_min=1 if counting else None,
        lex_min_set=kset if counting else None,
        enumerated=enumerated,
        elapsed=time.perf_counter() - t0,
        minimizers=(kset,) if cfg.mode is Mode.LIST_MINIMIZERS else None,
    )


def search(cfg: SearchConfig, progress: ProgressFn | None = None) -> SearchResult:
    """Exhaustive sweep for v_min(n, k), optionally counting minimizers.

    ``progress``, when given, is called as progress(pass_no, done, total)
    with cumulative node counts after each internal chunk; the chunk size
    follows checkpoint_interval when positive, else an automatic split.
    """
    _validate(cfg)
    ensure_capacity(cfg.n, cfg.k)
    t0 = time.perf_counter()
    n, k = cfg.n, cfg.k
    counting = cfg.mode is not Mode.VALUE_ONLY

    # Degenerate sizes have unique answers and no multiset space to sweep.
    if n == 1:
        kset = KSet(n=1, perms=((1,),) * k)
        return _trivial_result(cfg, 1, kset, 1 if k >= 2 else 0, t0)
    if k == 1:
        kset = KSet(n=n, perms=(identity(n),))
        return _trivial_result(cfg, n * (n + 1) // 2, kset, 0, t0)

    m = k - 2
    P = math.factorial(n)
    total = multiset_count(P, m)

    if m == 0:
        pv = product_vector((identity(n),), n)
        v_min, _ = optimal_completion(pv)
        match_ranks: list[int] = [0] if counting else []
        perm_at: Callable[[int], Perm] = lambda i: _row_tuple(_perm_matrix(n), i)
    elif n ** (k + 1) >= _INT64_VALUE_BOUND:
        v_min, match_ranks, perm_at = _python_sweep(n, m, counting, progress)
    else:
        v_min, match_ranks, perm_at = _compiled_sweep(cfg, P, m, total, counting, progress)

    n_min = None
    lex_min_set = None
    minimizers = None
    if counting:
        classes: dict[tuple[Perm, ...], KSet] = {}
        ident = identity(n)
        for rank in match_ranks:
            members = tuple(perm_at(i) for i in unrank_multiset(rank, P, m))
            pv = product_vector((ident,) + members, n)
            for c in all_optimal_completions(pv, cfg.completion_cap):
                canon = canonicalize(KSet(n=n, perms=(ident,) + members + (c,)))
                classes[canon.perms] = canon
        n_min = len(classes)
        ordered = sorted(classes)
        lex_min_set = classes[ordered[0]]
        if cfg.mode is Mode.LIST_MINIMIZERS:
            minimizers = tuple(classes[key] for key in ordered)

    return SearchResult(
        n=n,
        k=k,
        v_min=v_min,
        n_min=n_min,
        lex_min_set=lex_min_set,
        enumerated=total,
        elapsed=time.perf_counter() - t0,
        minimizers=minimizers,
    )


def _compiled_sweep(
    cfg: SearchConfig,
    P: int,
    m: int,
    total: int,
    counting: bool,
    progress: ProgressFn | None,
) -> tuple[int, list[int], Callable[[int], Perm]]:
    """Two-pass int64 sweep over chunked rank ranges, threaded when asked."""
    _warm_kernels()
    mat = _perm_matrix(cfg.n)
    chunks = _chunk_ranges(total, cfg.workers, cfg.checkpoint_interval)

    def run_min(start: int, stop: int) -> int:
        if start >= stop:
            return int(_kernels.INT64_MAX)
        idx0 = np.asarray(unrank_multiset(start, P, m), dtype=np.int64)
        return int(_kernels.sweep_min(mat, idx0, stop - start))

    def run_collect(start: int, stop: int, target: int) -> list[int]:
        if start >= stop:
            return []
        bufsize = 1 << 16
        while True:
            idx0 = np.asarray(unrank_multiset(start, P, m), dtype=np.int64)
            buf = np.empty(bufsize, dtype=np.int64)
            found = int(_kernels.sweep_collect(mat, idx0, stop - start, start, target, buf))
            if found <= bufsize:
                return buf[:found].tolist()
            bufsize = found

    def run_pass(pass_no: int, fn: Callable[[int, int], object]) -> list:
        done = 0
        out: list = [None] * len(chunks)
        if cfg.workers == 1:
            for i, (start, stop) in enumerate(chunks):
                out[i] = fn(start, stop)
                done += stop - start
                if progress is not None:
                    progress(pass_no, done, total)
        else:
            with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
                futures = {
                    pool.submit(fn, start, stop): (i, stop - start)
                    for i, (start, stop) in enumerate(chunks)
                }
                for future in as_completed(futures):
                    i, size = futures[future]
                    out[i] = future.result()
                    done += size
                    if progress is not None:
                        progress(pass_no, done, total)
        return out

    v_min = min(run_pass(1, run_min))
    match_ranks: list[int] = []
    if counting:
        collected = run_pass(2, lambda a, b: run_collect(a, b, v_min))
        for ranks in collected:
            match_ranks.extend(ranks)
    return v_min, match_ranks, lambda i: _row_tuple(mat, i)


def _python_sweep(
    n: int, m: int, counting: bool, progress: ProgressFn | None
) -> tuple[int, list[int], Callable[[int], Perm]]:
    """Arbitrary-precision fallback for values beyond int64 (single pass set).

    Only reachable for tiny n with very large k, where the rank space is
    modest; runs single-threaded with the same enumeration order and the
    same two-pass policy as the compiled path.
    """
    rows = sorted(itertools.permutations(range(1, n + 1)))
    weights = tuple(range(n, 0, -1))
    total = multiset_count(len(rows), m)

    def completed(member_idx: tuple[int, ...]) -> int:
        prods = list(range(1, n + 1))
        for i in member_idx:
            row = rows[i]
            prods = [a * b for a, b in zip(prods, row)]
        return sum(w * p for w, p in zip(weights, sorted(prods)))

    v_min: int | None = None
    for member_idx in itertools.combinations_with_replacement(range(len(rows)), m):
        value = completed(member_idx)
        if v_min is None or value < v_min:
            v_min = value
    assert v_min is not None
    if progress is not None:
        progress(1, total, total)

    match_ranks: list[int] = []
    if counting:
        for rank, member_idx in enumerate(
            itertools.combinations_with_replacement(range(len(rows)), m)
        ):
            if completed(member_idx) == v_min:
                match_ranks.append(rank)
        if progress is not None:
            progress(2, total, total)
    return v_min, match_ranks, lambda i: rows[i]


def brute_force_oracle(n: int, k: int) -> SearchResult:
    """Independent validator: no rearrangement shortcut, no fast canonicalize.

    Fixes the first member to the identity (every equivalence class has such
    a representative), walks all (n!)**(k-1) ordered tuples for the rest,
    evaluates v directly, then canonicalizes every minimizer by the full
    n!-composition loop and dedups.
    """
    if n < 1 or k < 1:
        raise InvalidConfig(f"need n >= 1 and k >= 1, got n={n}, k={k}")
    nodes = math.factorial(n) ** (k - 1)
    if nodes > ORACLE_NODE_LIMIT:
        raise InstanceTooLarge(
            f"(n!)**(k-1) = {nodes} exceeds the oracle limit {ORACLE_NODE_LIMIT}"
        )
    ensure_capacity(n, k)
    t0 = time.perf_counter()
    rows = sorted(itertools.permutations(range(1, n + 1)))
    ident = identity(n)
    best: int | None = None
    best_tails: list[tuple[Perm, ...]] = []
    for tail in itertools.product(rows, repeat=k - 1):
        v = 0
        for i in range(n):
            term = i + 1
            for p in tail:
                term *= p[i]
            v += term
        if best is None or v < best:
            best = v
            best_tails = [tail]
        elif v == best:
            best_tails.append(tail)
    assert best is not None
    classes: dict[tuple[Perm, ...], KSet] = {}
    for tail in best_tails:
        canon = canonicalize_exhaustive(KSet(n=n, perms=(ident,) + tail))
        classes[canon.perms] = canon
    ordered = sorted(classes)
    return SearchResult(
        n=n,
        k=k,
        v_min=best,
        n_min=len(classes),
        lex_min_set=classes[ordered[0]],
        enumerated=nodes,
        elapsed=time.perf_counter() - t0,
        minimizers=tuple(classes[key] for key in ordered),
    )
