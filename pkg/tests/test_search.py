import importlib
import itertools
import math

import pytest

# the package re-exports the search *function* under the same name, so the
# module object has to come from importlib rather than attribute lookup
search_engine = importlib.import_module("permprod.search")
from permprod import (
    CompletionExplosion,
    InstanceTooLarge,
    InvalidConfig,
    Mode,
    Overflow,
    SearchConfig,
    brute_force_oracle,
    format_kset,
    identity,
    multiset_count,
    partition_space,
    rank_multiset,
    search,
    unrank_multiset,
    vmin_closed,
)


def test_multiset_rank_roundtrip_exhaustive():
    for P in (1, 2, 3, 6):
        for m in (0, 1, 2, 3):
            total = multiset_count(P, m)
            seen = []
            for r in range(total):
                t = unrank_multiset(r, P, m)
                assert len(t) == m
                assert all(0 <= x < P for x in t)
                assert tuple(sorted(t)) == t
                assert rank_multiset(t, P) == r
                seen.append(t)
            # lex order and completeness
            assert seen == sorted(seen)
            assert len(set(seen)) == total
    with pytest.raises(ValueError):
        unrank_multiset(6, 6, 1)


def test_unrank_matches_combinations_with_replacement():
    P, m = 6, 3
    expected = list(itertools.combinations_with_replacement(range(P), m))
    got = [unrank_multiset(r, P, m) for r in range(multiset_count(P, m))]
    assert got == expected


def test_partition_space_examples():
    assert partition_space(3, 3, 2) == [(0, 3), (3, 6)]
    assert partition_space(3, 4, 1) == [(0, 21)]
    ranges = partition_space(4, 2, 8)
    assert len(ranges) == 8
    assert ranges[0] == (0, 1)
    assert all(start == stop for start, stop in ranges[1:])


def test_partition_space_covers_and_is_stable():
    import random

    rng = random.Random(11)
    for _ in range(100):
        n = rng.randint(1, 4)
        k = rng.randint(2, 6)
        workers = rng.randint(1, 9)
        ranges = partition_space(n, k, workers)
        assert ranges == partition_space(n, k, workers)
        assert len(ranges) == workers
        total = multiset_count(math.factorial(n), k - 2)
        position = 0
        for start, stop in ranges:
            assert start == position and stop >= start
            position = stop
        assert position == total
        sizes = [stop - start for start, stop in ranges]
        assert max(sizes) - min(sizes) <= 1


def test_partition_space_validation():
    with pytest.raises(InvalidConfig):
        partition_space(3, 1, 2)
    with pytest.raises(InvalidConfig):
        partition_space(3, 3, 0)
    with pytest.raises(InvalidConfig):
        partition_space(16, 3, 2)


def test_search_value_only_examples():
    r = search(SearchConfig(3, 3))
    assert (r.v_min, r.n_min, r.lex_min_set, r.minimizers) == (18, None, None, None)
    assert r.enumerated == 6
    assert search(SearchConfig(2, 7)).v_min == 24


def test_search_counting_examples():
    r = search(SearchConfig(5, 3, Mode.COUNT_MINIMIZERS))
    assert (r.v_min, r.n_min) == (89, 3)
    assert format_kset(r.lex_min_set) == "12345, 34251, 52314"
    assert r.minimizers is None

    r = search(SearchConfig(3, 6, Mode.COUNT_MINIMIZERS))
    assert (r.v_min, r.n_min) == (108, 2)


def test_search_listing_example():
    r = search(SearchConfig(4, 4, Mode.LIST_MINIMIZERS))
    assert (r.v_min, r.n_min) == (96, 4)
    assert format_kset(r.lex_min_set) == "1234, 2143, 3412, 4321"
    assert len(r.minimizers) == 4
    assert r.minimizers[0] == r.lex_min_set
    keys = [m.perms for m in r.minimizers]
    assert keys == sorted(keys)
    for m in r.minimizers:
        assert m.perms[0] == identity(4)


def test_search_trivial_sizes():
    r = search(SearchConfig(1, 5, Mode.LIST_MINIMIZERS))
    assert (r.v_min, r.n_min) == (1, 1)
    assert r.lex_min_set.perms == ((1,),) * 5

    r = search(SearchConfig(6, 1, Mode.COUNT_MINIMIZERS))
    assert (r.v_min, r.n_min) == (21, 1)
    assert r.lex_min_set.perms == (identity(6),)

    # k=2 runs through the ordinary machinery: one empty multiset node.
    r = search(SearchConfig(5, 2, Mode.LIST_MINIMIZERS))
    assert (r.v_min, r.n_min) == (35, 1)
    assert r.enumerated == 1
    assert r.lex_min_set.perms == (identity(5), (5, 4, 3, 2, 1))


def test_search_enumerated_formula():
    for n in (2, 3):
        for k in range(2, 7):
            r = search(SearchConfig(n, k))
            assert r.enumerated == multiset_count(math.factorial(n), k - 2)


def test_search_agrees_with_closed_forms_wherever_defined():
    # every (n, k) <= (15, 15) with a closed form is cheap to search: the
    # nontrivial ones are n == 2 (at most 14 nodes) and k == 2 (one node)
    for n in range(1, 16):
        for k in range(1, 16):
            answer = vmin_closed(n, k)
            if answer is not None:
                assert search(SearchConfig(n, k)).v_min == answer.value, (n, k)


def test_search_validation():
    with pytest.raises(InvalidConfig):
        search(SearchConfig(0, 3))
    with pytest.raises(InvalidConfig):
        search(SearchConfig(16, 3))
    with pytest.raises(InvalidConfig):
        search(SearchConfig(3, 0))
    with pytest.raises(InvalidConfig):
        search(SearchConfig(3, 3, workers=0))
    with pytest.raises(InvalidConfig):
        search(SearchConfig(3, 3, completion_cap=0))
    with pytest.raises(InvalidConfig):
        search(SearchConfig(3, 3, checkpoint_interval=-1))
    with pytest.raises(InvalidConfig):
        search(SearchConfig(3, 3, mode="ValueOnly"))
    with pytest.raises(Overflow):
        search(SearchConfig(2, 130))


def test_completion_cap_aborts_counting():
    # The (2,3) minimizer comes from the tied product vector (2,2).
    with pytest.raises(CompletionExplosion):
        search(SearchConfig(2, 3, Mode.COUNT_MINIMIZERS, completion_cap=1))
    r = search(SearchConfig(2, 3, Mode.COUNT_MINIMIZERS, completion_cap=2))
    assert (r.v_min, r.n_min) == (6, 1)
    # value-only mode never expands completions
    assert search(SearchConfig(2, 3, completion_cap=1)).v_min == 6


def test_python_fallback_engine_beyond_int64():
    # 2**66 exceeds the int64 kernel range, so this takes the bignum path.
    r = search(SearchConfig(2, 65, Mode.COUNT_MINIMIZERS))
    assert r.v_min == vmin_closed(2, 65).value == 3 * 2**32
    assert r.n_min == 1
    assert r.enumerated == multiset_count(2, 63)


def test_python_fallback_agrees_with_kernels(monkeypatch):
    fast = search(SearchConfig(4, 4, Mode.LIST_MINIMIZERS))
    monkeypatch.setattr(search_engine, "_INT64_VALUE_BOUND", 1)
    slow = search(SearchConfig(4, 4, Mode.LIST_MINIMIZERS))
    assert slow.v_min == fast.v_min
    assert slow.n_min == fast.n_min
    assert slow.lex_min_set == fast.lex_min_set
    assert slow.minimizers == fast.minimizers


def test_progress_reporting_and_checkpoint_interval():
    calls = []
    search(
        SearchConfig(3, 5, Mode.COUNT_MINIMIZERS, checkpoint_interval=10),
        progress=lambda p, done, total: calls.append((p, done, total)),
    )
    total = multiset_count(6, 3)
    assert {p for p, _, _ in calls} == {1, 2}
    for pass_no in (1, 2):
        done = [d for p, d, t in calls if p == pass_no]
        assert done == sorted(done)
        assert done[-1] == total
        assert all(t == total for p, _, t in calls if p == pass_no)
    # interval 10 over 56 nodes means several checkpoints per pass
    assert len([1 for p, _, _ in calls if p == 1]) >= 5


def test_worker_count_does_not_change_results():
    base = search(SearchConfig(3, 4, Mode.LIST_MINIMIZERS, workers=1))
    threaded = search(SearchConfig(3, 4, Mode.LIST_MINIMIZERS, workers=3))
    assert base.v_min == threaded.v_min
    assert base.n_min == threaded.n_min
    assert base.lex_min_set == threaded.lex_min_set
    assert base.minimizers == threaded.minimizers
    assert base.enumerated == threaded.enumerated


def test_oracle_examples():
    r = brute_force_oracle(3, 3)
    assert (r.v_min, r.n_min) == (18, 1)
    assert format_kset(r.lex_min_set) == "123, 231, 312"
    assert r.enumerated == 36

    r = brute_force_oracle(2, 4)
    assert (r.v_min, r.n_min) == (8, 1)

    r = brute_force_oracle(4, 3)
    assert (r.v_min, r.n_min) == (44, 2)
    assert format_kset(r.lex_min_set) == "1234, 2341, 4213"


def test_oracle_guard():
    with pytest.raises(InstanceTooLarge):
        brute_force_oracle(6, 5)
    with pytest.raises(InvalidConfig):
        brute_force_oracle(0, 3)
