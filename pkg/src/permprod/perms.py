"""Permutation and k-set primitives.

A *k-set* is a multiset of k permutations of {1..n}.  Its value is

    v = sum over positions i of the product of the i-th entries,

which is invariant both under reordering the multiset and under composing
every member with a common position-permutation sigma.  This module provides
construction and validation, evaluation of v, the position-wise product
vector of a partial multiset, the rearrangement-optimal completion (pair
the largest products with the smallest values), base-(n+1) ordering keys,
and canonicalization under the simultaneous-composition equivalence.

All types are immutable and all operations are pure functions.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

Perm = tuple[int, ...]

#: Values and products are contractually capped at 128 bits; instances with
#: n**(k+1) at or above this bound are rejected up front.
CAPACITY_BITS = 127


class InvalidPermutation(ValueError):
    """Entries do not form a bijection on {1..n}."""


class DuplicateEntry(InvalidPermutation):
    """A value appears more than once."""


class Overflow(OverflowError):
    """The instance exceeds the supported 128-bit value range."""


class CompletionExplosion(RuntimeError):
    """The number of tied optimal completions exceeds the caller's cap."""


def ensure_capacity(n: int, k: int) -> None:
    """Reject instances whose values could exceed 128 bits.

    Any value of a k-set over {1..n} is at most n**(k+1), so that bound is
    checked once up front instead of guarding every multiplication.
    """
    if n < 1 or k < 0:
        raise ValueError(f"need n >= 1 and k >= 0, got n={n}, k={k}")
    if n == 1:
        return
    # Exact integer comparison; for absurdly large k skip the bignum pow.
    if k > 512 or n ** (k + 1) >= 1 << CAPACITY_BITS:
        raise Overflow(f"n**(k+1) = {n}**{k + 1} exceeds 128-bit capacity")


def make_permutation(entries: Sequence[int]) -> Perm:
    """Validate and return a permutation of {1..n}, n = len(entries).

    >>> make_permutation([3, 1, 2])
    (3, 1, 2)
    >>> make_permutation([1, 1, 3])
    Traceback (most recent call last):
        ...
    permprod.perms.DuplicateEntry: duplicate entry 1 in (1, 1, 3)
    """
    p = tuple(int(e) for e in entries)
    n = len(p)
    if n == 0:
        raise InvalidPermutation("empty permutation")
    seen = [False] * n
    for e in p:
        if not 1 <= e <= n:
            raise InvalidPermutation(f"entry {e} out of range 1..{n} in {p}")
        if seen[e - 1]:
            raise DuplicateEntry(f"duplicate entry {e} in {p}")
        seen[e - 1] = True
    return p


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, e in enumerate(p):
        inv[e - 1] = i + 1
    return tuple(inv)


def compose(p: Perm, q: Perm) -> Perm:
    """(p o q)(i) = p(q(i)), one-based."""
    return tuple(p[q[i] - 1] for i in range(len(p)))


@dataclass(frozen=True)
class KSet:
    """A multiset of k permutations over a common n.

    Members are stored sorted ascending, which for equal-length tuples is
    exactly ascending base-(n+1) key order, so equal multisets compare equal.
    """

    n: int
    perms: tuple[Perm, ...]

    def __post_init__(self) -> None:
        if not self.perms:
            raise ValueError("a k-set needs at least one permutation")
        validated = tuple(make_permutation(p) for p in self.perms)
        for p in validated:
            if len(p) != self.n:
                raise InvalidPermutation(
                    f"permutation {p} has length {len(p)}, expected n={self.n}"
                )
        object.__setattr__(self, "perms", tuple(sorted(validated)))

    @property
    def k(self) -> int:
        return len(self.perms)


def make_kset(perms: Sequence[Sequence[int]], n: int | None = None) -> KSet:
    """Build a KSet, inferring n from the first permutation if not given."""
    seq = [tuple(p) for p in perms]
    if not seq:
        raise ValueError("a k-set needs at least one permutation")
    return KSet(n=len(seq[0]) if n is None else n, perms=tuple(seq))


@dataclass(frozen=True)
class ProductVector:
    """Position-wise products of some permutations' entries."""

    n: int
    products: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.products) != self.n:
            raise ValueError(
                f"product vector has length {len(self.products)}, expected {self.n}"
            )
        if any(e < 1 for e in self.products):
            raise ValueError("product vector entries must be positive")


def evaluate_v(s: KSet) -> int:
    """v = sum over positions of the product of member entries.

    >>> evaluate_v(make_kset([(1, 2, 3), (2, 3, 1), (3, 1, 2)]))
    18
    """
    ensure_capacity(s.n, s.k)
    return sum(math.prod(p[i] for p in s.perms) for i in range(s.n))


def product_vector(perms: Sequence[Perm], n: int) -> ProductVector:
    """Entrywise product of the given permutations; empty input gives all ones."""
    ensure_capacity(n, len(perms))
    validated = [make_permutation(p) for p in perms]
    for p in validated:
        if len(p) != n:
            raise InvalidPermutation(
                f"permutation {p} has length {len(p)}, expected n={n}"
            )
    return ProductVector(
        n=n, products=tuple(math.prod(p[i] for p in validated) for i in range(n))
    )


def optimal_completion(pv: ProductVector) -> tuple[int, Perm]:
    """Minimal dot product of pv with a permutation of {1..n}, and a witness.

    The minimum pairs the largest products with the smallest values.  Among
    tied witnesses the one with the smallest base-(n+1) key is returned:
    positions with equal products receive their value block in ascending
    position order.

    >>> optimal_completion(ProductVector(3, (2, 6, 3)))
    (18, (3, 1, 2))
    >>> optimal_completion(ProductVector(3, (1, 1, 1)))
    (6, (1, 2, 3))
    """
    n = pv.n
    order = sorted(range(n), key=lambda i: (-pv.products[i], i))
    c = [0] * n
    for value, i in enumerate(order, start=1):
        c[i] = value
    return sum(pv.products[i] * c[i] for i in range(n)), tuple(c)


def count_optimal_completions(pv: ProductVector) -> int:
    """Number of permutations achieving the minimal dot product with pv.

    Equal products may trade values within their block, so the count is the
    product of the factorials of the multiplicities of pv's entries.
    """
    count = 1
    for _, group in itertools.groupby(sorted(pv.products)):
        count *= math.factorial(sum(1 for _ in group))
    return count


def all_optimal_completions(pv: ProductVector, cap: int = 10**6) -> Iterator[Perm]:
    """Lazily enumerate every permutation achieving the minimal dot product.

    The count (product of multiplicity factorials) is checked eagerly:
    if it exceeds ``cap`` a CompletionExplosion is raised before anything
    is produced, so callers never receive a silently truncated answer.
    """
    if cap < 1:
        raise ValueError(f"cap must be >= 1, got {cap}")
    total = count_optimal_completions(pv)
    if total > cap:
        raise CompletionExplosion(
            f"{total} tied optimal completions exceed cap {cap}"
        )
    n = pv.n
    # Blocks of equal product, largest product first; block b holds the
    # value range start..start+len-1 and any bijection onto it is optimal.
    blocks: list[list[int]] = []
    for _, group in itertools.groupby(
        sorted(range(n), key=lambda i: (-pv.products[i], i)),
        key=lambda i: pv.products[i],
    ):
        blocks.append(list(group))
    starts = []
    next_value = 1
    for block in blocks:
        starts.append(next_value)
        next_value += len(block)

    def generate() -> Iterator[Perm]:
        choices = [
            itertools.permutations(range(start, start + len(block)))
            for block, start in zip(blocks, starts)
        ]
        for assignment in itertools.product(*choices):
            c = [0] * n
            for block, values in zip(blocks, assignment):
                for i, value in zip(block, values):
                    c[i] = value
            yield tuple(c)

    return generate()


def base_key(s: KSet) -> int:
    """Concatenated member digits read as a base-(n+1) number.

    >>> base_key(make_kset([(1, 2, 3)]))
    27
    >>> base_key(make_kset([(1, 2), (2, 1)]))
    52
    """
    b = s.n + 1
    key = 0
    for p in s.perms:
        for d in p:
            key = key * b + d
    return key


def canonicalize(s: KSet) -> KSet:
    """Smallest-base-key representative of s under simultaneous composition.

    Over all position-permutations sigma the candidate multisets are
    {p o sigma for p in s}; the minimal key's first sorted member must be
    the identity, which forces sigma to be the inverse of some member, so
    only those (distinct) candidates are tried.  Exact, and idempotent.

    >>> canonicalize(make_kset([(2, 3, 1), (3, 1, 2), (1, 2, 3)])).perms
    ((1, 2, 3), (2, 3, 1), (3, 1, 2))
    """
    best: tuple[Perm, ...] | None = None
    for r in set(s.perms):
        sigma = inverse(r)
        candidate = tuple(sorted(compose(p, sigma) for p in s.perms))
        if best is None or candidate < best:
            best = candidate
    assert best is not None
    return KSet(n=s.n, perms=best)


def canonicalize_exhaustive(s: KSet) -> KSet:
    """Reference canonicalization minimizing over all n! compositions.

    Slow but assumption-free; kept as the trust anchor for canonicalize.
    """
    best: tuple[Perm, ...] | None = None
    for sigma in itertools.permutations(range(1, s.n + 1)):
        candidate = tuple(sorted(compose(p, sigma) for p in s.perms))
        if best is None or candidate < best:
            best = candidate
    assert best is not None
    return KSet(n=s.n, perms=best)
