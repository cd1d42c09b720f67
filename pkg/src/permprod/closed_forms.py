"""Exact closed forms for the extremal values where they exist.

The maximum of v is always the power sum (all members identical) and the
minimizing side has exact answers on the boundary of the table: n = 1,
k = 1, n = 2, and k = 2.  Everything else requires search; callers compose
the fast path and the search engine explicitly, so this module stays
dependency-free.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .perms import ensure_capacity


class Source(Enum):
    """Which formula produced a closed-form answer."""

    VMAX_POWER_SUM = "VMaxPowerSum"
    N1 = "N1"
    K1 = "K1"
    N2_EVEN = "N2Even"
    N2_ODD = "N2Odd"
    K2_TRIANGULAR = "K2Triangular"
    NMIN_TRIVIAL = "NminTrivial"
    NMAX_ALWAYS = "NmaxAlways"


@dataclass(frozen=True)
class ClosedFormAnswer:
    value: int
    source: Source


def vmax(n: int, k: int) -> int:
    """Maximum of v: sum of i**k, achieved by k copies of one permutation.

    >>> vmax(3, 3)
    36
    """
    ensure_capacity(n, k)
    return sum(i**k for i in range(1, n + 1))


def vmin_closed(n: int, k: int) -> ClosedFormAnswer | None:
    """Exact v_min on the boundary cases, else None (search required).

    - n = 1: the single permutation gives v = 1 for every k.
    - k = 1: v is the triangular number n(n+1)/2 for any permutation.
    - n = 2: 2**(k/2 + 1) for even k (half of each permutation),
      3 * 2**m for k = 2m + 1 (an m / m+1 split).
    - k = 2: n(n+1)(n+2)/6, attained by pairing a permutation with its
      reverse (rearrangement bound).
    """
    if n < 1 or k < 1:
        raise ValueError(f"need n >= 1 and k >= 1, got n={n}, k={k}")
    ensure_capacity(n, k)
    if n == 1:
        return ClosedFormAnswer(1, Source.N1)
    if k == 1:
        return ClosedFormAnswer(n * (n + 1) // 2, Source.K1)
    if n == 2:
        if k % 2 == 0:
            return ClosedFormAnswer(2 ** (k // 2 + 1), Source.N2_EVEN)
        m = (k - 1) // 2
        return ClosedFormAnswer(3 * 2**m, Source.N2_ODD)
    if k == 2:
        return ClosedFormAnswer(n * (n + 1) * (n + 2) // 6, Source.K2_TRIANGULAR)
    return None


def nmin_trivial(n: int, k: int) -> int | None:
    """1 when n <= 2 or k <= 2 (the minimizer class is unique), else None."""
    if n < 1 or k < 1:
        raise ValueError(f"need n >= 1 and k >= 1, got n={n}, k={k}")
    if n <= 2 or k <= 2:
        return 1
    return None


def nmax(n: int, k: int) -> int:
    """Number of classes attaining the maximum: always exactly one."""
    if n < 1 or k < 1:
        raise ValueError(f"need n >= 1 and k >= 1, got n={n}, k={k}")
    return 1
