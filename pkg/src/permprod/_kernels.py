"""Compiled inner loops for the exhaustive sweep.

The search walks combinations-with-replacement of permutation indices in
lexicographic order.  A prefix-product table keeps the position-wise
products current as the multiset advances (only the changed suffix is
recomputed, amortized O(n) per node), and each node is finished by the
rearrangement completion: sort the products ascending and dot them with
the descending weights n, n-1, ..., 1.

Only instances with n**(k+1) < 2**63 reach these kernels; the driver
falls back to arbitrary-precision Python above that.  Permutation matrices
are int8 (entries <= 15), promoted to int64 inside the product updates.
"""

from __future__ import annotations

import numpy as np
from numba import njit

INT64_MAX = np.int64(2**63 - 1)


@njit(cache=True)
def fill_perm_matrix(out):
    """Fill out (shape P x n) with all permutations of 1..n in lex order."""
    P, n = out.shape
    cur = np.empty(n, dtype=np.int8)
    for c in range(n):
        cur[c] = c + 1
    for r in range(P):
        for c in range(n):
            out[r, c] = cur[c]
        i = n - 2
        while i >= 0 and cur[i] >= cur[i + 1]:
            i -= 1
        if i >= 0:
            j = n - 1
            while cur[j] <= cur[i]:
                j -= 1
            cur[i], cur[j] = cur[j], cur[i]
            lo = i + 1
            hi = n - 1
            while lo < hi:
                cur[lo], cur[hi] = cur[hi], cur[lo]
                lo += 1
                hi -= 1


@njit(nogil=True, cache=True)
def sweep_min(perms, idx, count):
    """Minimum completed value over `count` multisets starting at `idx`.

    perms: (P, n) int8 matrix of all permutations in lex order.
    idx:   int64 array of m non-decreasing row indices (the start multiset);
           modified in place as the sweep advances.
    """
    P, n = perms.shape
    m = idx.shape[0]
    pref = np.empty((m, n), dtype=np.int64)
    for c in range(n):
        pref[0, c] = c + 1
    for t in range(1, m):
        for c in range(n):
            pref[t, c] = pref[t - 1, c] * perms[idx[t - 1], c]
    pv = np.empty(n, dtype=np.int64)
    best = INT64_MAX
    remaining = count
    while remaining > 0:
        j = idx[m - 1]
        base = pref[m - 1]
        while j < P and remaining > 0:
            row = perms[j]
            for c in range(n):
                pv[c] = base[c] * row[c]
            for a in range(1, n):
                key = pv[a]
                b = a - 1
                while b >= 0 and pv[b] > key:
                    pv[b + 1] = pv[b]
                    b -= 1
                pv[b + 1] = key
            v = np.int64(0)
            for c in range(n):
                v += pv[c] * (n - c)
            if v < best:
                best = v
            j += 1
            remaining -= 1
        if remaining <= 0:
            break
        t = m - 2
        while t >= 0 and idx[t] == P - 1:
            t -= 1
        if t < 0:
            break
        nxt = idx[t] + 1
        for u in range(t, m):
            idx[u] = nxt
        for u in range(t + 1, m):
            for c in range(n):
                pref[u, c] = pref[u - 1, c] * perms[idx[u - 1], c]
    return best


@njit(nogil=True, cache=True)
def sweep_collect(perms, idx, count, start_rank, target, out_ranks):
    """Record ranks whose completed value equals `target`.

    Same walk as sweep_min over `count` multisets beginning at global rank
    `start_rank`.  Matching ranks go into out_ranks until it is full; the
    total number of matches is returned regardless, so the caller can
    detect overflow and retry with a larger buffer.
    """
    P, n = perms.shape
    m = idx.shape[0]
    cap = out_ranks.shape[0]
    pref = np.empty((m, n), dtype=np.int64)
    for c in range(n):
        pref[0, c] = c + 1
    for t in range(1, m):
        for c in range(n):
            pref[t, c] = pref[t - 1, c] * perms[idx[t - 1], c]
    pv = np.empty(n, dtype=np.int64)
    found = np.int64(0)
    rank = start_rank
    remaining = count
    while remaining > 0:
        j = idx[m - 1]
        base = pref[m - 1]
        while j < P and remaining > 0:
            row = perms[j]
            for c in range(n):
                pv[c] = base[c] * row[c]
            for a in range(1, n):
                key = pv[a]
                b = a - 1
                while b >= 0 and pv[b] > key:
                    pv[b + 1] = pv[b]
                    b -= 1
                pv[b + 1] = key
            v = np.int64(0)
            for c in range(n):
                v += pv[c] * (n - c)
            if v == target:
                if found < cap:
                    out_ranks[found] = rank
                found += 1
            j += 1
            rank += 1
            remaining -= 1
        if remaining <= 0:
            break
        t = m - 2
        while t >= 0 and idx[t] == P - 1:
            t -= 1
        if t < 0:
            break
        nxt = idx[t] + 1
        for u in range(t, m):
            idx[u] = nxt
        for u in range(t + 1, m):
            for c in range(n):
                pref[u, c] = pref[u - 1, c] * perms[idx[u - 1], c]
    return found
