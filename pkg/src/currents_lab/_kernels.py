"""Compiled inner loops for long words.

Orbit experiments push words to 10^5..10^6 letters; the pure-Python loops in
``free_group`` are kept for short inputs and as the reference behaviour.
"""
import numba
import numpy as np


@numba.njit(cache=True)
def least_rotation(s):
    n = s.shape[0]
    i, j, k = 0, 1, 0
    while i < n and j < n and k < n:
        a = s[(i + k) % n]
        b = s[(j + k) % n]
        if a == b:
            k += 1
            continue
        if a > b:
            i += k + 1
        else:
            j += k + 1
        if i == j:
            j += 1
        k = 0
    return min(i, j)


@numba.njit(cache=True)
def smallest_period(s):
    n = s.shape[0]
    fail = np.zeros(n, dtype=np.int64)
    k = 0
    for i in range(1, n):
        while k > 0 and s[i] != s[k]:
            k = fail[k - 1]
        if s[i] == s[k]:
            k += 1
        fail[i] = k
    p = n - fail[n - 1]
    if n % p == 0:
        return p
    return n


@numba.njit(cache=True)
def substitute(word, flat, offsets, rank):
    """Concatenate images ``flat[offsets[x+rank]:offsets[x+rank+1]]`` of each
    letter ``x`` and freely reduce across the joins."""
    total = 0
    for t in range(word.shape[0]):
        x = word[t] + rank
        total += offsets[x + 1] - offsets[x]
    out = np.empty(total, dtype=np.int8)
    top = 0
    for t in range(word.shape[0]):
        x = word[t] + rank
        lo = offsets[x]
        hi = offsets[x + 1]
        while top > 0 and lo < hi and out[top - 1] == -flat[lo]:
            top -= 1
            lo += 1
        for q in range(lo, hi):
            out[top] = flat[q]
            top += 1
    return out[:top]
