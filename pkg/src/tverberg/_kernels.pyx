# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Same contracts as ``_pykernels``; vertex sets are uint64,
so callers must route graphs with more than 64 vertices to the fallback."""

import numpy as np

from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport free, malloc


cdef extern from *:
    int popcount64 "__builtin_popcountll"(unsigned long long)
    int ctz64 "__builtin_ctzll"(unsigned long long)


MAX_VERTICES = 64


cdef uint64_t* _load_adj(adj, int n) except NULL:
    cdef uint64_t* a = <uint64_t*> malloc(max(n, 1) * sizeof(uint64_t))
    if a == NULL:
        raise MemoryError()
    cdef int i
    for i in range(n):
        a[i] = <uint64_t> adj[i]
    return a


def independent_sets(adj, allowed, int size, long long limit=-1):
    cdef int n = len(adj)
    if n > 64:
        raise ValueError("compiled kernel supports at most 64 vertices")
    if size < 0:
        return []
    if size == 0:
        return [0]
    cdef uint64_t* a = _load_adj(adj, n)
    cdef uint64_t cand[65]
    cdef uint64_t chosen[65]
    cdef int depth = 0
    cdef uint64_t low, rest
    cdef int e
    cdef long long found = 0
    out = []
    cand[0] = <uint64_t> allowed
    chosen[0] = 0
    try:
        while depth >= 0:
            if cand[depth] == 0 or popcount64(cand[depth]) < size - depth:
                depth -= 1
                continue
            low = cand[depth] & (~cand[depth] + 1)
            e = ctz64(low)
            cand[depth] ^= low
            if depth + 1 == size:
                out.append(chosen[depth] | low)
                found += 1
                if limit >= 0 and found > limit:
                    break
            else:
                chosen[depth + 1] = chosen[depth] | low
                cand[depth + 1] = cand[depth] & ~a[e]
                depth += 1
    finally:
        free(a)
    return out


cdef unsigned long long _choose(int v, uint64_t c, int need, int n,
                                uint64_t* a, int* deficit):
    cdef uint64_t low
    cdef int u
    cdef unsigned long long total = 0
    while True:
        if need == 0:
            return total + _rec(v + 1, n, a, deficit)
        if popcount64(c) < need:
            return total
        low = c & (~c + 1)
        u = ctz64(low)
        c ^= low
        deficit[u] -= 1
        total += _choose(v, c, need - 1, n, a, deficit)
        deficit[u] += 1


cdef unsigned long long _rec(int v, int n, uint64_t* a, int* deficit):
    cdef int need, u
    cdef uint64_t cand = 0, higher
    cdef unsigned long long total
    while v < n and deficit[v] == 0:
        v += 1
    if v == n:
        return 1
    need = deficit[v]
    if v == 63:
        higher = 0
    else:
        higher = a[v] & ~((<uint64_t> 2 << v) - 1)
    while higher:
        u = ctz64(higher)
        if deficit[u] > 0:
            cand |= (<uint64_t> 1) << u
        higher &= higher - 1
    if popcount64(cand) < need:
        return 0
    deficit[v] = 0
    total = _choose(v, cand, need, n, a, deficit)
    deficit[v] = need
    return total


def count_regular_subgraphs(adj, int n, int degree):
    if n > 64:
        raise ValueError("compiled kernel supports at most 64 vertices")
    if degree == 0:
        return 1
    cdef uint64_t* a = _load_adj(adj, n)
    cdef int* deficit = <int*> malloc(max(n, 1) * sizeof(int))
    cdef int i
    cdef unsigned long long total
    try:
        for i in range(n):
            deficit[i] = degree
        total = _rec(0, n, a, deficit)
    finally:
        free(a)
        free(deficit)
    return int(total)


cdef int64_t _inverse(int64_t x, int64_t p):
    cdef int64_t t = 0, new_t = 1, r = p, new_r = x, q, tmp
    while new_r != 0:
        q = r // new_r
        tmp = t - q * new_t
        t = new_t
        new_t = tmp
        tmp = r - q * new_r
        r = new_r
        new_r = tmp
    if t < 0:
        t += p
    return t


def rank_mod_p(matrix, long long p):
    arr = np.ascontiguousarray(np.array(matrix, dtype=np.int64) % p)
    if arr.ndim != 2 or arr.size == 0:
        return 0
    cdef int64_t[:, ::1] m = arr
    cdef Py_ssize_t rows = m.shape[0], cols = m.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef int64_t inv, f, tmp
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if m[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, cols):
                tmp = m[r, j]
                m[r, j] = m[piv, j]
                m[piv, j] = tmp
        inv = _inverse(m[r, c], p)
        for j in range(c, cols):
            m[r, j] = (m[r, j] * inv) % p
        for i in range(r + 1, rows):
            f = m[i, c]
            if f != 0:
                for j in range(c, cols):
                    m[i, j] = (m[i, j] - f * m[r, j]) % p
                    if m[i, j] < 0:
                        m[i, j] += p
        r += 1
    return r
