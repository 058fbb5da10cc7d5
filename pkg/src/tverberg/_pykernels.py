"""Pure-Python implementations of the hot kernels.

These mirror ``_kernels.pyx`` one for one and are used whenever the compiled
extension is missing, or when ``TVERBERG_PURE_PYTHON=1`` is set. Graphs are
passed as adjacency bitmasks (``adj[v]`` has bit ``u`` set iff ``u ~ v``).
"""

from __future__ import annotations

import numpy as np


def independent_sets(adj, allowed: int, size: int, limit: int = -1) -> list[int]:
    """Independent sets of ``size`` vertices inside ``allowed``, as bitmasks.

    Output is in lexicographic order of the sorted vertex tuples. When
    ``limit >= 0`` the search stops after ``limit + 1`` sets, so callers can
    detect an overflow without enumerating everything.
    """
    out: list[int] = []
    if size < 0:
        return out
    if size == 0:
        return [0]

    def rec(chosen: int, cand: int, need: int) -> bool:
        while cand:
            if cand.bit_count() < need:
                return True
            low = cand & -cand
            e = low.bit_length() - 1
            cand ^= low
            if need == 1:
                out.append(chosen | low)
                if 0 <= limit < len(out):
                    return False
            else:
                nxt = cand & ~adj[e]
                if not rec(chosen | low, nxt, need - 1):
                    return False
        return True

    rec(0, allowed, size)
    return out


def count_regular_subgraphs(adj, n: int, degree: int) -> int:
    """Number of spanning ``degree``-regular subgraphs of the host graph."""
    if degree == 0:
        return 1
    deficit = [degree] * n

    def rec(v: int) -> int:
        while v < n and deficit[v] == 0:
            v += 1
        if v == n:
            return 1
        need = deficit[v]
        cand = 0
        higher = adj[v] >> (v + 1) << (v + 1)
        while higher:
            low = higher & -higher
            u = low.bit_length() - 1
            if deficit[u] > 0:
                cand |= low
            higher ^= low
        if cand.bit_count() < need:
            return 0
        deficit[v] = 0
        total = choose(v, cand, need)
        deficit[v] = need
        return total

    def choose(v: int, cand: int, need: int) -> int:
        if need == 0:
            return rec(v + 1)
        if cand.bit_count() < need:
            return 0
        low = cand & -cand
        u = low.bit_length() - 1
        rest = cand ^ low
        deficit[u] -= 1
        total = choose(v, rest, need - 1)
        deficit[u] += 1
        return total + choose(v, rest, need)

    return rec(0)


def rank_mod_p(matrix, p: int) -> int:
    """Rank of a dense integer matrix over GF(p), p prime."""
    m = np.array(matrix, dtype=np.int64) % p
    if m.ndim != 2 or m.size == 0:
        return 0
    rows, cols = m.shape
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(m[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            m[[rank, piv]] = m[[piv, rank]]
        inv = pow(int(m[rank, col]), -1, p)
        m[rank] = (m[rank] * inv) % p
        below = m[rank + 1:, col]
        hit = np.nonzero(below)[0]
        if hit.size:
            idx = hit + rank + 1
            m[idx] = (m[idx] - np.outer(m[idx, col], m[rank])) % p
        rank += 1
    return rank
