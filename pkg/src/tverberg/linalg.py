"""Exact ranks of sparse integer matrices over GF(p) and over the rationals."""

from __future__ import annotations

import math

import numpy as np

from . import kernels

# dense elimination only while the face count and the array stay small
DENSE_FACE_LIMIT = 1 << 13
DENSE_CELL_LIMIT = 1 << 22


def rank_mod_p(rows: list[dict[int, int]], n_cols: int, p: int) -> int:
    """Rank over GF(p) of the matrix whose rows are ``{column: value}``."""
    n_rows = len(rows)
    if n_rows == 0 or n_cols == 0:
        return 0
    if n_rows + n_cols < DENSE_FACE_LIMIT and n_rows * n_cols <= DENSE_CELL_LIMIT:
        dense = np.zeros((n_rows, n_cols), dtype=np.int64)
        for i, row in enumerate(rows):
            for j, val in row.items():
                dense[i, j] = val
        return kernels.rank_mod_p(dense, p)
    return _sparse_rank_mod_p(rows, p)


def _sparse_rank_mod_p(rows, p: int) -> int:
    pivots: dict[int, dict[int, int]] = {}
    for src in sorted(rows, key=len):
        row = {j: v % p for j, v in src.items() if v % p}
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                inv = pow(row[lead], -1, p)
                pivots[lead] = {j: v * inv % p for j, v in row.items()}
                break
            f = row[lead]
            for j, v in piv.items():
                nv = (row.get(j, 0) - f * v) % p
                if nv:
                    row[j] = nv
                else:
                    row.pop(j, None)
    return len(pivots)


def rank_rational(rows: list[dict[int, int]]) -> int:
    """Rank over Q by fraction-free elimination on integer rows.

    Rows are processed sparsest first and every stored pivot row is divided by
    the gcd of its entries, which keeps coefficients small on boundary
    matrices (entries +-1).
    """
    pivots: dict[int, dict[int, int]] = {}
    for src in sorted(rows, key=len):
        row = {j: v for j, v in src.items() if v}
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                g = 0
                for v in row.values():
                    g = math.gcd(g, v)
                if row[lead] < 0:
                    g = -g
                pivots[lead] = {j: v // g for j, v in row.items()}
                break
            a = piv[lead]
            b = row[lead]
            if a in (1, -1):
                f = b * a
                for j, v in piv.items():
                    nv = row.get(j, 0) - f * v
                    if nv:
                        row[j] = nv
                    else:
                        row.pop(j, None)
            else:
                new = {j: a * v for j, v in row.items()}
                for j, v in piv.items():
                    nv = new.get(j, 0) - b * v
                    if nv:
                        new[j] = nv
                    else:
                        new.pop(j, None)
                row = new
            if row:
                g = 0
                for v in row.values():
                    g = math.gcd(g, v)
                if g > 1:
                    row = {j: v // g for j, v in row.items()}
    return len(pivots)


def rank(rows: list[dict[int, int]], n_cols: int, characteristic: int) -> int:
    if characteristic == 0:
        return rank_rational(rows)
    return rank_mod_p(rows, n_cols, characteristic)
