"""Exact feasibility of ``A x = b, x >= 0`` by phase-1 simplex over Fractions.

Bland's rule (smallest eligible index enters, smallest basic index leaves on
ratio ties) guarantees termination on degenerate systems. An infeasible
system comes back with a Farkas vector ``y``: ``y.A <= 0`` and ``y.b > 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    x: tuple[Fraction, ...] | None = None
    farkas: tuple[Fraction, ...] | None = None
    pivots: int = 0


def find_feasible_point(A: Sequence[Sequence], b: Sequence) -> FeasibilityResult:
    m = len(A)
    n = len(A[0]) if m else 0
    if any(len(row) != n for row in A) or len(b) != m:
        raise ValueError("ragged constraint matrix")
    if m == 0:
        return FeasibilityResult(True, tuple(Fraction(0) for _ in range(n)), None)

    signs = [1 if Fraction(bi) >= 0 else -1 for bi in b]
    # columns 0..n-1 original, n..n+m-1 artificial, last column rhs
    T = []
    for i in range(m):
        s = signs[i]
        row = [Fraction(a) * s for a in A[i]]
        row.extend(Fraction(1 if k == i else 0) for k in range(m))
        row.append(Fraction(b[i]) * s)
        T.append(row)
    width = n + m + 1
    # reduced costs for minimizing the sum of artificials
    z = [Fraction(0)] * width
    for j in range(n):
        z[j] = -sum(T[i][j] for i in range(m))
    z[-1] = -sum(T[i][-1] for i in range(m))
    basis = [n + i for i in range(m)]

    pivots = 0
    while True:
        enter = next((j for j in range(n + m) if z[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if (best is None or ratio < best
                        or (ratio == best and basis[i] < basis[leave])):
                    best, leave = ratio, i
        if leave is None:  # pragma: no cover - phase 1 is bounded below by 0
            raise RuntimeError("unbounded phase-1 problem")
        _pivot(T, z, leave, enter)
        basis[leave] = enter
        pivots += 1

    infeasibility = -z[-1]
    if infeasibility > 0:
        # y_k = 1 - (reduced cost of artificial k), mapped back through signs
        y = tuple((1 - z[n + k]) * signs[k] for k in range(m))
        return FeasibilityResult(False, None, y, pivots)
    x = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            x[var] = T[i][-1]
    return FeasibilityResult(True, tuple(x), None, pivots)


def _pivot(T, z, r: int, c: int) -> None:
    prow = T[r]
    inv = 1 / prow[c]
    cols = [j for j, v in enumerate(prow) if v]
    for j in cols:
        prow[j] *= inv
    for i, row in enumerate(T):
        if i != r:
            f = row[c]
            if f:
                for j in cols:
                    row[j] -= f * prow[j]
    f = z[c]
    if f:
        for j in cols:
            z[j] -= f * prow[j]


def check_farkas(A, b, y) -> bool:
    """``y.A <= 0`` componentwise and ``y.b > 0``: then ``Ax = b, x >= 0``
    has no solution."""
    n = len(A[0]) if A else 0
    for j in range(n):
        if sum(Fraction(y[i]) * Fraction(A[i][j]) for i in range(len(A))) > 0:
            return False
    return sum(Fraction(y[i]) * Fraction(b[i]) for i in range(len(b))) > 0
