"""Lower bounds on the number of Tverberg partitions from counts of labeled
regular graphs.

For every labeled D-regular graph on N vertices with D(D+1) < q there is a
constrained partition, and a partition is a q-coloring that can serve only
the graphs it properly colors. So the number of partitions is at least
a_N / b_N, where a_N counts labeled D-regular graphs and b_N is the largest
number of them properly colored by a single coloring.

Colorings are assignments of the N labeled vertices to q labeled classes,
empty classes allowed. The count for a coloring depends only on its class
sizes, so the default search runs over size profiles; ``exhaustive=True``
walks all q^N assignments instead, as a cross-check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import kernels
from .affine import PointConfig, count_partitions
from .graph import is_prime_power

DEFAULT_MAX_N = 10
INTERPRETATION = "colorings = labeled classes, empty classes allowed; proper = every edge bichromatic"


class CensusBudgetExceeded(RuntimeError):
    pass


def _check_n(n: int, max_n: int) -> None:
    if n > max_n:
        raise CensusBudgetExceeded(f"N = {n} exceeds the exhaustive bound {max_n}")
    if n > 64:
        raise CensusBudgetExceeded("vertex sets are limited to 64 bits")


def count_regular_graphs(n: int, degree: int, max_n: int = DEFAULT_MAX_N) -> int:
    """Labeled ``degree``-regular graphs on ``n`` vertices, by exhaustive search."""
    _check_n(n, max_n)
    if degree < 0 or (n * degree) % 2:
        return 0
    full = (1 << n) - 1
    adj = [full & ~(1 << v) for v in range(n)]
    return kernels.count_regular_subgraphs(adj, n, degree)


def count_properly_colored(coloring, degree: int) -> int:
    """Labeled ``degree``-regular graphs for which ``coloring`` is proper."""
    n = len(coloring)
    adj = [0] * n
    for u in range(n):
        for v in range(n):
            if u != v and coloring[u] != coloring[v]:
                adj[u] |= 1 << v
    if (n * degree) % 2:
        return 0
    return kernels.count_regular_subgraphs(adj, n, degree)


def _size_profiles(n: int, q: int):
    """Partitions of n into at most q positive parts, largest first."""

    def rec(rest, cap, parts):
        if rest == 0:
            yield tuple(parts)
            return
        if len(parts) == q:
            return
        for s in range(min(rest, cap), 0, -1):
            parts.append(s)
            yield from rec(rest - s, s, parts)
            parts.pop()

    yield from rec(n, n, [])


def _coloring_from_profile(profile) -> tuple[int, ...]:
    out = []
    for color, size in enumerate(profile):
        out.extend([color] * size)
    return tuple(out)


@dataclass(frozen=True)
class ColoringMax:
    count: int
    coloring: tuple[int, ...]


def max_colored_regular_graphs(n: int, degree: int, q: int, max_n: int = DEFAULT_MAX_N,
                               exhaustive: bool = False) -> ColoringMax:
    """b_N: the largest number of labeled regular graphs one q-coloring makes proper."""
    if q < 2:
        raise ValueError("q must be at least 2")
    _check_n(n, max_n)
    best = ColoringMax(-1, ())
    if exhaustive:
        for coloring in itertools.product(range(q), repeat=n):
            c = count_properly_colored(coloring, degree)
            if c > best.count:
                best = ColoringMax(c, tuple(coloring))
    else:
        for profile in _size_profiles(n, q):
            coloring = _coloring_from_profile(profile)
            c = count_properly_colored(coloring, degree)
            if c > best.count:
                best = ColoringMax(c, coloring)
    if best.count < 0:  # n == 0
        best = ColoringMax(count_properly_colored((), degree), ())
    return best


@dataclass(frozen=True)
class RegularGraphCensus:
    N: int
    D: int
    q: int
    a_N: int
    b_N: int
    argmax_coloring: tuple[int, ...]
    notes: tuple[str, ...] = field(default=())

    @property
    def bound(self) -> int:
        """ceil(a_N / b_N), or 0 when no regular graph exists."""
        if self.b_N == 0:
            return 0
        return -(-self.a_N // self.b_N)

    def to_json(self) -> dict:
        return {
            "N": self.N, "D": self.D, "q": self.q,
            "a_N": self.a_N, "b_N": self.b_N, "bound": self.bound,
            "argmax_coloring": list(self.argmax_coloring),
            "interpretation": INTERPRETATION,
            "notes": list(self.notes),
        }


def regular_graph_census(n: int, degree: int, q: int, max_n: int = DEFAULT_MAX_N) -> RegularGraphCensus:
    a = count_regular_graphs(n, degree, max_n)
    best = max_colored_regular_graphs(n, degree, q, max_n)
    notes = []
    if (n * degree) % 2:
        notes.append(f"N*D = {n * degree} is odd: no {degree}-regular graph on {n} vertices; "
                     "the bound degenerates to plain existence of a partition")
    if degree * (degree + 1) >= q:
        notes.append(f"D(D+1) = {degree * (degree + 1)} >= q = {q}: the lower bound does not apply")
    return RegularGraphCensus(n, degree, q, a, best.count, best.coloring, tuple(notes))


@dataclass(frozen=True)
class CensusReport:
    census: RegularGraphCensus
    observed: int | None
    truncated: bool
    holds: bool | None

    def to_json(self) -> dict:
        out = self.census.to_json()
        out.update(observed=self.observed, truncated=self.truncated, holds=self.holds)
        return out


def census_lower_bound(cfg: PointConfig, q: int, degree: int, partition_budget: int | None = None,
                       max_n: int = DEFAULT_MAX_N, workers: int = 1) -> CensusReport:
    """Compares ceil(a_N/b_N) (and plain existence, 1) with the observed
    number of unconstrained partitions of ``cfg`` into q parts."""
    if degree * (degree + 1) >= q:
        raise ValueError(f"need D(D+1) < q, got D = {degree}, q = {q}")
    if not is_prime_power(q):
        raise ValueError(f"q = {q} is not a prime power")
    census = regular_graph_census(len(cfg.points), degree, q, max_n)
    result = count_partitions(cfg.with_constraints(None), q, partition_budget, workers)
    if result.truncated:
        return CensusReport(census, result.count, True, None)
    holds = result.count >= max(census.bound, 1)
    return CensusReport(census, result.count, False, holds)
