"""Constrained affine Tverberg partitions of exact rational point sets.

Partitions are unordered; a partition is stored with its parts sorted by
minimum element, which is the order in which :func:`enumerate_partitions`
produces them (restricted growth strings in lexicographic order). Hulls are
closed, so touching counts as intersecting.
"""

from __future__ import annotations

import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterator, Sequence

from .graph import Graph, check_local_criterion, load_graph, required_vertex_count
from .lp import find_feasible_point

log = logging.getLogger(__name__)

Point = tuple[Fraction, ...]


@dataclass(frozen=True)
class PointConfig:
    d: int
    points: tuple[Point, ...]
    constraint_graph: Graph | None = None

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"dimension must be positive, got {self.d}")
        pts = tuple(tuple(Fraction(x) for x in p) for p in self.points)
        for i, p in enumerate(pts):
            if len(p) != self.d:
                raise ValueError(f"point {i} has {len(p)} coordinates, expected {self.d}")
        object.__setattr__(self, "points", pts)
        g = self.constraint_graph
        if g is not None and g.n != len(pts):
            raise ValueError(f"constraint graph has {g.n} vertices for {len(pts)} points")

    def __len__(self):
        return len(self.points)

    def with_constraints(self, g: Graph | None) -> PointConfig:
        return PointConfig(self.d, self.points, g)


@dataclass(frozen=True)
class HullIntersectionCertificate:
    feasible: bool
    witness: Point | None = None
    coefficients: tuple[tuple[Fraction, ...], ...] | None = None
    farkas: tuple[Fraction, ...] | None = None
    note: str = ""


@dataclass(frozen=True)
class TverbergPartition:
    parts: tuple[tuple[int, ...], ...]
    witness: Point
    coefficients: tuple[tuple[Fraction, ...], ...]

    def key(self) -> tuple[tuple[int, ...], ...]:
        return self.parts

    def to_json(self, approx: bool = False) -> dict:
        out = {
            "parts": [list(p) for p in self.parts],
            "witness": [str(x) for x in self.witness],
            "coefficients": [[str(c) for c in cs] for cs in self.coefficients],
        }
        if approx:
            out["witness_approx_inexact"] = [float(x) for x in self.witness]
        return out


@dataclass(frozen=True)
class Truncated:
    """Marks the end of a partial stream that hit the partition budget."""

    checked: int
    budget: int


def _hull_system(cfg: PointConfig, parts: Sequence[Sequence[int]]):
    cols = [(i, p) for i, part in enumerate(parts) for p in part]
    A = []
    b = []
    first = [k for k, (i, _) in enumerate(cols) if i == 0]
    for i in range(1, len(parts)):
        mine = {k for k, (j, _) in enumerate(cols) if j == i}
        for c in range(cfg.d):
            row = [Fraction(0)] * len(cols)
            for k in first:
                row[k] += cfg.points[cols[k][1]][c]
            for k in mine:
                row[k] -= cfg.points[cols[k][1]][c]
            A.append(row)
            b.append(Fraction(0))
    for i in range(len(parts)):
        A.append([Fraction(1 if j == i else 0) for j, _ in cols])
        b.append(Fraction(1))
    return A, b, cols


def hulls_intersect(cfg: PointConfig, parts: Sequence[Sequence[int]]) -> HullIntersectionCertificate:
    """Exact decision of whether the closed hulls of the parts share a point."""
    if not parts:
        raise ValueError("no parts given")
    for part in parts:
        if not part:
            raise ValueError("empty part")
        for p in part:
            if not 0 <= p < len(cfg.points):
                raise IndexError(f"point index {p} out of range")
    A, b, cols = _hull_system(cfg, parts)
    res = find_feasible_point(A, b)
    if not res.feasible:
        return HullIntersectionCertificate(False, farkas=res.farkas,
                                           note="Farkas vector certifies disjoint hulls")
    coeffs = []
    k = 0
    for part in parts:
        coeffs.append(tuple(res.x[k:k + len(part)]))
        k += len(part)
    witness = tuple(
        sum((lam * cfg.points[p][c] for lam, p in zip(coeffs[0], parts[0])), Fraction(0))
        for c in range(cfg.d)
    )
    return HullIntersectionCertificate(True, witness, tuple(coeffs))


def verify_witness(cfg: PointConfig, parts, witness, coefficients) -> bool:
    """Independent exact re-evaluation of a hull-intersection witness."""
    if len(parts) != len(coefficients):
        return False
    for part, lams in zip(parts, coefficients):
        if len(part) != len(lams) or any(Fraction(x) < 0 for x in lams):
            return False
        if sum(Fraction(x) for x in lams) != 1:
            return False
        for c in range(cfg.d):
            val = sum(Fraction(lam) * cfg.points[p][c] for lam, p in zip(lams, part))
            if val != Fraction(witness[c]):
                return False
    return True


def verify_partition(cfg: PointConfig, part: TverbergPartition, q: int | None = None) -> bool:
    """Disjoint cover, nonempty parts, independence, exact witness."""
    seen = sorted(p for pt in part.parts for p in pt)
    if seen != list(range(len(cfg.points))) or any(not pt for pt in part.parts):
        return False
    if q is not None and len(part.parts) != q:
        return False
    g = cfg.constraint_graph
    if g is not None:
        for pt in part.parts:
            for i, u in enumerate(pt):
                if any(g.has_edge(u, v) for v in pt[i + 1:]):
                    return False
    return verify_witness(cfg, part.parts, part.witness, part.coefficients)


# --- enumeration -----------------------------------------------------------


def _set_partitions(n: int, q: int, adj, allow_fewer: bool, prefix=()) -> Iterator[list[int]]:
    """Restricted growth strings of length n with exactly q blocks (at most q
    when ``allow_fewer``), skipping any block that would hold an edge."""
    labels = list(prefix)
    masks = [0] * q
    for i, lab in enumerate(labels):
        masks[lab] |= 1 << i
    blocks = max(labels, default=-1) + 1

    def rec(i: int, blocks: int):
        if i == n:
            if blocks == q or (allow_fewer and blocks >= 1):
                yield list(labels)
            return
        if not allow_fewer and q - blocks > n - i:
            return
        for lab in range(min(blocks + 1, q)):
            if adj[i] & masks[lab]:
                continue
            labels.append(lab)
            masks[lab] |= 1 << i
            yield from rec(i + 1, max(blocks, lab + 1))
            masks[lab] &= ~(1 << i)
            labels.pop()

    # prefix must itself respect the constraints
    for lab_i, lab in enumerate(labels):
        if adj[lab_i] & masks[lab] & ((1 << lab_i) - 1):
            return
    yield from rec(len(labels), blocks)


def _parts_of(labels: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    parts: dict[int, list[int]] = {}
    for i, lab in enumerate(labels):
        parts.setdefault(lab, []).append(i)
    return tuple(tuple(parts[k]) for k in sorted(parts))


def _adjacency(cfg: PointConfig) -> tuple[int, ...]:
    g = cfg.constraint_graph
    return g.adjacency if g is not None else (0,) * len(cfg.points)


def _branch(cfg: PointConfig, q: int, prefix: tuple[int, ...], budget: int | None,
            allow_fewer: bool):
    """Runs one subtree; returns (partitions with their check ordinal, checked)."""
    found = []
    checked = 0
    for labels in _set_partitions(len(cfg.points), q, _adjacency(cfg), allow_fewer, prefix):
        if budget is not None and checked >= budget:
            return found, checked, True
        checked += 1
        parts = _parts_of(labels)
        cert = hulls_intersect(cfg, parts)
        if cert.feasible:
            found.append((checked, TverbergPartition(parts, cert.witness, cert.coefficients)))
    return found, checked, False


def _prefixes(n: int, q: int, depth: int) -> list[tuple[int, ...]]:
    out = [()]
    for _ in range(min(depth, n)):
        nxt = []
        for pre in out:
            blocks = max(pre, default=-1) + 1
            nxt.extend(pre + (lab,) for lab in range(min(blocks + 1, q)))
        out = nxt
    return out


def enumerate_partitions(cfg: PointConfig, q: int, partition_budget: int | None = None,
                         allow_empty: bool = False, workers: int = 1):
    """Every constraint-respecting, hull-intersecting partition into q parts,
    in canonical order, each once.

    ``partition_budget`` caps the number of complete candidate partitions that
    are LP-checked; when it is hit the stream ends with a :class:`Truncated`
    marker. ``allow_empty`` also admits partitions with fewer than q nonempty
    parts (empty parts are dropped). With ``workers > 1`` subtrees keyed by the
    labels of the first points run in separate processes and are merged back
    in canonical order, so the output is identical to the sequential run.
    """
    if q < 1:
        raise ValueError("q must be positive")
    n = len(cfg.points)
    if workers <= 1 or n < 4:
        found, checked, cut = _branch(cfg, q, (), partition_budget, allow_empty)
        for _, part in found:
            yield part
        if cut:
            yield Truncated(checked, partition_budget)
        return
    prefixes = _prefixes(n, q, min(4, n - 1))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_branch, cfg, q, pre, partition_budget, allow_empty)
                   for pre in prefixes]
        total = 0
        for fut in futures:
            found, checked, cut = fut.result()
            for ordinal, part in found:
                if partition_budget is not None and total + ordinal > partition_budget:
                    yield Truncated(partition_budget, partition_budget)
                    return
                yield part
            total += checked
            if partition_budget is not None and (cut or total > partition_budget):
                yield Truncated(min(total, partition_budget), partition_budget)
                return


@dataclass(frozen=True)
class PartitionCount:
    count: int
    truncated: bool
    partitions: tuple[TverbergPartition, ...]


def count_partitions(cfg: PointConfig, q: int, partition_budget: int | None = None,
                     workers: int = 1) -> PartitionCount:
    found = []
    truncated = False
    for item in enumerate_partitions(cfg, q, partition_budget, workers=workers):
        if isinstance(item, Truncated):
            truncated = True
        else:
            found.append(item)
    return PartitionCount(len(found), truncated, tuple(found))


def guarantee_applies(cfg: PointConfig, q: int) -> bool:
    """Whether the local criterion promises a constrained partition here."""
    g = cfg.constraint_graph or Graph(len(cfg.points))
    return check_local_criterion(g, q, cfg.d).passed


def find_partition(cfg: PointConfig, q: int, partition_budget: int | None = None,
                   allow_empty: bool = False) -> TverbergPartition | None:
    """First partition in canonical order, or None when the search is
    exhausted (or truncated by the budget)."""
    need = required_vertex_count(q, cfg.d)
    if len(cfg.points) != need:
        log.warning("%d points given; the theorem is about (d+1)(q-1)+1 = %d",
                    len(cfg.points), need)
    for item in enumerate_partitions(cfg, q, partition_budget, allow_empty):
        if isinstance(item, Truncated):
            return None
        return item
    if guarantee_applies(cfg, q):
        log.error("falsification: no constrained Tverberg partition although the "
                  "local criterion holds (q=%d, d=%d)", q, cfg.d)
    return None


def sierksma_bound(q: int, d: int) -> int:
    return math.factorial(q - 1) ** d


# --- I/O -------------------------------------------------------------------


def config_from_json(data: dict, constraint_graph: Graph | None = None) -> PointConfig:
    pts = [tuple(Fraction(str(x)) for x in p) for p in data["points"]]
    return PointConfig(int(data["d"]), tuple(pts), constraint_graph)


def config_to_json(cfg: PointConfig) -> dict:
    return {"d": cfg.d, "points": [[str(x) for x in p] for p in cfg.points]}


def load_points(path, constraints_path=None) -> PointConfig:
    data = json.loads(Path(path).read_text())
    g = load_graph(constraints_path) if constraints_path else None
    return config_from_json(data, g)
