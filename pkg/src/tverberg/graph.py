"""Finite simple graphs, neighborhoods, products with complete graphs, and the
local Tverberg-graph criteria."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator, NamedTuple


class Graph:
    """Immutable simple graph on vertices ``0 .. n-1``.

    Edges are stored as sorted pairs ``(u, v)`` with ``u < v``. Labels are
    cosmetic and never affect equality.
    """

    __slots__ = ("n", "edges", "labels", "_adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (), labels=None):
        if n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {n}")
        norm = set()
        for e in edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {(u, v)} has an endpoint outside 0..{n - 1}")
            norm.add((u, v) if u < v else (v, u))
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != n:
                raise ValueError(f"expected {n} labels, got {len(labels)}")
        adj = [0] * n
        for u, v in norm:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(norm))
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_adj", tuple(adj))

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __reduce__(self):
        return (Graph, (self.n, sorted(self.edges), self.labels))

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={sorted(self.edges)})"

    @property
    def adjacency(self) -> tuple[int, ...]:
        """Neighborhoods as bitmasks; bit ``u`` of ``adjacency[v]`` is ``u ~ v``."""
        return self._adj

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self._adj]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def relabel(self, perm) -> Graph:
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph(self.n, ((perm[u], perm[v]) for u, v in self.edges))


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise IndexError(f"vertex {v} out of range for a graph on {g.n} vertices")


def mask_to_set(mask: int) -> frozenset[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return frozenset(out)


def neighborhood(g: Graph, v: int) -> frozenset[int]:
    _check_vertex(g, v)
    return mask_to_set(g.adjacency[v])


def second_neighborhood(g: Graph, v: int) -> frozenset[int]:
    """Vertices at distance exactly two from ``v``."""
    _check_vertex(g, v)
    adj = g.adjacency
    near = adj[v]
    reach = 0
    for u in mask_to_set(near):
        reach |= adj[u]
    return mask_to_set(reach & ~near & ~(1 << v))


# --- products --------------------------------------------------------------


class ProductVertex(NamedTuple):
    """Vertex ``(base, level)`` of ``G □ K_q``; levels run from 1 to q."""

    base: int
    level: int


def product_index(base: int, level: int, q: int) -> int:
    """Dense index of ``(base, level)`` in the column-major product layout."""
    if not 1 <= level <= q:
        raise ValueError(f"level {level} outside 1..{q}")
    return base * q + (level - 1)


def product_vertex(index: int, q: int) -> ProductVertex:
    return ProductVertex(index // q, index % q + 1)


def cartesian_product_complete(g: Graph, q: int, order: str = "column") -> Graph:
    """``G □ K_q``: each column ``{v} x [q]`` is a clique, each level a copy of G.

    ``order="column"`` numbers ``(v, i)`` as ``v*q + i - 1`` (used everywhere
    else in the package); ``order="level"`` numbers it ``(i-1)*n + v``.
    """
    if q < 1:
        raise ValueError(f"q must be at least 1, got {q}")
    n = g.n
    if order == "column":
        idx = lambda v, i: v * q + i  # noqa: E731
    elif order == "level":
        idx = lambda v, i: i * n + v  # noqa: E731
    else:
        raise ValueError(f"unknown order {order!r}")
    edges = []
    for u, v in g.edges:
        edges.extend((idx(u, i), idx(v, i)) for i in range(q))
    for v in range(n):
        edges.extend((idx(v, i), idx(v, j)) for i, j in itertools.combinations(range(q), 2))
    labels = [""] * (n * q)
    for v in range(n):
        for i in range(q):
            labels[idx(v, i)] = f"({g.label(v)},{i + 1})"
    return Graph(n * q, edges, labels)


# --- prime powers and the criteria -----------------------------------------


def prime_power_decomposition(q: int) -> tuple[int, int] | None:
    """``(p, r)`` with ``q == p**r``, p prime and r >= 1, or None."""
    if q < 2:
        return None
    p = None
    m = q
    f = 2
    while f * f <= m:
        if m % f == 0:
            p = f
            break
        f += 1
    if p is None:
        return (q, 1)
    r = 0
    while m % p == 0:
        m //= p
        r += 1
    return (p, r) if m == 1 else None


def is_prime_power(q: int) -> bool:
    return prime_power_decomposition(q) is not None


def required_vertex_count(q: int, d: int) -> int:
    return (d + 1) * (q - 1) + 1


@dataclass(frozen=True)
class VertexRecord:
    vertex: int
    n1: int
    n2: int
    slack: int


@dataclass(frozen=True)
class CriterionReport:
    """Outcome of a criterion check; every failing condition is listed."""

    criterion: str
    q: int
    d: int
    vertex_count: int
    required_vertex_count: int
    prime_power: tuple[int, int] | None
    records: tuple[VertexRecord, ...]
    max_degree: int
    failures: tuple[str, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def min_slack(self) -> int | None:
        return min((r.slack for r in self.records), default=None)

    def to_json(self) -> dict:
        return {
            "criterion": self.criterion,
            "q": self.q,
            "d": self.d,
            "pass": self.passed,
            "vertex_count": self.vertex_count,
            "required_vertex_count": self.required_vertex_count,
            "prime_power": list(self.prime_power) if self.prime_power else None,
            "max_degree": self.max_degree,
            "failures": list(self.failures),
            "vertices": [
                {"vertex": r.vertex, "N": r.n1, "N2": r.n2, "slack": r.slack}
                for r in self.records
            ],
        }


def local_records(g: Graph, q: int) -> tuple[VertexRecord, ...]:
    out = []
    for v in range(g.n):
        n1 = g.degree(v)
        n2 = len(second_neighborhood(g, v))
        out.append(VertexRecord(v, n1, n2, q - n2 - 2 * n1))
    return tuple(out)


def _structural_failures(g: Graph, q: int, d: int) -> tuple[list[str], tuple[int, int] | None]:
    failures = []
    need = required_vertex_count(q, d)
    if g.n != need:
        failures.append(f"vertex count {g.n} != (d+1)(q-1)+1 = {need}")
    pp = prime_power_decomposition(q)
    if pp is None:
        failures.append(f"q = {q} is not a prime power")
    return failures, pp


def check_local_criterion(g: Graph, q: int, d: int) -> CriterionReport:
    """Checks ``q > |N2(v)| + 2|N(v)|`` at every vertex plus the size and
    prime-power hypotheses. Nothing is raised; failures are collected."""
    failures, pp = _structural_failures(g, q, d)
    records = local_records(g, q)
    bad = [r.vertex for r in records if r.slack < 1]
    if bad:
        shown = ", ".join(str(v) for v in bad[:10])
        more = "" if len(bad) <= 10 else f" (+{len(bad) - 10} more)"
        failures.append(f"slack < 1 at vertices {shown}{more}")
    return CriterionReport("local", q, d, g.n, required_vertex_count(q, d), pp,
                           records, g.max_degree(), tuple(failures))


def check_degree_criterion(g: Graph, q: int, d: int) -> CriterionReport:
    """Checks ``D(D+1) < q`` for the maximum degree D (plus the hypotheses)."""
    failures, pp = _structural_failures(g, q, d)
    big_d = g.max_degree()
    if big_d * (big_d + 1) >= q:
        failures.append(f"D(D+1) = {big_d * (big_d + 1)} >= q = {q}")
    return CriterionReport("degree", q, d, g.n, required_vertex_count(q, d), pp,
                           local_records(g, q), big_d, tuple(failures))


def local_condition_holds(g: Graph, q: int) -> bool:
    """Only the per-vertex inequality, without size or prime-power hypotheses."""
    return all(r.slack >= 1 for r in local_records(g, q))


# --- small families and generators -----------------------------------------


def edgeless_graph(n: int) -> Graph:
    return Graph(n)


def complete_graph(n: int) -> Graph:
    return Graph(n, itertools.combinations(range(n), 2))


def path_graph(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def random_graph(n: int, p: float, rng) -> Graph:
    return Graph(n, (e for e in itertools.combinations(range(n), 2) if rng.random() < p))


def all_graphs(n: int) -> Iterator[Graph]:
    """Every labeled graph on ``n`` vertices (2^(n choose 2) of them)."""
    pairs = list(itertools.combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        yield Graph(n, (pairs[i] for i in range(len(pairs)) if bits >> i & 1))


def canonical_form(g: Graph) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Lexicographically least relabeled edge list over degree-respecting
    permutations. Exponential; meant for graphs on at most ~8 vertices."""
    degs = g.degrees()
    classes: dict[int, list[int]] = {}
    for v in range(g.n):
        classes.setdefault(degs[v], []).append(v)
    groups = [classes[k] for k in sorted(classes)]
    best = None
    for choice in itertools.product(*(itertools.permutations(c) for c in groups)):
        perm = [0] * g.n
        slot = 0
        for block in choice:
            for v in block:
                perm[v] = slot
                slot += 1
        key = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in g.edges))
        if best is None or key < best:
            best = key
    return (g.n, best or ())


def nonisomorphic_graphs(n: int) -> list[Graph]:
    """One representative per isomorphism class, by edge-augmentation."""
    layer = {canonical_form(Graph(n)): Graph(n)}
    out = list(layer.values())
    non_edges = list(itertools.combinations(range(n), 2))
    for _ in range(len(non_edges)):
        nxt: dict = {}
        for g in layer.values():
            for e in non_edges:
                if e in g.edges:
                    continue
                h = Graph(n, g.edges | {e})
                key = canonical_form(h)
                if key not in nxt:
                    nxt[key] = Graph(n, key[1])
        out.extend(nxt.values())
        layer = nxt
    return out


def regular_graphs(n: int, degree: int) -> Iterator[Graph]:
    """Every labeled ``degree``-regular graph on ``n`` vertices."""
    if degree < 0 or (n * degree) % 2:
        return
    deficit = [degree] * n
    edges: list[tuple[int, int]] = []

    def rec(v):
        while v < n and deficit[v] == 0:
            v += 1
        if v == n:
            yield Graph(n, edges)
            return
        cand = [u for u in range(v + 1, n) if deficit[u] > 0]
        need = deficit[v]
        for chosen in itertools.combinations(cand, need):
            for u in chosen:
                deficit[u] -= 1
                edges.append((v, u))
            deficit[v] = 0
            yield from rec(v + 1)
            deficit[v] = need
            for u in chosen:
                deficit[u] += 1
                edges.pop()

    yield from rec(0)


# --- I/O -------------------------------------------------------------------


def graph_from_json(data: dict) -> Graph:
    return Graph(int(data["vertices"]), (tuple(e) for e in data.get("edges", [])),
                 data.get("labels"))


def graph_to_json(g: Graph) -> dict:
    out = {"vertices": g.n, "edges": [list(e) for e in g.sorted_edges()]}
    if g.labels:
        out["labels"] = list(g.labels)
    return out


def parse_edge_list(text: str) -> Graph:
    """Plain edge list: a header line ``n <count>`` then one ``u v`` per line.
    Blank lines and ``#`` comments are ignored."""
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise ValueError(f"line {lineno}: expected header 'n <count>'")
            n = int(parts[1])
            continue
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'u v', got {raw!r}")
        edges.append((int(parts[0]), int(parts[1])))
    if n is None:
        raise ValueError("missing 'n <count>' header")
    return Graph(n, edges)


def format_edge_list(g: Graph) -> str:
    return "".join([f"n {g.n}\n"] + [f"{u} {v}\n" for u, v in g.sorted_edges()])


def load_graph(path) -> Graph:
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".json":
        return graph_from_json(json.loads(text))
    return parse_edge_list(text)


def save_graph(g: Graph, path) -> None:
    path = Path(path)
    if path.suffix.lower() == ".json":
        path.write_text(json.dumps(graph_to_json(g)) + "\n")
    else:
        path.write_text(format_edge_list(g))


def bundled_path(name: str) -> Path:
    return Path(str(resources.files("tverberg") / "data" / name))


def grinberg_graph() -> Graph:
    """The 46-vertex cubic planar Grinberg graph, vertices ordered by BFS ring
    around the vertex fixed by its 3-fold rotation."""
    return load_graph(bundled_path("grinberg.json"))
