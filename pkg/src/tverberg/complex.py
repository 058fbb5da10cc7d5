"""Independence complexes and their reduced homology over fields.

Connectivity here always means *homological* connectivity: reduced homology
vanishing through a dimension, over every field tested. That is a necessary
condition for topological n-connectivity; fundamental groups are never
examined.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Sequence

from . import kernels
from .graph import (
    Graph,
    cartesian_product_complete,
    edgeless_graph,
    mask_to_set,
    prime_power_decomposition,
    product_index,
)
from .linalg import rank

DEFAULT_FACE_BUDGET = 1 << 20
DEFAULT_FIELDS = ("q", "gf2")


class FaceBudgetExceeded(RuntimeError):
    def __init__(self, dim: int, at_least: int, budget: int):
        super().__init__(
            f"more than {budget} faces in dimension {dim} (at least {at_least}); "
            "raise the face budget or shrink the instance"
        )
        self.dim = dim
        self.at_least = at_least
        self.budget = budget


class Field(NamedTuple):
    name: str
    characteristic: int


def parse_field(spec) -> Field:
    """``"q"``/``"Q"``/``"rationals"`` or ``"gf<p>"`` (p prime)."""
    if isinstance(spec, Field):
        return spec
    s = str(spec).strip().lower()
    if s in ("q", "qq", "rational", "rationals"):
        return Field("Q", 0)
    if s.startswith("gf"):
        p = int(s[2:])
        pp = prime_power_decomposition(p)
        if pp is None or pp[1] != 1:
            raise ValueError(f"GF({p}) needs a prime characteristic")
        return Field(f"GF({p})", p)
    raise ValueError(f"unknown field {spec!r}")


@dataclass(frozen=True)
class IndependenceComplex:
    """Independence complex of ``graph`` with ``excluded`` vertices deleted."""

    graph: Graph
    excluded: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "excluded", frozenset(self.excluded))

    @property
    def allowed_mask(self) -> int:
        mask = (1 << self.graph.n) - 1
        for v in self.excluded:
            if 0 <= v < self.graph.n:
                mask &= ~(1 << v)
        return mask

    def vertices(self) -> list[int]:
        return sorted(mask_to_set(self.allowed_mask))

    def is_empty(self) -> bool:
        """True when no vertex remains (only the empty face)."""
        return self.allowed_mask == 0

    def without(self, vertices: Iterable[int]) -> IndependenceComplex:
        return IndependenceComplex(self.graph, self.excluded | frozenset(vertices))

    def face_masks(self, dim: int, budget: int | None = None) -> list[int]:
        """Faces of dimension ``dim`` as bitmasks, in lexicographic order."""
        limit = -1 if budget is None else budget
        out = kernels.independent_sets(self.graph.adjacency, self.allowed_mask, dim + 1, limit)
        if budget is not None and len(out) > budget:
            raise FaceBudgetExceeded(dim, len(out), budget)
        return out

    def faces(self, dim: int) -> Iterator[tuple[int, ...]]:
        return faces(self, dim)

    def face_count(self, dim: int) -> int:
        return len(self.face_masks(dim))


def faces(c: IndependenceComplex, dim: int) -> Iterator[tuple[int, ...]]:
    """Independent sets of size ``dim + 1``, each once, lexicographically."""
    if dim < -1:
        return iter(())
    return (tuple(sorted(mask_to_set(m))) for m in c.face_masks(dim))


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low)
        mask ^= low
    return out


def boundary_rows(faces_k: Sequence[int], index_below: dict[int, int]) -> list[dict[int, int]]:
    """Boundary map from k-faces to (k-1)-faces, one sparse row per k-face."""
    rows = []
    for f in faces_k:
        row = {}
        sign = 1
        for low in _bits(f):
            row[index_below[f ^ low]] = sign
            sign = -sign
        rows.append(row)
    return rows


@dataclass(frozen=True)
class HomologyProfile:
    """Reduced Betti numbers ``betti[k]`` for ``-1 <= k <= max_dim_computed``."""

    field: str
    betti: dict[int, int]
    max_dim_computed: int
    face_counts: dict[int, int]
    complete: bool
    euler_check: bool | None

    def nonzero(self) -> dict[int, int]:
        return {k: b for k, b in self.betti.items() if b}

    def to_json(self) -> dict:
        return {
            "field": self.field,
            "betti": {str(k): b for k, b in sorted(self.betti.items())},
            "max_dim": self.max_dim_computed,
            "face_counts": {str(k): f for k, f in sorted(self.face_counts.items())},
            "euler_check": self.euler_check,
        }


def reduced_homology(
    c: IndependenceComplex,
    field="q",
    max_dim: int | None = None,
    face_budget: int = DEFAULT_FACE_BUDGET,
) -> HomologyProfile:
    """Reduced Betti numbers through ``max_dim`` (all dimensions when None).

    Faces of consecutive dimensions are enumerated one level at a time; only
    two levels are held in memory together.
    """
    fld = parse_field(field)
    top = c.graph.n - 1 if max_dim is None else max_dim
    face_counts = {-1: 1}
    ranks = {}
    prev = [0]
    prev_index = {0: 0}
    k = 0
    complete = False
    while True:
        if k > top + 1:
            break
        cur = c.face_masks(k, face_budget)
        if not cur:
            complete = True
            break
        face_counts[k] = len(cur)
        ranks[k] = rank(boundary_rows(cur, prev_index), len(prev), fld.characteristic)
        prev = cur
        prev_index = {m: i for i, m in enumerate(cur)}
        k += 1
    if complete:
        last = k - 1 if max_dim is None else top
    else:
        last = min(top, k - 1)
    betti = {}
    for j in range(-1, last + 1):
        f = face_counts.get(j, 0)
        betti[j] = f - ranks.get(j, 0) - ranks.get(j + 1, 0)
    euler = None
    if complete:
        from_faces = sum((-1) ** j * f for j, f in face_counts.items())
        euler = from_faces == sum((-1) ** j * b for j, b in betti.items())
    return HomologyProfile(fld.name, betti, last, face_counts, complete, euler)


@dataclass(frozen=True)
class ConnectivityVerdict:
    """``homologically_connected_through`` is the largest n with nonempty
    complex and vanishing reduced homology in 0..n over every field tested;
    -1 means only non-empty, -2 means empty."""

    homologically_connected_through: int
    through_dim: int
    fields_tested: tuple[str, ...]
    torsion_suspected: bool
    profiles: tuple[HomologyProfile, ...] = field(default=(), repr=False)

    def at_least(self, n: int) -> bool:
        return self.homologically_connected_through >= n

    def to_json(self) -> dict:
        return {
            "homologically_connected_through": self.homologically_connected_through,
            "through_dim": self.through_dim,
            "fields_tested": list(self.fields_tested),
            "torsion_suspected": self.torsion_suspected,
        }


def homological_connectivity(
    c: IndependenceComplex,
    through_dim: int,
    fields: Sequence = DEFAULT_FIELDS,
    face_budget: int = DEFAULT_FACE_BUDGET,
) -> ConnectivityVerdict:
    names = tuple(parse_field(f).name for f in fields)
    if c.is_empty():
        return ConnectivityVerdict(-2, through_dim, names, False)
    if through_dim < 0:
        return ConnectivityVerdict(through_dim, through_dim, names, False)
    profiles = tuple(reduced_homology(c, f, through_dim, face_budget) for f in fields)
    n = -1
    for i in range(0, through_dim + 1):
        if all(p.betti.get(i, 0) == 0 for p in profiles):
            n = i
        else:
            break
    torsion = False
    for i in range(-1, through_dim + 1):
        if len({p.betti.get(i, 0) for p in profiles}) > 1:
            torsion = True
    return ConnectivityVerdict(n, through_dim, names, torsion, profiles)


def is_homologically_connected(
    c: IndependenceComplex,
    n: int,
    fields: Sequence = DEFAULT_FIELDS,
    face_budget: int = DEFAULT_FACE_BUDGET,
) -> bool:
    """Homological n-connectivity; for n = -1 just non-emptiness."""
    if n < -1:
        return True
    if c.is_empty():
        return False
    return homological_connectivity(c, n, fields, face_budget).at_least(n)


def _as_complex(h) -> IndependenceComplex:
    return h if isinstance(h, IndependenceComplex) else IndependenceComplex(h)


def _remaining_neighbors(c: IndependenceComplex, v: int) -> frozenset[int]:
    return mask_to_set(c.graph.adjacency[v] & c.allowed_mask)


def verify_gluing_lemma(h, v: int, n: int, fields: Sequence = DEFAULT_FIELDS,
                        face_budget: int = DEFAULT_FACE_BUDGET) -> bool:
    """Homology-level check of: Ind(H - v) n-connected and Ind(H - N[v])
    (n-1)-connected imply Ind(H) n-connected. Vacuously true when a
    hypothesis fails. ``h`` is a Graph or an IndependenceComplex."""
    c = _as_complex(h)
    if v in c.excluded or not 0 <= v < c.graph.n:
        raise ValueError(f"vertex {v} is not in the complex")
    nbrs = _remaining_neighbors(c, v)
    if not is_homologically_connected(c.without([v]), n, fields, face_budget):
        return True
    if not is_homologically_connected(c.without(nbrs | {v}), n - 1, fields, face_budget):
        return True
    return is_homologically_connected(c, n, fields, face_budget)


class NeighborhoodNotComplete(ValueError):
    pass


def verify_fan_lemma(h, v: int, n: int, fields: Sequence = DEFAULT_FIELDS,
                     face_budget: int = DEFAULT_FACE_BUDGET) -> bool:
    """Homology-level check of the reduction at a vertex whose neighborhood is
    a clique: Ind(H - (N(v) u N(u))) (n-1)-connected for all u in N(v) implies
    Ind(H) n-connected."""
    c = _as_complex(h)
    if v in c.excluded or not 0 <= v < c.graph.n:
        raise ValueError(f"vertex {v} is not in the complex")
    nbrs = _remaining_neighbors(c, v)
    for a, b in itertools.combinations(sorted(nbrs), 2):
        if not c.graph.has_edge(a, b):
            raise NeighborhoodNotComplete(f"N({v}) is not a clique: {a} and {b} are not adjacent")
    for u in nbrs:
        removed = nbrs | _remaining_neighbors(c, u)
        if not is_homologically_connected(c.without(removed), n - 1, fields, face_budget):
            return True
    return is_homologically_connected(c, n, fields, face_budget)


def deleted_join_identity_check(n: int, q: int, fields: Sequence = DEFAULT_FIELDS,
                                face_budget: int = DEFAULT_FACE_BUDGET) -> bool:
    """For edgeless G on n vertices, Ind(G □ K_q) is the q-fold 2-wise deleted
    join of an (n-1)-simplex: its faces are the partial maps vertex -> level,
    and its reduced homology is (q-1)^n concentrated in dimension n-1."""
    c = IndependenceComplex(cartesian_product_complete(edgeless_graph(n), q))
    expected = set()
    for choice in itertools.product(range(q + 1), repeat=n):
        mask = 0
        for v, lvl in enumerate(choice):
            if lvl:
                mask |= 1 << product_index(v, lvl, q)
        expected.add(mask)
    actual = set()
    for k in range(-1, n + 1):
        actual.update(c.face_masks(k, face_budget))
    if actual != expected:
        return False
    want = (q - 1) ** n
    for f in fields:
        prof = reduced_homology(c, f, None, face_budget)
        nz = prof.nonzero()
        if nz != ({n - 1: want} if want else {}):
            return False
        if prof.euler_check is False:
            return False
    return True


def level_actions(q: int, p: int) -> list[tuple[int, ...]]:
    """The elementary abelian group (Z_p)^r acting on levels 1..q by
    translation of base-p digits; each element is a tuple ``perm`` with
    ``perm[i-1]`` the image level of level i. Identity first."""
    pp = prime_power_decomposition(q)
    if pp is None or pp[0] != p:
        raise ValueError(f"q = {q} is not a power of p = {p}")
    r = pp[1]

    def digits(x):
        return [(x // p**k) % p for k in range(r)]

    def number(ds):
        return sum(dd * p**k for k, dd in enumerate(ds))

    elems = []
    for shift in itertools.product(range(p), repeat=r):
        perm = tuple(
            number([(a + s) % p for a, s in zip(digits(lvl), shift)]) + 1 for lvl in range(q)
        )
        elems.append(perm)
    return elems


def free_action_check(g: Graph, q: int, p: int,
                      face_budget: int = DEFAULT_FACE_BUDGET) -> bool:
    """Every group element maps faces of Ind(G □ K_q) to faces, and no
    non-identity element fixes a nonempty face setwise."""
    elems = level_actions(q, p)
    c = IndependenceComplex(cartesian_product_complete(g, q))
    n = g.n
    all_faces = []
    for k in range(0, n):
        all_faces.extend(c.face_masks(k, face_budget))
    face_set = set(all_faces)
    for perm in elems[1:]:
        if any(perm[i] == i + 1 for i in range(q)):
            return False
        idx_map = [product_index(v, perm[lvl], q) for v in range(n) for lvl in range(q)]
        for f in all_faces:
            image = 0
            for low in _bits(f):
                image |= 1 << idx_map[low.bit_length() - 1]
            if image not in face_set or image == f:
                return False
    return True
