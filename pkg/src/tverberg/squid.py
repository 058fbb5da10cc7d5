"""Squids in ``G □ K_q``: construction, removal, the counting lemma witness,
and desk-scale checks of the squid connectivity theorem.

A squid removes a whole body column ``{w} x [q]`` plus some arms. Type "i"
squids have arms on one level inside ``(N(v) u N(w)) x {i}`` for a partner
``v ~ w``; type "ii" squids have arms on two levels inside ``N(w) x {i, j}``.
Levels are 1-based throughout.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .complex import (
    DEFAULT_FACE_BUDGET,
    DEFAULT_FIELDS,
    IndependenceComplex,
    homological_connectivity,
)
from .graph import (
    Graph,
    cartesian_product_complete,
    local_records,
    neighborhood,
    product_index,
    second_neighborhood,
)

Arm = tuple[int, int]


class SquidError(ValueError):
    pass


class CriterionViolation(ValueError):
    """The local criterion fails, so the squid statements make no promise."""

    def __init__(self, vertex: int, slack: int):
        super().__init__(f"local criterion fails at vertex {vertex} (slack {slack})")
        self.vertex = vertex
        self.slack = slack


class Falsified(AssertionError):
    """A checked statement failed on an instance meeting its hypotheses."""


@dataclass(frozen=True)
class Squid:
    """Equality is by parameters, so equal vertex sets with different bodies
    stay different squids."""

    q: int
    body: int
    kind: str
    levels: tuple[int, ...]
    partner: int | None
    arms: frozenset[Arm]

    def body_column(self) -> frozenset[Arm]:
        return frozenset((self.body, lvl) for lvl in range(1, self.q + 1))

    def removed_set(self) -> frozenset[Arm]:
        return self.arms | self.body_column()

    def removed_indices(self) -> frozenset[int]:
        return frozenset(product_index(v, lvl, self.q) for v, lvl in self.removed_set())

    def to_json(self) -> dict:
        out = {"body": self.body, "kind": self.kind, "levels": list(self.levels),
               "arms": [list(a) for a in sorted(self.arms)]}
        if self.partner is not None:
            out["partner"] = self.partner
        return out


def allowed_arms(g: Graph, q: int, body: int, kind: str, levels: Sequence[int],
                 partner: int | None = None) -> frozenset[Arm]:
    """Every arm position a squid with these parameters may use."""
    if kind == "i":
        base = (neighborhood(g, partner) | neighborhood(g, body)) - {body}
    else:
        base = neighborhood(g, body)
    return frozenset((v, lvl) for v in base for lvl in levels)


def _check_common(g: Graph, q: int, body: int, levels: Sequence[int]) -> None:
    if not 0 <= body < g.n:
        raise SquidError(f"body {body} is not a vertex")
    for lvl in levels:
        if not 1 <= lvl <= q:
            raise SquidError(f"level {lvl} outside 1..{q}")


def _resolve_arms(allowed: frozenset[Arm], arms) -> frozenset[Arm]:
    if arms is None:
        return allowed
    arms = frozenset((int(v), int(lvl)) for v, lvl in arms)
    bad = arms - allowed
    if bad:
        raise SquidError(f"arms outside the allowed positions: {sorted(bad)}")
    return arms


def make_type1_squid(g: Graph, q: int, body: int, partner: int, level: int,
                     arms: Iterable[Arm] | None = None) -> Squid:
    """Type (i) squid; ``arms=None`` means fully armed."""
    _check_common(g, q, body, [level])
    if not 0 <= partner < g.n or not g.has_edge(body, partner):
        raise SquidError(f"partner {partner} is not adjacent to body {body}")
    allowed = allowed_arms(g, q, body, "i", [level], partner)
    return Squid(q, body, "i", (level,), partner, _resolve_arms(allowed, arms))


def make_type2_squid(g: Graph, q: int, body: int, levels: tuple[int, int],
                     arms: Iterable[Arm] | None = None) -> Squid:
    """Type (ii) squid on levels ``i < j``; ``arms=None`` means fully armed."""
    i, j = levels
    _check_common(g, q, body, [i, j])
    if not i < j:
        raise SquidError(f"type (ii) levels must satisfy i < j, got {levels}")
    allowed = allowed_arms(g, q, body, "ii", [i, j])
    return Squid(q, body, "ii", (i, j), None, _resolve_arms(allowed, arms))


@dataclass(frozen=True)
class SquidFamily:
    graph: Graph
    q: int
    squids: tuple[Squid, ...]

    def __post_init__(self):
        object.__setattr__(self, "squids", tuple(self.squids))
        bodies = [s.body for s in self.squids]
        if len(set(bodies)) != len(bodies):
            raise SquidError(f"squid bodies must be distinct, got {bodies}")
        for s in self.squids:
            if s.q != self.q:
                raise SquidError("squid built for a different q")

    def __len__(self):
        return len(self.squids)

    def bodies(self) -> frozenset[int]:
        return frozenset(s.body for s in self.squids)

    def removed_indices(self) -> frozenset[int]:
        out: frozenset[int] = frozenset()
        for s in self.squids:
            out |= s.removed_indices()
        return out

    def by_body(self) -> dict[int, Squid]:
        return {s.body: s for s in self.squids}


def remove_family(g: Graph, q: int, fam: SquidFamily) -> IndependenceComplex:
    """Ind(G □ K_q minus the union of the family's vertex sets)."""
    if fam.q != q or fam.graph != g:
        raise SquidError("family was built for a different product")
    return IndependenceComplex(cartesian_product_complete(g, q), fam.removed_indices())


# --- counting lemma --------------------------------------------------------


@dataclass(frozen=True)
class Census:
    """Squids with an arm in column v: type (i) with body not adjacent to v
    (a), type (i) with body adjacent to v (b), type (ii) (c)."""

    a: int
    b: int
    c: int

    @property
    def weighted(self) -> int:
        return self.a + self.b + 2 * self.c


@dataclass(frozen=True)
class CountingWitness:
    vertex: int
    level: int
    census: Census
    n1: int
    n2: int
    q: int
    removed_levels: int

    @property
    def bound(self) -> int:
        return self.n2 + 2 * self.n1


def squid_census(g: Graph, fam: SquidFamily, v: int) -> Census:
    """Census by scanning every squid for an arm in column v."""
    a = b = c = 0
    for s in fam.squids:
        if not any(base == v for base, _ in s.arms):
            continue
        if s.kind == "ii":
            c += 1
        elif g.has_edge(s.body, v):
            b += 1
        else:
            a += 1
    return Census(a, b, c)


def squid_census_by_vertex(g: Graph, fam: SquidFamily, v: int) -> Census:
    """Census by scanning candidate bodies within distance two of v."""
    index = fam.by_body()
    column = {(v, lvl) for lvl in range(1, fam.q + 1)}
    a = b = c = 0
    for w in sorted(neighborhood(g, v) | second_neighborhood(g, v)):
        s = index.get(w)
        if s is None or not (s.arms & column):
            continue
        if s.kind == "ii":
            c += 1
        elif w in neighborhood(g, v):
            b += 1
        else:
            a += 1
    return Census(a, b, c)


def _require_criterion(g: Graph, q: int) -> None:
    for r in local_records(g, q):
        if r.slack < 1:
            raise CriterionViolation(r.vertex, r.slack)


def verify_counting_lemma(g: Graph, q: int, fam: SquidFamily,
                          vertex: int | None = None) -> CountingWitness:
    """A vertex ``(v, level)`` of the product surviving removal of the family.

    ``v`` is the first vertex that is not a body (or ``vertex`` if given). The
    census at v is recomputed and ``a + b + 2c <= |N2(v)| + 2|N(v)| < q`` is
    asserted on the way; a failure raises :class:`Falsified`.
    """
    if len(fam) >= g.n:
        raise SquidError(f"need fewer squids ({len(fam)}) than vertices ({g.n})")
    _require_criterion(g, q)
    bodies = fam.bodies()
    if vertex is None:
        vertex = min(v for v in range(g.n) if v not in bodies)
    elif vertex in bodies:
        raise SquidError(f"vertex {vertex} is the body of a squid")
    n1 = len(neighborhood(g, vertex))
    n2 = len(second_neighborhood(g, vertex))
    census = squid_census(g, fam, vertex)
    if census.a > n2 or census.b + census.c > n1:
        raise Falsified(f"census {census} exceeds neighborhood sizes at {vertex}")
    if not census.weighted <= n2 + 2 * n1 < q:
        raise Falsified(f"census {census} violates a+b+2c <= |N2|+2|N| < q at {vertex}")
    removed = fam.removed_indices()
    gone = [lvl for lvl in range(1, q + 1) if product_index(vertex, lvl, q) in removed]
    if len(gone) > census.weighted:
        raise Falsified(f"{len(gone)} levels removed at {vertex}, census allows {census.weighted}")
    for lvl in range(1, q + 1):
        if product_index(vertex, lvl, q) not in removed:
            return CountingWitness(vertex, lvl, census, n1, n2, q, len(gone))
    raise Falsified(f"column {vertex} fully removed")


# --- adversarial families --------------------------------------------------


def _options(g: Graph, q: int, w: int, v: int) -> list[tuple]:
    """Squid parameter choices at body w that can put an arm in column v."""
    opts: list[tuple] = []
    near = neighborhood(g, v)
    if w in near:
        opts.extend(("ii", pair, None) for pair in itertools.combinations(range(1, q + 1), 2))
        for p in sorted(neighborhood(g, w)):
            opts.extend(("i", (lvl,), p) for lvl in range(1, q + 1))
    else:
        for p in sorted(neighborhood(g, w) & near):
            opts.extend(("i", (lvl,), p) for lvl in range(1, q + 1))
    return opts


def _build(g: Graph, q: int, w: int, opt: tuple) -> Squid:
    kind, levels, partner = opt
    if kind == "ii":
        return make_type2_squid(g, q, w, levels)
    return make_type1_squid(g, q, w, partner, levels[0])


def _score(g: Graph, v: int, squids: Sequence[Squid]) -> tuple[int, int]:
    levels = set()
    weight = 0
    for s in squids:
        hit = {lvl for base, lvl in s.arms if base == v}
        if hit:
            levels |= hit
            weight += 2 if s.kind == "ii" else 1
    return len(levels), weight


@dataclass(frozen=True)
class AdversarialResult:
    family: SquidFamily
    vertex: int
    removed_levels: int
    census_weight: int
    exhaustive: bool


def adversarial_family(g: Graph, q: int, v: int, rng, exhaustive_limit: int = 4096,
                       restarts: int = 8, extra_bodies: bool = True) -> AdversarialResult:
    """Fully armed family, all bodies except v, maximizing the number of
    levels removed from column v (ties broken by census weight a+b+2c).

    Exhaustive over squid parameters when the search space has at most
    ``exhaustive_limit`` points, randomized hill-climbing otherwise.
    """
    targets = sorted(neighborhood(g, v) | second_neighborhood(g, v))
    options = [_options(g, q, w, v) for w in targets]
    built = [[_build(g, q, w, o) for o in opts] for w, opts in zip(targets, options)]
    space = math.prod(len(o) for o in options) if options else 1
    best_pick = None
    best = (-1, -1)
    exhaustive = space <= exhaustive_limit
    if exhaustive:
        for pick in itertools.product(*(range(len(o)) for o in options)):
            sc = _score(g, v, [built[t][k] for t, k in enumerate(pick)])
            if sc > best:
                best, best_pick = sc, pick
    else:
        for _ in range(restarts):
            pick = [rng.randrange(len(o)) for o in options]
            cur = _score(g, v, [built[t][k] for t, k in enumerate(pick)])
            improved = True
            while improved:
                improved = False
                for t in rng.sample(range(len(options)), len(options)):
                    for k in range(len(options[t])):
                        trial = list(pick)
                        trial[t] = k
                        sc = _score(g, v, [built[s][j] for s, j in enumerate(trial)])
                        if sc > cur:
                            pick, cur, improved = trial, sc, True
            if cur > best:
                best, best_pick = cur, tuple(pick)
    squids = [built[t][k] for t, k in enumerate(best_pick or ())]
    if extra_bodies:
        # bodies at distance >= 3 from v cannot reach column v
        used = set(targets) | {v}
        for w in range(g.n):
            if w not in used and _admits_squid(g, q, w):
                squids.append(random_squid(g, q, w, rng))
    fam = SquidFamily(g, q, tuple(squids))
    return AdversarialResult(fam, v, best[0], best[1], exhaustive)


def _admits_squid(g: Graph, q: int, body: int) -> bool:
    return q >= 2 or g.degree(body) > 0


def random_squid(g: Graph, q: int, body: int, rng) -> Squid:
    """Random squid at ``body`` with a random subset of its allowed arms."""
    if not _admits_squid(g, q, body):
        raise SquidError(f"no squid exists at isolated body {body} when q < 2")
    nb = sorted(neighborhood(g, body))
    if nb and (q < 2 or rng.random() < 0.5):
        partner = rng.choice(nb)
        level = rng.randint(1, q)
        allowed = sorted(allowed_arms(g, q, body, "i", [level], partner))
        arms = [a for a in allowed if rng.random() < 0.6]
        return make_type1_squid(g, q, body, partner, level, arms)
    i, j = sorted(rng.sample(range(1, q + 1), 2))
    allowed = sorted(allowed_arms(g, q, body, "ii", [i, j]))
    arms = [a for a in allowed if rng.random() < 0.6]
    return make_type2_squid(g, q, body, (i, j), arms)


def random_family(g: Graph, q: int, m: int, rng) -> SquidFamily:
    bodies = rng.sample(range(g.n), m)
    return SquidFamily(g, q, tuple(random_squid(g, q, w, rng) for w in bodies))


# --- the connectivity theorem ----------------------------------------------


@dataclass(frozen=True)
class SquidTheoremCheck:
    target: int
    verdict: object
    holds: bool


def check_squid_theorem(g: Graph, q: int, fam: SquidFamily, fields=DEFAULT_FIELDS,
                        face_budget: int = DEFAULT_FACE_BUDGET) -> SquidTheoremCheck:
    if len(fam) >= g.n:
        raise SquidError(f"need fewer squids ({len(fam)}) than vertices ({g.n})")
    _require_criterion(g, q)
    target = g.n - len(fam) - 2
    c = remove_family(g, q, fam)
    verdict = homological_connectivity(c, target, fields, face_budget)
    return SquidTheoremCheck(target, verdict, verdict.at_least(target))


def verify_squid_theorem(g: Graph, q: int, fam: SquidFamily, fields=DEFAULT_FIELDS,
                         face_budget: int = DEFAULT_FACE_BUDGET) -> bool:
    """Ind(G □ K_q minus the family) is homologically (|V(G)| - m - 2)-connected."""
    return check_squid_theorem(g, q, fam, fields, face_budget).holds


# --- I/O -------------------------------------------------------------------


def squid_from_json(g: Graph, q: int, data: dict) -> Squid:
    kind = str(data["kind"])
    levels = [int(x) for x in data["levels"]]
    arms = data.get("arms")
    if kind == "i":
        if len(levels) != 1 or "partner" not in data:
            raise SquidError("type (i) squid needs one level and a partner")
        return make_type1_squid(g, q, int(data["body"]), int(data["partner"]), levels[0], arms)
    if kind == "ii":
        if len(levels) != 2:
            raise SquidError("type (ii) squid needs two levels")
        return make_type2_squid(g, q, int(data["body"]), (levels[0], levels[1]), arms)
    raise SquidError(f"unknown squid kind {kind!r}")


def family_from_json(g: Graph, q: int, data: list) -> SquidFamily:
    return SquidFamily(g, q, tuple(squid_from_json(g, q, d) for d in data))


def family_to_json(fam: SquidFamily) -> list:
    return [s.to_json() for s in fam.squids]


def load_family(g: Graph, q: int, path) -> SquidFamily:
    return family_from_json(g, q, json.loads(Path(path).read_text()))
