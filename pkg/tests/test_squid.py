import json
import random

import pytest

from tverberg.complex import IndependenceComplex
from tverberg.graph import (
    Graph,
    cartesian_product_complete,
    complete_graph,
    edgeless_graph,
    local_records,
    neighborhood,
    path_graph,
    product_index,
    random_graph,
    second_neighborhood,
    star_graph,
)
from tverberg.squid import (
    CriterionViolation,
    SquidError,
    SquidFamily,
    adversarial_family,
    allowed_arms,
    check_squid_theorem,
    family_from_json,
    family_to_json,
    load_family,
    make_type1_squid,
    make_type2_squid,
    random_family,
    random_squid,
    remove_family,
    squid_census,
    squid_census_by_vertex,
    verify_counting_lemma,
    verify_squid_theorem,
)

P3 = path_graph(3)  # a=0, b=1, c=2


def criterion_holds(g, q):
    return all(r.slack >= 1 for r in local_records(g, q))


def random_instance(rng, max_n=6, max_q=7):
    while True:
        n = rng.randint(2, max_n)
        g = random_graph(n, rng.random() * 0.6, rng)
        q = rng.randint(2, max_q)
        if criterion_holds(g, q):
            return g, q


def survivors(g, q, fam):
    return g.n * q - len(fam.removed_indices())


# construction

def test_type1_full_arms_on_path():
    s = make_type1_squid(P3, 5, 1, 0, 2)
    assert s.arms == {(0, 2), (2, 2)}
    assert s.removed_set() == {(0, 2), (2, 2)} | {(1, lvl) for lvl in range(1, 6)}


def test_type1_empty_arms_is_column():
    s = make_type1_squid(P3, 5, 1, 0, 2, arms=[])
    assert s.removed_set() == s.body_column()


def test_type1_rejects_wrong_level_arm():
    with pytest.raises(SquidError):
        make_type1_squid(P3, 5, 1, 0, 2, arms=[(2, 3)])


def test_type1_rejects_non_adjacent_partner():
    with pytest.raises(SquidError):
        make_type1_squid(P3, 5, 0, 2, 1)


def test_type1_rejects_bad_level():
    with pytest.raises(SquidError):
        make_type1_squid(P3, 5, 1, 0, 6)


def test_type2_star_center_full():
    g = star_graph(4)
    s = make_type2_squid(g, 3, 0, (1, 3))
    assert s.arms == {(leaf, lvl) for leaf in range(1, 5) for lvl in (1, 3)}


def test_type2_rejects_equal_levels():
    with pytest.raises(SquidError):
        make_type2_squid(P3, 5, 1, (2, 2))


def test_type2_isolated_body_is_column():
    g = edgeless_graph(3)
    s = make_type2_squid(g, 3, 0, (1, 2))
    assert s.arms == frozenset()
    assert s.removed_set() == s.body_column()


def test_removed_set_within_allowed_positions():
    rng = random.Random(1)
    for _ in range(300):
        g, q = random_instance(rng)
        w = rng.randrange(g.n)
        s = random_squid(g, q, w, rng)
        allowed = allowed_arms(g, q, w, s.kind, s.levels, s.partner)
        assert s.arms <= allowed
        assert not any(base == w for base, _ in s.arms)
        assert s.body_column() <= s.removed_set() <= allowed | s.body_column()


def test_same_set_different_body_are_different_squids():
    g = complete_graph(2)
    s0 = make_type1_squid(g, 2, 0, 1, 1, arms=[])
    s1 = make_type1_squid(g, 2, 1, 0, 1, arms=[])
    assert s0 != s1


# families and removal

def test_family_rejects_duplicate_bodies():
    s = make_type2_squid(P3, 5, 1, (1, 2))
    with pytest.raises(SquidError):
        SquidFamily(P3, 5, (s, s))


def test_empty_family_removes_nothing():
    c = remove_family(P3, 5, SquidFamily(P3, 5, ()))
    assert c == IndependenceComplex(cartesian_product_complete(P3, 5))


def test_covering_family_may_empty_complex():
    g = complete_graph(2)
    fam = SquidFamily(g, 2, (make_type2_squid(g, 2, 0, (1, 2)), make_type2_squid(g, 2, 1, (1, 2))))
    assert remove_family(g, 2, fam).is_empty()


def test_two_squids_on_path_keep_a_c_vertex():
    fam = SquidFamily(P3, 5, (make_type1_squid(P3, 5, 0, 1, 1), make_type2_squid(P3, 5, 1, (2, 3))))
    c = remove_family(P3, 5, fam)
    assert any(product_index(2, lvl, 5) in c.vertices() for lvl in range(1, 6))


# counting lemma

def test_counting_lemma_on_path():
    fam = SquidFamily(P3, 5, (make_type1_squid(P3, 5, 0, 1, 3), make_type2_squid(P3, 5, 1, (1, 2))))
    wit = verify_counting_lemma(P3, 5, fam)
    assert wit.vertex == 2
    assert product_index(2, wit.level, 5) not in fam.removed_indices()
    assert wit.census.weighted <= wit.bound < 5


def test_counting_lemma_empty_family():
    g = random_graph(5, 0.3, random.Random(2))
    q = max(r.n2 + 2 * r.n1 for r in local_records(g, 1)) + 1
    wit = verify_counting_lemma(g, q, SquidFamily(g, q, ()))
    assert (wit.vertex, wit.level) == (0, 1)


def test_counting_lemma_reports_criterion_violation():
    with pytest.raises(CriterionViolation) as info:
        verify_counting_lemma(P3, 4, SquidFamily(P3, 4, ()))
    assert info.value.vertex == 1


def test_counting_lemma_needs_fewer_squids_than_vertices():
    g = edgeless_graph(2)
    fam = SquidFamily(g, 3, (make_type2_squid(g, 3, 0, (1, 2)), make_type2_squid(g, 3, 1, (1, 2))))
    with pytest.raises(SquidError):
        verify_counting_lemma(g, 3, fam)


def test_counting_lemma_random_families():
    rng = random.Random(3)
    for _ in range(200):
        g, q = random_instance(rng)
        fam = random_family(g, q, rng.randrange(g.n), rng)
        wit = verify_counting_lemma(g, q, fam)
        assert wit.vertex not in fam.bodies()
        assert product_index(wit.vertex, wit.level, q) not in fam.removed_indices()


def test_census_two_ways_agree():
    rng = random.Random(4)
    for _ in range(300):
        g, q = random_instance(rng)
        fam = random_family(g, q, rng.randrange(g.n), rng)
        for v in range(g.n):
            if v in fam.bodies():
                continue
            assert squid_census(g, fam, v) == squid_census_by_vertex(g, fam, v)


def max_weight_family(g, q, v):
    """Type (ii) on every neighbor, type (i) through a common neighbor on
    every vertex at distance two: every squid reaches column v."""
    squids = []
    for w in sorted(neighborhood(g, v)):
        squids.append(make_type2_squid(g, q, w, (1, 2)))
    for w in sorted(second_neighborhood(g, v)):
        partner = min(neighborhood(g, w) & neighborhood(g, v))
        squids.append(make_type1_squid(g, q, w, partner, 1))
    return SquidFamily(g, q, tuple(squids))


def test_census_bound_is_attained():
    rng = random.Random(5)
    for _ in range(200):
        g, q = random_instance(rng)
        for v in range(g.n):
            fam = max_weight_family(g, q, v)
            if len(fam) >= g.n:
                continue
            census = squid_census(g, fam, v)
            assert census.weighted == len(second_neighborhood(g, v)) + 2 * len(neighborhood(g, v))
            verify_counting_lemma(g, q, fam, vertex=v)


def test_adversarial_family_survives_and_is_bounded():
    rng = random.Random(6)
    for _ in range(60):
        g, q = random_instance(rng)
        v = rng.randrange(g.n)
        res = adversarial_family(g, q, v, rng)
        bound = len(second_neighborhood(g, v)) + 2 * len(neighborhood(g, v))
        assert res.removed_levels <= res.census_weight <= bound < q
        if len(res.family) < g.n:
            wit = verify_counting_lemma(g, q, res.family, vertex=v)
            assert wit.removed_levels == res.removed_levels


def test_adversarial_exhaustive_matches_brute_force_on_path():
    res = adversarial_family(P3, 5, 2, random.Random(0))
    assert res.exhaustive
    # type (ii) at b takes two levels of c, type (i) at a with partner b a third
    assert res.removed_levels == 3 == res.census_weight


def test_adversarial_hill_climb_path():
    g = star_graph(5)
    res = adversarial_family(g, 13, 1, random.Random(0), exhaustive_limit=1)
    assert not res.exhaustive
    assert res.removed_levels <= res.census_weight <= 2 + 4


def test_monotonicity():
    rng = random.Random(7)
    for _ in range(200):
        g, q = random_instance(rng)
        fam = random_family(g, q, rng.randint(1, g.n - 1), rng)
        base = survivors(g, q, fam)
        full = SquidFamily(g, q, tuple(
            make_type1_squid(g, q, s.body, s.partner, s.levels[0]) if s.kind == "i"
            else make_type2_squid(g, q, s.body, s.levels) for s in fam.squids))
        assert survivors(g, q, full) <= base
        smaller = SquidFamily(g, q, fam.squids[1:])
        assert survivors(g, q, smaller) >= base


# the connectivity theorem

def test_theorem_with_no_squids_is_the_corollary():
    fam = SquidFamily(P3, 5, ())
    chk = check_squid_theorem(P3, 5, fam)
    assert chk.target == 1 and chk.holds


def test_theorem_one_type2_squid_on_path():
    fam = SquidFamily(P3, 5, (make_type2_squid(P3, 5, 1, (1, 2)),))
    chk = check_squid_theorem(P3, 5, fam)
    assert chk.target == 0
    assert chk.verdict.homologically_connected_through >= 0


def test_theorem_maximal_family_is_nonempty():
    rng = random.Random(8)
    for _ in range(50):
        g, q = random_instance(rng, max_n=5, max_q=5)
        fam = random_family(g, q, g.n - 1, rng)
        assert verify_squid_theorem(g, q, fam)
        assert not remove_family(g, q, fam).is_empty()


def test_theorem_random_small():
    rng = random.Random(9)
    for _ in range(40):
        g, q = random_instance(rng, max_n=4, max_q=5)
        fam = random_family(g, q, rng.randrange(g.n), rng)
        assert verify_squid_theorem(g, q, fam, ("q", "gf2"))


# I/O

def test_family_json_roundtrip(tmp_path):
    fam = SquidFamily(P3, 5, (make_type1_squid(P3, 5, 0, 1, 3, arms=[(1, 3)]),
                              make_type2_squid(P3, 5, 2, (1, 4))))
    data = family_to_json(fam)
    assert data[0] == {"body": 0, "kind": "i", "levels": [3], "arms": [[1, 3]], "partner": 1}
    assert family_from_json(P3, 5, json.loads(json.dumps(data))) == fam
    path = tmp_path / "fam.json"
    path.write_text(json.dumps(data))
    assert load_family(P3, 5, path) == fam


@pytest.mark.parametrize("bad", [
    [{"body": 0, "kind": "i", "levels": [1]}],
    [{"body": 0, "kind": "ii", "levels": [1]}],
    [{"body": 0, "kind": "iii", "levels": [1]}],
])
def test_family_json_errors(bad):
    with pytest.raises(SquidError):
        family_from_json(P3, 5, bad)


def test_random_squid_rejects_isolated_body_when_q_is_one():
    with pytest.raises(SquidError):
        random_squid(Graph(2), 1, 0, random.Random(0))
