import itertools
import json
import logging
import random
from fractions import Fraction

import pytest

from tverberg.affine import (
    PointConfig,
    TverbergPartition,
    Truncated,
    _hull_system,
    config_from_json,
    config_to_json,
    count_partitions,
    enumerate_partitions,
    find_partition,
    guarantee_applies,
    hulls_intersect,
    load_points,
    sierksma_bound,
    verify_partition,
    verify_witness,
)
from tverberg.graph import Graph, path_graph, save_graph
from tverberg.lp import check_farkas

F = Fraction
SQUARE = PointConfig(2, ((0, 0), (1, 0), (1, 1), (0, 1)))


def line(*xs, g=None):
    return PointConfig(1, tuple((x,) for x in xs), g)


def random_config(rng, d, n, g=None, lo=-6, hi=6):
    pts = tuple(tuple(F(rng.randint(lo, hi), rng.randint(1, 3)) for _ in range(d)) for _ in range(n))
    return PointConfig(d, pts, g)


def keys(parts_iter):
    return [p.parts for p in parts_iter if isinstance(p, TverbergPartition)]


# hull intersection

def test_midpoint_on_the_line():
    cert = hulls_intersect(line(0, 1, 2), [[0, 2], [1]])
    assert cert.feasible and cert.witness == (1,)


def test_square_diagonals_cross_at_center():
    cert = hulls_intersect(SQUARE, [[0, 2], [1, 3]])
    assert cert.feasible and cert.witness == (F(1, 2), F(1, 2))
    assert verify_witness(SQUARE, [[0, 2], [1, 3]], cert.witness, cert.coefficients)


def test_square_opposite_sides_are_disjoint():
    cert = hulls_intersect(SQUARE, [[0, 1], [2, 3]])
    assert not cert.feasible
    assert cert.farkas is not None
    A, b, _ = _hull_system(SQUARE, [[0, 1], [2, 3]])
    assert check_farkas(A, b, cert.farkas)


def test_touching_hulls_intersect():
    cert = hulls_intersect(line(0, 1, 1, 2), [[0, 1], [2, 3]])
    assert cert.feasible and cert.witness == (1,)


def test_hull_errors():
    with pytest.raises(ValueError):
        hulls_intersect(SQUARE, [[0], []])
    with pytest.raises(IndexError):
        hulls_intersect(SQUARE, [[0], [4]])
    with pytest.raises(ValueError):
        hulls_intersect(SQUARE, [])


def test_verify_witness_catches_tampering():
    cert = hulls_intersect(SQUARE, [[0, 2], [1, 3]])
    assert not verify_witness(SQUARE, [[0, 2], [1, 3]], (F(1, 2), F(1, 3)), cert.coefficients)
    bad = ((F(1, 2), F(1, 2)), (F(1), F(0)))
    assert not verify_witness(SQUARE, [[0, 2], [1, 3]], cert.witness, bad)


def test_point_config_validation():
    with pytest.raises(ValueError):
        PointConfig(2, ((0, 0), (1,)))
    with pytest.raises(ValueError):
        PointConfig(0, ())
    with pytest.raises(ValueError):
        PointConfig(1, ((0,), (1,)), path_graph(3))


# find and enumerate

def test_three_collinear_points():
    part = find_partition(line(0, 1, 2), 2)
    assert part.parts == ((0, 2), (1,))
    assert verify_partition(line(0, 1, 2), part, 2)


def test_seven_generic_points_have_a_partition():
    cfg = random_config(random.Random(1), 2, 7)
    part = find_partition(cfg, 3)
    assert part is not None and verify_partition(cfg, part, 3)


def test_constraint_edge_separates_points():
    cfg = line(0, 1, 2, 3, 4, g=Graph(5, [(0, 1)]))
    part = find_partition(cfg, 3)
    assert part is not None and verify_partition(cfg, part, 3)
    assert not any(0 in p and 1 in p for p in part.parts)


def test_radon_on_the_line_is_unique():
    assert keys(enumerate_partitions(line(0, 1, 2), 2)) == [((0, 2), (1,))]


def test_convex_quadrilateral_has_only_the_diagonal_split():
    assert keys(enumerate_partitions(SQUARE, 2)) == [((0, 2), (1, 3))]


def test_five_collinear_points_meet_sierksma():
    res = count_partitions(line(0, 1, 2, 3, 4), 3)
    assert res.count >= sierksma_bound(3, 1) == 2
    assert all(verify_partition(line(0, 1, 2, 3, 4), p, 3) for p in res.partitions)


def test_canonical_order_and_uniqueness():
    cfg = random_config(random.Random(2), 2, 7)
    out = keys(enumerate_partitions(cfg, 3))
    assert len(out) == len(set(out))
    for parts in out:
        assert [p[0] for p in parts] == sorted(p[0] for p in parts)
        assert all(list(p) == sorted(p) for p in parts)
    # restricted growth order is lexicographic in the label strings
    def labels(parts):
        lab = [0] * 7
        for i, p in enumerate(parts):
            for x in p:
                lab[x] = i
        return lab
    assert [labels(p) for p in out] == sorted(labels(p) for p in out)


def test_enumeration_matches_brute_force():
    rng = random.Random(3)
    for _ in range(10):
        n = rng.randint(3, 6)
        cfg = random_config(rng, 1, n)
        q = 2 if n < 5 else 3
        expect = set()
        for labels in itertools.product(range(q), repeat=n):
            if len(set(labels)) != q:
                continue
            parts = sorted(tuple(i for i in range(n) if labels[i] == k) for k in range(q))
            if hulls_intersect(cfg, parts).feasible:
                expect.add(tuple(parts))
        assert set(keys(enumerate_partitions(cfg, q))) == expect


def test_relabeling_permutes_partitions():
    rng = random.Random(4)
    for _ in range(8):
        cfg = random_config(rng, 2, 6)
        perm = list(range(6))
        rng.shuffle(perm)
        moved = PointConfig(2, tuple(cfg.points[perm.index(i)] for i in range(6)))
        # point k of cfg is point perm[k] of moved
        orig = {tuple(sorted(tuple(sorted(perm[x] for x in p)) for p in parts))
                for parts in keys(enumerate_partitions(cfg, 2))}
        new = {tuple(sorted(parts)) for parts in keys(enumerate_partitions(moved, 2))}
        assert orig == new


def test_affine_maps_preserve_partitions():
    rng = random.Random(5)
    for _ in range(8):
        cfg = random_config(rng, 2, 6)
        a, b, c, d = (F(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(4))
        if a * d - b * c == 0:
            a, d = F(1), F(2)
        shift = (F(rng.randint(-5, 5)), F(rng.randint(-5, 5), 7))
        mapped = PointConfig(2, tuple((a * x + b * y + shift[0], c * x + d * y + shift[1])
                                      for x, y in cfg.points))
        before = list(enumerate_partitions(cfg, 2))
        after = list(enumerate_partitions(mapped, 2))
        assert keys(before) == keys(after)
        for p in after:
            assert verify_partition(mapped, p)


def test_removing_constraints_never_loses_partitions():
    rng = random.Random(6)
    for _ in range(10):
        g = Graph(7, [(u, v) for u in range(7) for v in range(u + 1, 7) if rng.random() < 0.2])
        cfg = random_config(rng, 2, 7, g)
        constrained = set(keys(enumerate_partitions(cfg, 3)))
        free = set(keys(enumerate_partitions(cfg.with_constraints(None), 3)))
        assert constrained <= free
        for parts in constrained:
            assert not any(g.has_edge(u, v) for p in parts for u in p for v in p if u < v)


def test_parallel_matches_sequential():
    cfg = random_config(random.Random(7), 2, 7, Graph(7, [(0, 1), (2, 5)]))
    seq = keys(enumerate_partitions(cfg, 3))
    par = keys(enumerate_partitions(cfg, 3, workers=2))
    assert seq == par and seq


def test_parallel_truncation_matches_sequential():
    cfg = random_config(random.Random(8), 2, 7)
    for budget in (1, 5, 40, 300):
        seq = list(enumerate_partitions(cfg, 3, partition_budget=budget))
        par = list(enumerate_partitions(cfg, 3, partition_budget=budget, workers=2))
        assert keys(seq) == keys(par)
        assert isinstance(seq[-1], Truncated) == isinstance(par[-1], Truncated)


def test_budget_truncation_marker():
    cfg = random_config(random.Random(9), 2, 7)
    out = list(enumerate_partitions(cfg, 3, partition_budget=3))
    assert isinstance(out[-1], Truncated)
    assert out[-1].budget == 3
    full = keys(enumerate_partitions(cfg, 3))
    assert keys(out) == full[:len(keys(out))]
    assert count_partitions(cfg, 3, 3).truncated
    # a large enough budget is not a truncation
    assert not count_partitions(cfg, 3, 10**6).truncated


def test_allow_empty_admits_fewer_parts():
    cfg = line(0, 1, 2)
    strict = keys(enumerate_partitions(cfg, 3))
    assert strict == [((0,), (1,), (2,))] or strict == []
    loose = keys(enumerate_partitions(cfg, 3, allow_empty=True))
    assert ((0, 1, 2),) in loose
    assert ((0, 2), (1,)) in loose
    assert set(strict) <= set(loose)


def test_wrong_point_count_warns(caplog):
    with caplog.at_level(logging.WARNING):
        part = find_partition(line(0, 1, 2, 3), 2)
    assert part is not None
    assert any("points given" in r.message for r in caplog.records)


def test_guarantee_applies():
    assert guarantee_applies(line(0, 1, 2), 2)
    assert not guarantee_applies(line(0, 1, 2, g=path_graph(3)), 2)
    assert guarantee_applies(line(0, 1, 2, 3, 4, 5, 6), 4)
    assert not guarantee_applies(line(0, 1, 2, 3, 4, 5), 4)  # one point short
    assert not guarantee_applies(line(*range(11)), 6)  # not a prime power


def test_falsification_sentinel_on_random_instances():
    rng = random.Random(10)
    tried = 0
    while tried < 15:
        q = rng.choice([2, 3])
        d = rng.choice([1, 2]) if q == 3 else rng.choice([1, 2, 3])
        n = (d + 1) * (q - 1) + 1
        g = Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.15])
        cfg = random_config(rng, d, n, g)
        if not guarantee_applies(cfg, q):
            continue
        tried += 1
        part = find_partition(cfg, q)
        assert part is not None and verify_partition(cfg, part, q)


def test_sierksma_bound():
    assert [sierksma_bound(q, 1) for q in (2, 3, 4)] == [1, 2, 6]
    assert sierksma_bound(3, 2) == 4


# I/O

def test_config_json_roundtrip(tmp_path):
    cfg = PointConfig(2, ((F(1, 2), 3), (0, F(-7, 3)), (1, 1)))
    data = config_to_json(cfg)
    assert data["points"][0] == ["1/2", "3"]
    assert config_from_json(json.loads(json.dumps(data))) == cfg
    (tmp_path / "p.json").write_text(json.dumps(data))
    save_graph(path_graph(3), tmp_path / "g.txt")
    loaded = load_points(tmp_path / "p.json", tmp_path / "g.txt")
    assert loaded.points == cfg.points and loaded.constraint_graph == path_graph(3)


def test_partition_json_is_exact():
    part = find_partition(PointConfig(2, ((0, 0), (3, 0), (0, 3), (1, 1))), 2)
    out = part.to_json()
    assert all(isinstance(x, str) for x in out["witness"])
    approx = part.to_json(approx=True)
    assert "witness_approx_inexact" in approx
