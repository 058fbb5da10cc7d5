import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sympy import GF, symbols, exp, sqrt, series, factorial
from sympy.polys.matrices import DomainMatrix

from tverberg import kernels


def masks_from_edges(n, edges):
    adj = [0] * n
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj


@st.composite
def small_graphs(draw, max_n=10):
    n = draw(st.integers(0, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return n, chosen


@settings(max_examples=150, deadline=None)
@given(small_graphs(), st.integers(0, 5), st.data())
def test_independent_sets_match_brute_force(backend, graph, size, data):
    n, edges = graph
    allowed = data.draw(st.integers(0, (1 << n) - 1)) if n else 0
    adj = masks_from_edges(n, edges)
    es = set(edges)
    expect = []
    verts = [v for v in range(n) if allowed >> v & 1]
    for combo in itertools.combinations(verts, size):
        if not any((a, b) in es for a, b in itertools.combinations(combo, 2)):
            expect.append(sum(1 << v for v in combo))
    assert backend.independent_sets(adj, allowed, size) == expect


def test_independent_sets_limit_stops_early(backend):
    adj = [0] * 6
    out = backend.independent_sets(adj, 63, 2, limit=4)
    assert len(out) == 5
    assert out == backend.independent_sets(adj, 63, 2)[:5]


def test_independent_sets_negative_size(backend):
    assert backend.independent_sets([0, 0], 3, -1) == []


def double_factorial_odd(n):
    return math.prod(range(n - 1, 0, -2)) if n > 0 else 1


@pytest.mark.parametrize("n", range(0, 11, 2))
def test_perfect_matching_counts(backend, n):
    full = [((1 << n) - 1) & ~(1 << v) for v in range(n)]
    assert backend.count_regular_subgraphs(full, n, 1) == double_factorial_odd(n)


def test_two_regular_counts_match_generating_function(backend):
    # labeled 2-regular graphs: egf exp(-x/2 - x^2/4) / sqrt(1 - x)
    x = symbols("x")
    poly = series(exp(-x / 2 - x**2 / 4) / sqrt(1 - x), x, 0, 10).removeO()
    for n in range(0, 10):
        expect = int(poly.coeff(x, n) * factorial(n))
        full = [((1 << n) - 1) & ~(1 << v) for v in range(n)]
        assert backend.count_regular_subgraphs(full, n, 2) == expect


@settings(max_examples=60, deadline=None)
@given(small_graphs(max_n=7), st.integers(0, 3))
def test_regular_subgraph_count_matches_edge_subsets(backend, graph, degree):
    n, edges = graph
    expect = 0
    for k in range(len(edges) + 1):
        if 2 * k != n * degree:
            continue
        for sub in itertools.combinations(edges, k):
            deg = [0] * n
            for u, v in sub:
                deg[u] += 1
                deg[v] += 1
            expect += all(x == degree for x in deg)
    if degree == 0:
        expect = 1
    assert backend.count_regular_subgraphs(masks_from_edges(n, edges), n, degree) == expect


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 7), st.integers(1, 7), st.sampled_from([2, 3, 5, 7, 101]), st.data())
def test_rank_mod_p_matches_sympy(backend, rows, cols, p, data):
    entries = data.draw(st.lists(st.integers(-3, 3), min_size=rows * cols, max_size=rows * cols))
    m = np.array(entries, dtype=np.int64).reshape(rows, cols)
    oracle = DomainMatrix([[GF(p)(int(v)) for v in row] for row in m.tolist()], (rows, cols), GF(p))
    assert backend.rank_mod_p(m, p) == oracle.rank()


def test_dispatcher_reports_backend():
    assert kernels.BACKEND in ("cython", "python")
    assert kernels.BACKEND == ("cython" if kernels.COMPILED_AVAILABLE else "python")


def test_dispatcher_falls_back_above_64_vertices():
    n = 70
    adj = [0] * n
    out = kernels.independent_sets(adj, (1 << n) - 1, 1)
    assert len(out) == n
