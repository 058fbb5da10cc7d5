"""Rebuild src/tverberg/data/grinberg.json.

The Grinberg graph is the cubic planar graph with 21 pentagonal faces,
3 octagons and 1 nonagon. We search face spirals of that face vector on the
dual triangulation, keep 46-vertex cubic duals, and check that exactly one
graph turns up up to isomorphism. Vertices are then numbered by BFS ring from
the fixed point of its order-3 rotation; labels are "r<ring>.<k>".

Needs networkx (not a runtime dependency of the package).

    python3 tools/make_grinberg.py            # write the data file
    python3 tools/make_grinberg.py --check    # compare with the bundled file
"""

import argparse
import itertools
import json
import sys
from pathlib import Path

import networkx as nx

FACE_SIZES = {5: 21, 8: 3, 9: 1}
OUT = Path(__file__).resolve().parents[1] / "src" / "tverberg" / "data" / "grinberg.json"


def windup(sizes):
    """Dual triangulation from a face spiral, or None if the spiral fails."""
    adj = [set() for _ in sizes]
    left = list(sizes)

    def connect(a, b):
        if b in adj[a]:
            raise ValueError
        adj[a].add(b)
        adj[b].add(a)
        left[a] -= 1
        left[b] -= 1
        if left[a] < 0 or left[b] < 0:
            raise ValueError

    try:
        connect(0, 1)
        connect(0, 2)
        connect(1, 2)
        rim = [0, 1, 2]
        for k in range(3, len(sizes)):
            connect(k, rim[-1])
            connect(k, rim[0])
            changed = True
            while changed:
                changed = False
                if len(rim) > 2 and left[rim[0]] == 0:
                    rim.pop(0)
                    connect(k, rim[0])
                    changed = True
                if len(rim) > 2 and left[rim[-1]] == 0:
                    rim.pop()
                    connect(k, rim[-1])
                    changed = True
            rim.append(k)
    except ValueError:
        return None
    return None if any(left) else adj


def primal(adj):
    """Cubic graph dual to a triangulation given by face adjacency."""
    dual = nx.Graph((a, b) for a, nbrs in enumerate(adj) for b in nbrs)
    planar, emb = nx.check_planarity(dual)
    if not planar:
        return None
    seen = set()
    triangles = []
    for u, v in emb.edges():
        if (u, v) not in seen:
            triangles.append(tuple(emb.traverse_face(u, v, mark_half_edges=seen)))
    if any(len(t) != 3 for t in triangles):
        return None
    by_edge = {}
    for i, t in enumerate(triangles):
        for j in range(3):
            by_edge.setdefault(frozenset((t[j], t[(j + 1) % 3])), []).append(i)
    if any(len(fs) != 2 for fs in by_edge.values()):
        return None
    return nx.Graph(tuple(fs) for fs in by_edge.values())


def candidates():
    total = sum(FACE_SIZES.values())
    for big in itertools.combinations(range(total), 4):
        for nine in big:
            sizes = [5] * total
            for i in big:
                sizes[i] = 8
            sizes[nine] = 9
            adj = windup(sizes)
            if adj is None:
                continue
            g = primal(adj)
            if g is not None and g.number_of_nodes() == 46:
                yield g


def distinct(graphs):
    classes = {}
    for g in graphs:
        key = nx.weisfeiler_lehman_graph_hash(g, iterations=5)
        bucket = classes.setdefault(key, [])
        if not any(nx.is_isomorphic(g, h) for h in bucket):
            bucket.append(g)
    return [g for bucket in classes.values() for g in bucket]


def element_order(perm):
    k, cur = 1, dict(perm)
    while any(cur[x] != x for x in cur):
        cur = {x: perm[cur[x]] for x in cur}
        k += 1
    return k


def relabel(g):
    autos = list(nx.algorithms.isomorphism.GraphMatcher(g, g).isomorphisms_iter())
    rotation = next(a for a in autos if element_order(a) == 3)
    centre = next(x for x in rotation if rotation[x] == x)
    dist = nx.single_source_shortest_path_length(g, centre)
    order = sorted(g.nodes(), key=lambda x: (dist[x], x))
    index = {x: i for i, x in enumerate(order)}
    edges = sorted(sorted((index[u], index[v])) for u, v in g.edges())
    labels, seen = [], {}
    for x in order:
        seen[dist[x]] = seen.get(dist[x], 0) + 1
        labels.append(f"r{dist[x]}.{seen[dist[x]]}")
    return {"vertices": g.number_of_nodes(), "edges": edges, "labels": labels}, len(autos)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true", help="compare with the bundled file")
    args = ap.parse_args(argv)
    found = distinct(candidates())
    if len(found) != 1:
        print(f"expected one graph, found {len(found)}", file=sys.stderr)
        return 1
    g = found[0]
    data, n_autos = relabel(g)
    print(f"unique graph: {g.number_of_nodes()} vertices, {g.number_of_edges()} edges, "
          f"girth {nx.girth(g)}, {n_autos} automorphisms", file=sys.stderr)
    if args.check:
        bundled = json.loads(OUT.read_text())
        same = nx.is_isomorphic(g, nx.Graph(map(tuple, bundled["edges"])))
        print("bundled file matches" if same else "bundled file DIFFERS", file=sys.stderr)
        return 0 if same else 1
    OUT.write_text(json.dumps(data) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
