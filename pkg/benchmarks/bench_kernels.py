"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each row runs the same workload on both backends, checks the answers agree,
and prints the best-of-N wall time.
"""

import argparse
import sys
import timeit

import numpy as np

from tverberg import _pykernels
from tverberg.graph import cartesian_product_complete, grinberg_graph, path_graph

try:
    from tverberg import _kernels
except ImportError:
    _kernels = None


def workloads():
    grin = grinberg_graph()
    prod = cartesian_product_complete(path_graph(7), 5)
    full8 = [((1 << 8) - 1) & ~(1 << v) for v in range(8)]
    rng = np.random.default_rng(0)
    dense = rng.integers(0, 2, size=(300, 400), dtype=np.int64)
    return [
        ("independent 4-sets, Grinberg graph",
         lambda k: k.independent_sets(list(grin.adjacency), (1 << grin.n) - 1, 4)),
        ("all faces, Ind(P7 x K5)",
         lambda k: [k.independent_sets(list(prod.adjacency), (1 << prod.n) - 1, s) for s in range(8)]),
        ("labeled 3-regular graphs on 8 vertices",
         lambda k: k.count_regular_subgraphs(full8, 8, 3)),
        ("rank mod 2 of a 300 x 400 matrix",
         lambda k: k.rank_mod_p(dense.copy(), 2)),
    ]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled extension not built; nothing to compare", file=sys.stderr)
        return 1
    print(f"{'workload':<42} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name, fn in workloads():
        if fn(_pykernels) != fn(_kernels):
            print(f"{name}: backends disagree", file=sys.stderr)
            return 1
        slow = min(timeit.repeat(lambda: fn(_pykernels), number=1, repeat=args.repeat))
        fast = min(timeit.repeat(lambda: fn(_kernels), number=1, repeat=args.repeat))
        print(f"{name:<42} {slow:>10.4f} {fast:>10.4f} {slow / fast:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
