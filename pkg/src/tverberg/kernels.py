"""Backend selection for the hot kernels.

The compiled extension is used when it imports and the graph fits in 64-bit
masks; otherwise the pure-Python twin runs. Set ``TVERBERG_PURE_PYTHON=1`` to
force the fallback (the test-suite and the benchmark use this to compare).
"""

from __future__ import annotations

import os

from . import _pykernels

_compiled = None
if os.environ.get("TVERBERG_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # pragma: no cover - depends on the build
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"
COMPILED_AVAILABLE = _compiled is not None


def independent_sets(adj, allowed: int, size: int, limit: int = -1) -> list[int]:
    if _compiled is not None and len(adj) <= 64:
        return _compiled.independent_sets(adj, allowed, size, limit)
    return _pykernels.independent_sets(adj, allowed, size, limit)


def count_regular_subgraphs(adj, n: int, degree: int) -> int:
    if _compiled is not None and n <= 64:
        return _compiled.count_regular_subgraphs(adj, n, degree)
    return _pykernels.count_regular_subgraphs(adj, n, degree)


def rank_mod_p(matrix, p: int) -> int:
    # int64 products must not overflow inside the compiled elimination
    if _compiled is not None and p < 3_000_000_000:
        return _compiled.rank_mod_p(matrix, p)
    return _pykernels.rank_mod_p(matrix, p)
