"""Command-line front end.

Every command writes line-oriented JSON (one object per line) to stdout or
``--output``; each line carries the run configuration (seed, budgets).
Exit codes: 0 pass, 1 checked and failed, 2 usage or resource error,
3 falsification sentinel (an exhausted search where a partition is promised).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import kernels
from .affine import (
    count_partitions,
    find_partition,
    guarantee_applies,
    load_points,
    sierksma_bound,
)
from .census import CensusBudgetExceeded, census_lower_bound, regular_graph_census
from .complex import (
    DEFAULT_FACE_BUDGET,
    FaceBudgetExceeded,
    IndependenceComplex,
    homological_connectivity,
    reduced_homology,
)
from .graph import (
    cartesian_product_complete,
    check_degree_criterion,
    check_local_criterion,
    load_graph,
)
from .squid import (
    CriterionViolation,
    Falsified,
    SquidError,
    check_squid_theorem,
    load_family,
    verify_counting_lemma,
)

EXIT_PASS, EXIT_FAIL, EXIT_ERROR, EXIT_FALSIFIED = 0, 1, 2, 3
FIELD_CHOICES = ("q", "gf2", "gf3", "gf5")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    graph: str | None = None
    points: str | None = None
    constraints: str | None = None
    family: str | None = None
    q: int | None = None
    d: int | None = None
    D: int | None = None
    N: int | None = None
    fields: list[str] = field(default_factory=list)
    max_dim: int | None = None
    face_budget: int = DEFAULT_FACE_BUDGET
    partition_budget: int | None = None
    seed: int = 0
    workers: int = 1
    float: bool = False

    def __post_init__(self):
        if self.face_budget <= 0:
            raise UsageError("--face-budget must be positive")
        if self.partition_budget is not None and self.partition_budget <= 0:
            raise UsageError("--partition-budget must be positive")
        if self.workers <= 0:
            raise UsageError("--workers must be positive")


class Emitter:
    def __init__(self, cfg: RunConfig, stream):
        self.cfg = cfg
        self.stream = stream
        self.run = {k: v for k, v in asdict(cfg).items() if v is not None}
        self.run["backend"] = kernels.BACKEND

    def __call__(self, kind: str, payload: dict) -> None:
        line = {"type": kind, **payload, "run": self.run}
        self.stream.write(json.dumps(line, default=_jsonable) + "\n")


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (set, frozenset, tuple)):
        return list(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _need(value, flag: str):
    if value is None:
        raise UsageError(f"{flag} is required")
    return value


def _slack_table(report) -> str:
    lines = [f"{'vertex':>6} {'|N|':>4} {'|N2|':>5} {'slack':>6}"]
    for r in report.records:
        lines.append(f"{r.vertex:>6} {r.n1:>4} {r.n2:>5} {r.slack:>6}")
    return "\n".join(lines)


def cmd_check(cfg: RunConfig, emit) -> int:
    g = load_graph(_need(cfg.graph, "--graph"))
    q, d = _need(cfg.q, "--q"), _need(cfg.d, "--d")
    local = check_local_criterion(g, q, d)
    degree = check_degree_criterion(g, q, d)
    print(_slack_table(local), file=sys.stderr)
    for rep in (local, degree):
        print(f"{rep.criterion} criterion: {'PASS' if rep.passed else 'FAIL'}"
              + "".join(f"\n  - {f}" for f in rep.failures), file=sys.stderr)
        emit("criterion", rep.to_json())
    return EXIT_PASS if local.passed else EXIT_FAIL


def _fields(cfg: RunConfig) -> list[str]:
    return cfg.fields or ["q", "gf2"]


def cmd_homology(cfg: RunConfig, emit) -> int:
    g = load_graph(_need(cfg.graph, "--graph"))
    q = _need(cfg.q, "--q")
    c = IndependenceComplex(cartesian_product_complete(g, q))
    target = g.n - 2
    max_dim = cfg.max_dim if cfg.max_dim is not None else g.n - 1
    for f in _fields(cfg):
        emit("homology", reduced_homology(c, f, max_dim, cfg.face_budget).to_json())
    verdict = homological_connectivity(c, min(target, max_dim), _fields(cfg), cfg.face_budget)
    emit("connectivity", {**verdict.to_json(), "target": target,
                          "pass": verdict.at_least(target)})
    return EXIT_PASS if verdict.at_least(target) else EXIT_FAIL


def cmd_solve(cfg: RunConfig, emit) -> int:
    pc = load_points(_need(cfg.points, "--points"), cfg.constraints)
    q = _need(cfg.q, "--q")
    part = find_partition(pc, q, cfg.partition_budget)
    if part is not None:
        emit("partition", part.to_json(approx=cfg.float))
        return EXIT_PASS
    promised = guarantee_applies(pc, q)
    emit("exhausted", {"guarantee_applies": promised,
                       "falsification": promised and cfg.partition_budget is None})
    if promised and cfg.partition_budget is None:
        return EXIT_FALSIFIED
    return EXIT_FAIL


def cmd_count(cfg: RunConfig, emit) -> int:
    pc = load_points(_need(cfg.points, "--points"), cfg.constraints)
    q = _need(cfg.q, "--q")
    res = count_partitions(pc, q, cfg.partition_budget, cfg.workers)
    for part in res.partitions:
        emit("partition", part.to_json(approx=cfg.float))
    bound = sierksma_bound(q, pc.d)
    emit("count", {"count": res.count, "truncated": res.truncated,
                   "sierksma_bound": bound, "meets_sierksma": res.count >= bound})
    return EXIT_PASS


def cmd_census(cfg: RunConfig, emit) -> int:
    q = _need(cfg.q, "--q")
    degree = _need(cfg.D, "--D")
    if cfg.points:
        pc = load_points(cfg.points)
        rep = census_lower_bound(pc, q, degree, cfg.partition_budget, workers=cfg.workers)
        emit("census", rep.to_json())
        if rep.holds is False:
            return EXIT_FALSIFIED
        return EXIT_PASS
    n = _need(cfg.N, "--N")
    emit("census", regular_graph_census(n, degree, q).to_json())
    return EXIT_PASS


def cmd_squid(cfg: RunConfig, emit) -> int:
    g = load_graph(_need(cfg.graph, "--graph"))
    q = _need(cfg.q, "--q")
    fam = load_family(g, q, _need(cfg.family, "--family"))
    wit = verify_counting_lemma(g, q, fam)
    emit("witness", {"vertex": wit.vertex, "level": wit.level,
                     "census": {"a": wit.census.a, "b": wit.census.b, "c": wit.census.c},
                     "bound": wit.bound, "q": q})
    chk = check_squid_theorem(g, q, fam, _fields(cfg), cfg.face_budget)
    emit("connectivity", {**chk.verdict.to_json(), "target": chk.target, "pass": chk.holds})
    return EXIT_PASS if chk.holds else EXIT_FAIL


COMMANDS = {
    "check": (cmd_check, "local and degree criteria with a per-vertex slack table"),
    "homology": (cmd_homology, "reduced homology and connectivity of Ind(G □ K_q)"),
    "solve": (cmd_solve, "find one constrained Tverberg partition"),
    "count": (cmd_count, "enumerate all Tverberg partitions"),
    "census": (cmd_census, "regular-graph census and partition lower bound"),
    "squid": (cmd_squid, "counting-lemma witness and squid connectivity check"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph")
    common.add_argument("--points")
    common.add_argument("--constraints", help="graph file on the point indices")
    common.add_argument("--family", help="squid family JSON")
    common.add_argument("--q", type=int)
    common.add_argument("--d", type=int)
    common.add_argument("--D", type=int, help="degree for the census")
    common.add_argument("--N", type=int, help="vertex count for the census")
    common.add_argument("--field", action="append", choices=FIELD_CHOICES, dest="fields")
    common.add_argument("--max-dim", type=int)
    common.add_argument("--face-budget", type=int, default=DEFAULT_FACE_BUDGET)
    common.add_argument("--partition-budget", type=int)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    common.add_argument("--output")
    common.add_argument("--float", action="store_true",
                        help="add decimal approximations (marked inexact)")
    parser = argparse.ArgumentParser(prog="tverberg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_PASS
    opts = vars(args)
    output = opts.pop("output")
    opts["fields"] = opts.get("fields") or []
    try:
        cfg = RunConfig(**opts)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    random.seed(cfg.seed)
    stream = open(output, "w") if output else sys.stdout
    try:
        return COMMANDS[cfg.command][0](cfg, Emitter(cfg, stream))
    except Falsified as exc:
        print(f"falsification: {exc}", file=sys.stderr)
        return EXIT_FALSIFIED
    except (UsageError, OSError, ValueError, KeyError, FaceBudgetExceeded,
            CensusBudgetExceeded, SquidError, CriterionViolation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    finally:
        if output:
            stream.close()


if __name__ == "__main__":
    sys.exit(main())
