"""Conjecture scanner over random graph classes.

Each instance ``i`` of a scan draws its own generator from
``SeedSequence([seed, i])``, so results do not depend on worker scheduling
and reports are byte-identical for the same spec.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .domination import DEFAULT_NODE_BUDGET, gamma2_bruteforce, BRUTEFORCE_CAP
from .errors import BudgetError
from .family import FamilyParams, generate
from .generators import (
    random_bipartite_cactus,
    random_cactus,
    random_min_degree_graph,
    random_tree,
)
from .graph import Graph, is_bipartite, is_connected, is_tree
from .invariants import annihilation, gamma2
from .io import write_edge_list
from .structure import every_edge_on_cycle, is_cactus, theorem5_hypotheses

CLASSES = (
    "tree",
    "cactus",
    "bipartite_cactus",
    "bipartite_cactus_theorem5",
    "bipartite_cactus_prop2",
    "min_degree_3",
)

# classes on which the bound gamma_2 <= a + 1 is a theorem
PROVEN_CLASSES = frozenset(
    {"tree", "bipartite_cactus_theorem5", "bipartite_cactus_prop2", "min_degree_3"}
)


@dataclass(frozen=True)
class ScanSpec:
    cls: str
    n_min: int | None = None  # defaults to the smallest size the class allows
    n_max: int = 18
    count: int = 100
    seed: int = 0
    solver_budget: int = DEFAULT_NODE_BUDGET
    cycle_bias: float = 0.4
    inject_family: tuple[FamilyParams, ...] = ()

    def __post_init__(self):
        if self.cls not in CLASSES:
            raise ValueError(f"unknown class {self.cls!r}; choose from {', '.join(CLASSES)}")
        if self.count < 1:
            raise ValueError("count must be >= 1")
        low = 4 if self.cls in ("min_degree_3", "bipartite_cactus_prop2") else 2
        if self.n_min is None:
            object.__setattr__(self, "n_min", low)
        if self.n_min < low or self.n_max < self.n_min:
            raise ValueError(f"n range [{self.n_min}, {self.n_max}] invalid for {self.cls}")


@dataclass
class InstanceRecord:
    index: int
    graph_hash: str
    n: int
    m: int
    gamma2: int | None
    a: int | None
    gap: int | None
    holds: bool | None
    backend: str | None
    runtime: float = field(default=0.0, compare=False)
    skipped: str | None = None
    source: str = "random"


@dataclass
class ScanReport:
    spec: ScanSpec
    records: list[InstanceRecord]

    @property
    def evaluated(self) -> list[InstanceRecord]:
        return [r for r in self.records if r.skipped is None]

    @property
    def violations(self) -> list[InstanceRecord]:
        return [r for r in self.evaluated if r.gap >= 2]

    @property
    def max_gap(self) -> int | None:
        gaps = [r.gap for r in self.evaluated]
        return max(gaps) if gaps else None

    @property
    def gap_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(r.gap for r in self.evaluated).items()))

    def aggregate(self) -> dict:
        return {
            "count": len(self.records),
            "evaluated": len(self.evaluated),
            "skipped": len(self.records) - len(self.evaluated),
            "violations": [r.index for r in self.violations],
            "max_gap": self.max_gap,
            "gap_histogram": {str(k): v for k, v in self.gap_histogram.items()},
            "caro_roditty_violations": self.caro_roditty_violations(),
        }

    def caro_roditty_violations(self) -> list[int] | None:
        """Instances breaking ``gamma_2 <= floor(n/2)``; only checked for ``min_degree_3``."""
        if self.spec.cls != "min_degree_3":
            return None
        return [r.index for r in self.evaluated if r.source == "random" and r.gamma2 > r.n // 2]

    def to_json(self, timings: bool = False) -> str:
        spec = asdict(self.spec)
        spec["inject_family"] = [p.label() for p in self.spec.inject_family]
        recs = []
        for r in self.records:
            d = asdict(r)
            if not timings:
                del d["runtime"]
            recs.append(d)
        return json.dumps(
            {"spec": spec, "aggregate": self.aggregate(), "records": recs},
            sort_keys=True, indent=1,
        ) + "\n"

    def to_csv(self, timings: bool = False) -> str:
        cols = ["index", "graph_hash", "n", "m", "gamma2", "a", "gap", "holds",
                "backend", "skipped", "source"]
        if timings:
            cols.append("runtime")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in self.records:
            w.writerow([getattr(r, c) for c in cols])
        return buf.getvalue()

    def to_text(self) -> str:
        agg = self.aggregate()
        lines = [
            f"class {self.spec.cls}  n in [{self.spec.n_min}, {self.spec.n_max}]  "
            f"seed {self.spec.seed}",
            f"instances {agg['count']}  evaluated {agg['evaluated']}  skipped {agg['skipped']}",
            f"max gap {agg['max_gap']}  histogram {agg['gap_histogram']}",
            f"violations {len(agg['violations'])}",
        ]
        for r in self.violations:
            lines.append(f"  #{r.index} {r.graph_hash} n={r.n} gamma2={r.gamma2} a={r.a} gap={r.gap}")
        return "\n".join(lines) + "\n"


def graph_hash(g: Graph) -> str:
    return hashlib.sha256(write_edge_list(g).encode()).hexdigest()[:16]


def class_predicate(cls: str, g: Graph) -> bool:
    """Membership test for a scan class (re-checked on every instance)."""
    if not is_connected(g) or g.n < 2:
        return False
    if cls == "tree":
        return is_tree(g)
    if cls == "cactus":
        return is_cactus(g)
    if cls == "bipartite_cactus":
        return is_cactus(g) and is_bipartite(g)
    if cls == "bipartite_cactus_theorem5":
        return theorem5_hypotheses(g).all
    if cls == "bipartite_cactus_prop2":
        return is_cactus(g) and is_bipartite(g) and every_edge_on_cycle(g)
    if cls == "min_degree_3":
        return g.min_degree >= 3
    raise ValueError(cls)


def instance(spec: ScanSpec, index: int) -> Graph:
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([spec.seed, index])))
    while True:
        n = int(rng.integers(spec.n_min, spec.n_max + 1))
        if spec.cls == "bipartite_cactus_prop2" and n == 5:
            continue
        break
    if spec.cls == "tree":
        return random_tree(n, rng)
    if spec.cls == "cactus":
        return random_cactus(n, spec.cycle_bias, rng)
    if spec.cls == "bipartite_cactus":
        return random_bipartite_cactus(n, rng, cycle_bias=spec.cycle_bias)
    if spec.cls == "bipartite_cactus_theorem5":
        return random_bipartite_cactus(n, rng, "theorem5", cycle_bias=spec.cycle_bias)
    if spec.cls == "bipartite_cactus_prop2":
        return random_bipartite_cactus(n, rng, "prop2")
    return random_min_degree_graph(n, 3, rng, extra_edges=int(rng.integers(0, n)))


def evaluate(g: Graph, index: int, budget: int, source: str = "random") -> InstanceRecord:
    start = time.perf_counter()
    try:
        dom = gamma2(g, node_budget=budget)
    except BudgetError as exc:
        return InstanceRecord(index, graph_hash(g), g.n, g.m, None, None, None, None,
                              None, time.perf_counter() - start, str(exc), source)
    a = annihilation(g).a
    gap = dom.gamma2 - a
    return InstanceRecord(index, graph_hash(g), g.n, g.m, dom.gamma2, a, gap, gap <= 1,
                          dom.backend, time.perf_counter() - start, None, source)


def _work(args) -> InstanceRecord:
    spec, index = args
    g = instance(spec, index)
    assert class_predicate(spec.cls, g), f"generator emitted a non-{spec.cls} graph"
    return evaluate(g, index, spec.solver_budget)


def scan(spec: ScanSpec, workers: int = 1) -> ScanReport:
    """Evaluate ``spec.count`` random instances (plus injected family members)."""
    jobs = [(spec, i) for i in range(spec.count)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_work, jobs, chunksize=16))
    else:
        records = [_work(j) for j in jobs]
    for j, p in enumerate(spec.inject_family):
        records.append(evaluate(generate(p), spec.count + j, spec.solver_budget, p.label()))
    return ScanReport(spec, records)


def reverify(report: ScanReport) -> dict[int, bool]:
    """Re-check every violation with the brute-force oracle (``n <= 24``)."""
    out = {}
    for r in report.violations:
        if r.source == "random":
            g = instance(report.spec, r.index)
        else:
            g = generate(next(p for p in report.spec.inject_family if p.label() == r.source))
        if g.n <= BRUTEFORCE_CAP:
            out[r.index] = gamma2_bruteforce(g).gamma2 == r.gamma2
    return out
