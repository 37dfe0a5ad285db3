"""The counterexample family ``G(t; k_1, ..., k_t)``.

Construction: cycles ``C_{3k_i+1}``, a hub ``w`` joined to one vertex of
each cycle, then a pendant leaf on every remaining degree-2 vertex.

Vertex id layout: the cycles occupy consecutive id ranges in order (cycle
``i`` is walked in increasing id order and its smallest id is the one joined
to the hub), then the hub, then the pendant leaves in the order of the cycle
vertices they hang from.
"""

from __future__ import annotations

from dataclasses import dataclass

from .domination import gamma2_cactus
from .errors import PreconditionError
from .graph import Graph
from .invariants import annihilation


@dataclass(frozen=True)
class FamilyParams:
    t: int
    ks: tuple[int, ...]
    c0: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "ks", tuple(int(k) for k in self.ks))
        if self.t < 4:
            raise PreconditionError(f"family needs t >= 4 (got {self.t})")
        if len(self.ks) != self.t:
            raise PreconditionError(f"expected {self.t} cycle parameters, got {len(self.ks)}")
        if any(k < 1 for k in self.ks):
            raise PreconditionError("every k_i must be >= 1")
        if self.c0 is not None and self.c0 < 1:
            raise PreconditionError("c0 must be positive")

    @classmethod
    def ones(cls, t: int) -> "FamilyParams":
        return cls(t, (1,) * t)

    @property
    def n(self) -> int:
        cyc = sum(3 * k + 1 for k in self.ks)
        return cyc + 1 + sum(3 * k for k in self.ks)

    @property
    def m(self) -> int:
        return 2 * sum(3 * k + 1 for k in self.ks)

    def label(self) -> str:
        return f"G({self.t};{','.join(map(str, self.ks))})"


def layout(p: FamilyParams) -> dict:
    """Id layout: ``cycles`` (lists), ``hub`` and ``pendant`` (cycle vertex -> leaf)."""
    cycles, nxt = [], 0
    for k in p.ks:
        size = 3 * k + 1
        cycles.append(list(range(nxt, nxt + size)))
        nxt += size
    hub = nxt
    nxt += 1
    pendant = {}
    for cyc in cycles:
        for v in cyc[1:]:
            pendant[v] = nxt
            nxt += 1
    return {"cycles": cycles, "hub": hub, "pendant": pendant}


def generate(p: FamilyParams) -> Graph:
    lay = layout(p)
    edges = []
    for cyc in lay["cycles"]:
        edges.extend((cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))
        edges.append((cyc[0], lay["hub"]))
    edges.extend(lay["pendant"].items())
    g = Graph(range(p.n), edges)
    assert g.m == p.m
    return g


def closed_a(p: FamilyParams) -> int:
    return 4 * sum(p.ks) + (2 * p.t) // 3


def closed_gamma2(p: FamilyParams) -> int:
    return 4 * sum(p.ks) + p.t


def closed_gap(p: FamilyParams) -> int:
    gap = -(-p.t // 3)
    assert gap == closed_gamma2(p) - closed_a(p)
    return gap


@dataclass(frozen=True)
class Theorem3Witness:
    params: FamilyParams
    gap: int
    verified: bool
    computed_gap: int | None


def theorem3_witness(c0: int, max_n: int = 5000) -> Theorem3Witness:
    """Smallest all-ones member whose gap exceeds ``c0 + 1``.

    ``t = 3(c0 + 1) + 1``.  When the graph has at most ``max_n`` vertices the
    closed forms are also checked against the computed invariants.
    """
    if c0 < 1:
        raise PreconditionError("c0 must be a positive integer")
    t = 3 * (c0 + 1) + 1
    p = FamilyParams(t, (1,) * t, c0=c0)
    gap = closed_gap(p)
    verified = gap > c0 + 1
    computed = None
    if p.n <= max_n:
        g = generate(p)
        a = annihilation(g).a
        g2 = gamma2_cactus(g).gamma2
        computed = g2 - a
        verified = verified and a == closed_a(p) and g2 == closed_gamma2(p)
    return Theorem3Witness(p, gap, verified, computed)
