"""Annihilation number, 2-domination dispatch and the conjecture check."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate

from .domination import (
    BRUTEFORCE_CAP,
    DEFAULT_NODE_BUDGET,
    DominationCertificate,
    gamma2_branch_and_bound,
    gamma2_bruteforce,
    gamma2_cactus,
)
from .errors import PreconditionError
from .graph import Graph, canonical_order, is_connected
from .structure import is_cactus


@dataclass(frozen=True)
class AnnihilationCertificate:
    """``a(G)`` with the canonical optimal annihilation set.

    The canonical set is the longest prefix of the ``(degree, id)`` ordering
    whose degree sum stays within ``m``.  ``d_star`` is the smallest degree
    outside it, or ``None`` when the set is all of ``V(G)``.
    """

    a: int
    canonical_set: frozenset[int]
    degree_sum: int
    d_star: int | None

    def as_dict(self) -> dict:
        return {
            "a": self.a,
            "canonical_set": sorted(self.canonical_set),
            "degree_sum": self.degree_sum,
            "d_star": self.d_star,
        }


def annihilation(g: Graph) -> AnnihilationCertificate:
    if g.n == 0:
        raise PreconditionError("annihilation number needs n >= 1")
    order = canonical_order(g)
    prefix = list(accumulate(g.degree(v) for v in order))
    a = sum(1 for p in prefix if p <= g.m)
    chosen = order[:a]
    rest = order[a:]
    return AnnihilationCertificate(
        a=a,
        canonical_set=frozenset(chosen),
        degree_sum=prefix[a - 1] if a else 0,
        d_star=g.degree(rest[0]) if rest else None,
    )


def gamma2(g: Graph, node_budget: int = DEFAULT_NODE_BUDGET) -> DominationCertificate:
    """Pick the best exact backend: cactus DP, brute force, then branch and bound."""
    if g.n == 0:
        raise PreconditionError("gamma2 needs n >= 1")
    if not is_connected(g):
        raise PreconditionError("gamma2 needs a connected graph")
    if is_cactus(g):
        return gamma2_cactus(g)
    if g.n <= BRUTEFORCE_CAP:
        return gamma2_bruteforce(g)
    return gamma2_branch_and_bound(g, node_budget=node_budget)


@dataclass(frozen=True)
class ConjectureRecord:
    gamma2: int
    a: int
    gap: int
    holds: bool
    backend: str

    def as_dict(self) -> dict:
        return {
            "gamma2": self.gamma2,
            "a": self.a,
            "gap": self.gap,
            "holds": self.holds,
            "backend": self.backend,
        }


def conjecture_check(g: Graph, node_budget: int = DEFAULT_NODE_BUDGET) -> ConjectureRecord:
    """Compare ``gamma_2(G)`` against ``a(G) + 1``; ``gap`` is ``gamma_2 - a``."""
    if g.n < 2:
        raise PreconditionError("the conjecture concerns graphs with n >= 2")
    dom = gamma2(g, node_budget=node_budget)
    ann = annihilation(g)
    gap = dom.gamma2 - ann.a
    return ConjectureRecord(dom.gamma2, ann.a, gap, gap <= 1, dom.backend)
