"""Structural recognisers for cacti and the local patterns used by reductions.

Vocabulary
----------
* cycle block: a biconnected block of a cactus with at least 3 vertices,
  stored as a vertex list in cyclic order starting at its smallest id.
* exit vertex of a cycle ``C``: for another cycle ``C'``, the vertex of ``C``
  closest to ``C'``.  In a cactus this vertex is unique.
* outer cycle: a cycle with at most one exit vertex.
* sun at an outer cycle: every cycle vertex except the exit vertex carries
  exactly one pendant leaf.  When there is no exit vertex (unicyclic graph)
  we accept at most one cycle vertex without exactly one leaf.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import networkx as nx

from .errors import PreconditionError, StructureError
from .graph import Graph, bfs_distances, is_bipartite, is_connected

# feature kinds
STRONG_SUPPORT = "strong_support"
PENDANT_P4 = "pendant_p4"
INDUCED_P5_DEG2 = "induced_p5_deg2"
SUBDIVIDED_STAR = "subdivided_star_at_cycle"
HANGING_TREE = "hanging_tree"


@dataclass(frozen=True)
class CactusDecomposition:
    cycle_blocks: list[list[int]]
    bridges: list[tuple[int, int]]
    # pairs (block index, cut vertex); block indices run over
    # cycle_blocks followed by bridges
    block_cut_tree: list[tuple[int, int]]

    @property
    def blocks(self) -> list[list[int]]:
        return self.cycle_blocks + [list(e) for e in self.bridges]


@dataclass(frozen=True)
class CycleReport:
    cycle: list[int]
    exit_vertices: frozenset[int]
    is_outer: bool
    has_sun: bool
    length: int


@dataclass(frozen=True)
class Feature:
    kind: str
    anchors: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Theorem5Hypotheses:
    connected: bool
    bipartite: bool
    cactus: bool
    no_sun_at_outer: bool
    outer_4cycle_exit_degree_ok: bool

    @property
    def all(self) -> bool:
        return (
            self.connected
            and self.bipartite
            and self.cactus
            and self.no_sun_at_outer
            and self.outer_4cycle_exit_degree_ok
        )

    def as_dict(self) -> dict:
        return {
            "connected": self.connected,
            "bipartite": self.bipartite,
            "cactus": self.cactus,
            "no_sun_at_outer": self.no_sun_at_outer,
            "outer_4cycle_exit_degree_ok": self.outer_4cycle_exit_degree_ok,
            "all": self.all,
        }


# -- blocks ---------------------------------------------------------------


def _cycle_order(vertices: set[int], edges: list[tuple[int, int]]) -> list[int]:
    nb: dict[int, list[int]] = {v: [] for v in vertices}
    for u, v in edges:
        nb[u].append(v)
        nb[v].append(u)
    start = min(vertices)
    order = [start]
    prev, cur = start, min(nb[start])
    while cur != start:
        order.append(cur)
        a, b = nb[cur]
        prev, cur = cur, (b if a == prev else a)
    return order


def _blocks(g: Graph):
    """Yield ``(vertex set, edge list)`` for every biconnected block."""
    nxg = g.to_networkx()
    for comp in nx.biconnected_component_edges(nxg):
        edges = [(min(u, v), max(u, v)) for u, v in comp]
        verts = {x for e in edges for x in e}
        yield verts, edges


def is_cactus(g: Graph) -> bool:
    """Connected, and every block is a bridge or a chordless cycle."""
    if g.n == 0 or not is_connected(g):
        return False
    for verts, edges in _blocks(g):
        if len(edges) > 1 and len(edges) != len(verts):
            return False
    return True


def decompose_cactus(g: Graph) -> CactusDecomposition:
    if g.n == 0 or not is_connected(g):
        raise StructureError("cactus decomposition needs a non-empty connected graph")
    cycles, bridges = [], []
    for verts, edges in _blocks(g):
        if len(edges) == 1:
            bridges.append(edges[0])
        elif len(edges) == len(verts):
            cycles.append(_cycle_order(verts, edges))
        else:
            raise StructureError(
                f"block on {sorted(verts)} has {len(edges)} edges; not a cycle"
            )
    cycles.sort()
    bridges.sort()
    blocks = cycles + [list(e) for e in bridges]
    count: dict[int, int] = {}
    for b in blocks:
        for v in b:
            count[v] = count.get(v, 0) + 1
    bct = sorted((i, v) for i, b in enumerate(blocks) for v in b if count[v] > 1)
    dec = CactusDecomposition(cycles, bridges, bct)
    assert len(bridges) + sum(len(c) for c in cycles) == g.m
    return dec


def cycle_blocks(g: Graph) -> list[list[int]]:
    return decompose_cactus(g).cycle_blocks


def bridges(g: Graph) -> list[tuple[int, int]]:
    """Bridges of any graph, sorted."""
    return sorted((min(u, v), max(u, v)) for u, v in nx.bridges(g.to_networkx()))


def every_edge_on_cycle(g: Graph) -> bool:
    """Connected, has an edge, and no bridges."""
    return g.m > 0 and is_connected(g) and not bridges(g)


# -- exit vertices, outer cycles, suns ------------------------------------


def _match_block(cycles: list[list[int]], c) -> list[int]:
    cs = set(c)
    for cyc in cycles:
        if set(cyc) == cs:
            return cyc
    raise PreconditionError(f"{sorted(cs)} is not a cycle block of the graph")


def _exit_vertices(g: Graph, cyc: list[int], cycles: list[list[int]]) -> frozenset[int]:
    exits = set()
    for other in cycles:
        if other is cyc:
            continue
        dist = bfs_distances(g, other)
        best = min(dist[v] for v in cyc)
        closest = [v for v in cyc if dist[v] == best]
        # unique in a cactus
        assert len(closest) == 1, closest
        exits.add(closest[0])
    return frozenset(exits)


def exit_vertices(g: Graph, cycle) -> frozenset[int]:
    cycles = cycle_blocks(g)
    return _exit_vertices(g, _match_block(cycles, cycle), cycles)


def leaf_neighbors(g: Graph, v: int) -> list[int]:
    return sorted(u for u in g.neighbors(v) if g.degree(u) == 1)


def _sun(g: Graph, cyc: list[int], exits: frozenset[int]) -> bool:
    off = [v for v in cyc if len(leaf_neighbors(g, v)) != 1]
    if exits:
        (x,) = exits
        return all(v == x for v in off)
    return len(off) <= 1


def _report(g: Graph, cyc: list[int], cycles: list[list[int]]) -> CycleReport:
    exits = _exit_vertices(g, cyc, cycles)
    outer = len(exits) <= 1
    return CycleReport(
        cycle=list(cyc),
        exit_vertices=exits,
        is_outer=outer,
        has_sun=outer and _sun(g, cyc, exits),
        length=len(cyc),
    )


def cycle_reports(g: Graph) -> list[CycleReport]:
    """One report per cycle block (empty for trees)."""
    cycles = cycle_blocks(g)
    return [_report(g, c, cycles) for c in cycles]


def outer_cycles(g: Graph) -> list[CycleReport]:
    """Reports for all cycle blocks; use ``is_outer`` to filter."""
    reports = cycle_reports(g)
    assert not reports or any(r.is_outer for r in reports)
    return reports


def has_sun(g: Graph, report: CycleReport) -> bool:
    if not report.is_outer:
        raise PreconditionError("suns are only defined at outer cycles")
    return _sun(g, report.cycle, report.exit_vertices)


def theorem5_hypotheses(g: Graph) -> Theorem5Hypotheses:
    """Hypotheses of the bipartite-cactus theorem.

    The two cycle conditions are evaluated only on connected cacti; on any
    other graph they are reported as ``False``.  An outer 4-cycle with no exit
    vertex satisfies the degree condition vacuously.
    """
    connected = g.n > 0 and is_connected(g)
    cactus = is_cactus(g)
    no_sun = deg_ok = False
    if cactus:
        reports = [r for r in cycle_reports(g) if r.is_outer]
        no_sun = not any(r.has_sun for r in reports)
        deg_ok = all(
            g.degree(x) >= 4
            for r in reports
            if r.length == 4
            for x in r.exit_vertices
        )
    return Theorem5Hypotheses(connected, is_bipartite(g), cactus, no_sun, deg_ok)


# -- local features ---------------------------------------------------------


def find_strong_supports(g: Graph) -> list[Feature]:
    out = []
    for u in g.vertices:
        leaves = leaf_neighbors(g, u)
        if len(leaves) >= 2:
            out.append(
                Feature(STRONG_SUPPORT, {"support": u, "leaves": tuple(leaves)},
                        {"leaves": len(leaves)})
            )
    return out


def _other(g: Graph, v: int, prev: int) -> int:
    (x,) = g.neighbors(v) - {prev}
    return x


def find_pendant_p4(g: Graph) -> list[Feature]:
    """Paths ``u1 u2 u3 v`` with ``d(u1)=1``, ``d(u2)=d(u3)=2`` and ``d(v)>=2``.

    The last condition excludes the graph ``P4`` itself, which has nothing
    left to hang from.
    """
    out = []
    for u1 in g.leaves():
        (u2,) = g.neighbors(u1)
        if g.degree(u2) != 2:
            continue
        u3 = _other(g, u2, u1)
        if g.degree(u3) != 2:
            continue
        v = _other(g, u3, u2)
        if g.degree(v) < 2:
            continue
        out.append(Feature(PENDANT_P4, {"u1": u1, "u2": u2, "u3": u3, "v": v}))
    return out


def find_induced_p5_deg2(g: Graph) -> list[Feature]:
    """Induced paths ``v u1 u2 u3 w`` whose three inner vertices have degree 2.

    Each path is reported once, oriented so that ``v < w``.
    """
    out = []
    for u2 in g.vertices:
        if g.degree(u2) != 2:
            continue
        a, b = sorted(g.neighbors(u2))
        if g.degree(a) != 2 or g.degree(b) != 2:
            continue
        va, vb = _other(g, a, u2), _other(g, b, u2)
        if len({va, a, u2, b, vb}) < 5 or g.has_edge(va, vb):
            continue
        if va > vb:
            va, a, b, vb = vb, b, a, va
        out.append(
            Feature(INDUCED_P5_DEG2, {"v": va, "u1": a, "u2": u2, "u3": b, "w": vb})
        )
    return out


def _on_cycle(g: Graph, v: int, bridge_set: set) -> bool:
    return any((min(v, u), max(v, u)) not in bridge_set for u in g.neighbors(v))


def find_subdivided_stars(g: Graph) -> list[Feature]:
    """Maximal subdivided stars ``S_s(K_{1,s+t})`` hanging at a centre.

    Reported for every centre with ``s >= 1`` legs ``centre - mid - end``
    (``d(mid)=2``, ``d(end)=1``) and ``t`` leaf neighbours.  ``params`` holds
    ``s``, ``t``, ``host_degree`` (degree of the centre outside the star) and
    ``on_cycle`` (1 when the centre lies on a cycle and ``host_degree == 2``).
    """
    bridge_set = set(bridges(g))
    out = []
    for u in g.vertices:
        legs, leaves = [], []
        for x in sorted(g.neighbors(u)):
            if g.degree(x) == 1:
                leaves.append(x)
            elif g.degree(x) == 2:
                y = _other(g, x, u)
                if g.degree(y) == 1:
                    legs.append((x, y))
        if not legs:
            continue
        host = g.degree(u) - len(legs) - len(leaves)
        on_cycle = int(host == 2 and _on_cycle(g, u, bridge_set))
        out.append(
            Feature(
                SUBDIVIDED_STAR,
                {"center": u, "legs": tuple(legs), "leaves": tuple(leaves)},
                {"s": len(legs), "t": len(leaves), "host_degree": host,
                 "on_cycle": on_cycle},
            )
        )
    return out


def _tree_feature(g: Graph, root: int, tree_vertices: set[int]) -> Feature:
    t = g.subgraph(tree_vertices)
    depth = bfs_distances(t, [root])
    h = max(depth.values())
    radius = min(max(bfs_distances(t, [v]).values()) for v in t.vertices)
    return Feature(
        HANGING_TREE,
        {"root": root, "vertices": tuple(sorted(tree_vertices))},
        {"height": h, "radius": radius},
    )


def hanging_trees(g: Graph, cycle) -> list[Feature]:
    """Trees hanging at the vertices of a cycle block, rooted on the cycle.

    For each cycle vertex of degree >= 3, remove the cycle's edges and take
    the component of that vertex; it is reported when it is a tree.
    ``params['height']`` is the largest distance from the root and
    ``params['radius']`` the graph radius of the tree.
    """
    cyc = _match_block(cycle_blocks(g), cycle)
    k = len(cyc)
    h = g.delete_edges([(cyc[i], cyc[(i + 1) % k]) for i in range(k)])
    out = []
    for x in cyc:
        if g.degree(x) < 3:
            continue
        comp = set(bfs_distances(h, [x]))
        sub = h.subgraph(comp)
        if sub.m == sub.n - 1:
            out.append(_tree_feature(g, x, comp))
    return out


def all_hanging_trees(g: Graph) -> list[Feature]:
    """``hanging_trees`` over every cycle block of a cactus."""
    out = []
    for cyc in cycle_blocks(g):
        out.extend(hanging_trees(g, cyc))
    return out


def feature_holds(g: Graph, f: Feature) -> bool:
    """Re-check a feature's defining predicate on ``g``."""
    a = f.anchors
    try:
        if f.kind == STRONG_SUPPORT:
            return (
                len(a["leaves"]) >= 2
                and all(g.degree(x) == 1 and g.has_edge(a["support"], x) for x in a["leaves"])
            )
        if f.kind == PENDANT_P4:
            u1, u2, u3, v = a["u1"], a["u2"], a["u3"], a["v"]
            return (
                g.degree(u1) == 1 and g.degree(u2) == 2 and g.degree(u3) == 2
                and g.degree(v) >= 2
                and g.has_edge(u1, u2) and g.has_edge(u2, u3) and g.has_edge(u3, v)
            )
        if f.kind == INDUCED_P5_DEG2:
            p = [a["v"], a["u1"], a["u2"], a["u3"], a["w"]]
            if len(set(p)) != 5:
                return False
            if not all(g.has_edge(p[i], p[i + 1]) for i in range(4)):
                return False
            chords = [(i, j) for i in range(5) for j in range(i + 2, 5)]
            if any(g.has_edge(p[i], p[j]) for i, j in chords):
                return False
            return all(g.degree(x) == 2 for x in p[1:4])
        if f.kind == SUBDIVIDED_STAR:
            u = a["center"]
            legs_ok = all(
                g.has_edge(u, x) and g.has_edge(x, y) and g.degree(x) == 2 and g.degree(y) == 1
                for x, y in a["legs"]
            )
            leaves_ok = all(g.has_edge(u, w) and g.degree(w) == 1 for w in a["leaves"])
            return legs_ok and leaves_ok and len(a["legs"]) >= 1
        if f.kind == HANGING_TREE:
            vs = set(a["vertices"])
            root = a["root"]
            t = g.subgraph(vs)
            if t.m != t.n - 1 or not is_connected(t):
                return False
            # only the root may touch the rest of the graph
            return all(g.neighbors(v) <= vs for v in vs if v != root)
    except Exception:
        return False
    raise ValueError(f"unknown feature kind {f.kind!r}")
