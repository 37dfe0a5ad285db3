"""Seeded random graph generators.

All randomness comes from ``numpy.random.Generator(PCG64(seed))`` so that a
given seed reproduces the same graph.  Every generator also accepts an
existing ``Generator`` in place of an integer seed.
"""

from __future__ import annotations

import heapq

import numpy as np

from .errors import GenerationError, PreconditionError
from .graph import Graph, is_bipartite, is_connected
from .structure import every_edge_on_cycle, is_cactus, theorem5_hypotheses

MAX_ATTEMPTS = 10_000


def make_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def random_tree(n: int, seed=0) -> Graph:
    """Uniform random labelled tree on ``0..n-1`` (Pruefer decoding)."""
    if n < 1:
        raise PreconditionError("random_tree needs n >= 1")
    if n <= 2:
        return Graph(range(n), [(0, 1)] if n == 2 else [])
    rng = make_rng(seed)
    seq = [int(x) for x in rng.integers(0, n, size=n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    heap = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(heap)
    edges = []
    for x in seq:
        leaf = heapq.heappop(heap)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(heap, x)
    edges.append((heapq.heappop(heap), heapq.heappop(heap)))
    return Graph(range(n), edges)


def _grow_cactus(n: int, rng, cycle_bias: float, even_only: bool, pendants: bool = True):
    edges: list[tuple[int, int]] = []
    count = 1
    while count < n:
        v = int(rng.integers(0, count))
        room = n - count
        lengths = [L for L in range(3, room + 2) if not even_only or L % 2 == 0]
        if not pendants:
            lengths = [L for L in lengths if _cycles_fill(room - (L - 1))]
        if lengths and (not pendants or rng.random() < cycle_bias):
            L = lengths[int(rng.integers(0, len(lengths)))]
            cyc = [v] + list(range(count, count + L - 1))
            edges.extend((cyc[i], cyc[(i + 1) % L]) for i in range(L))
            count += L - 1
        elif pendants:
            edges.append((v, count))
            count += 1
        else:
            raise GenerationError(f"cannot fill {room} vertices with even cycles")
    return Graph(range(n), edges)


def _cycles_fill(r: int) -> bool:
    # r new vertices as a sum of odd parts >= 3 (even cycles glued at a vertex)
    return r == 0 or (r % 2 == 1 and r >= 3) or (r % 2 == 0 and r >= 6)


def random_cactus(n: int, cycle_bias: float = 0.3, seed=0) -> Graph:
    """Grow a cactus by gluing pendant vertices or cycles at random vertices."""
    if n < 2:
        raise PreconditionError("random_cactus needs n >= 2")
    g = _grow_cactus(n, make_rng(seed), cycle_bias, even_only=False)
    assert is_cactus(g)
    return g


def random_bipartite_cactus(
    n: int, seed=0, constraint: str | None = None, cycle_bias: float = 0.4,
    max_attempts: int = MAX_ATTEMPTS,
) -> Graph:
    """Random bipartite cactus (only even cycles).

    ``constraint`` is ``None``, ``"theorem5"`` (no sun at an outer cycle and
    outer 4-cycles exit through a vertex of degree >= 4) or ``"prop2"`` (every
    edge lies on a cycle).  Constrained classes use rejection sampling.
    """
    if n < 2:
        raise PreconditionError("random_bipartite_cactus needs n >= 2")
    if constraint not in (None, "theorem5", "prop2"):
        raise PreconditionError(f"unknown constraint {constraint!r}")
    if constraint == "prop2" and not (n >= 4 and _cycles_fill(n - 1)):
        raise GenerationError(f"no bipartite cactus on {n} vertices has every edge on a cycle")
    rng = make_rng(seed)
    for attempt in range(1, max_attempts + 1):
        g = _grow_cactus(n, rng, cycle_bias, even_only=True, pendants=constraint != "prop2")
        if constraint is None:
            ok = True
        elif constraint == "prop2":
            ok = every_edge_on_cycle(g)
        else:
            ok = theorem5_hypotheses(g).all
        if ok:
            assert is_cactus(g) and is_bipartite(g)
            return g
    raise GenerationError(
        f"no {constraint} instance on {n} vertices after {max_attempts} attempts",
        acceptance_rate=0.0,
    )


def random_connected_graph(n: int, extra_edges: int = 0, seed=0) -> Graph:
    """Random tree plus up to ``extra_edges`` random chords."""
    rng = make_rng(seed)
    g = random_tree(n, rng)
    edges = set(g.edges())
    possible = n * (n - 1) // 2
    target = min(possible, len(edges) + extra_edges)
    while len(edges) < target:
        u, v = (int(x) for x in rng.integers(0, n, size=2))
        if u != v:
            edges.add((min(u, v), max(u, v)))
    return Graph(range(n), edges)


def random_min_degree_graph(n: int, min_degree: int = 3, seed=0, extra_edges: int = 0) -> Graph:
    """Random connected graph with minimum degree at least ``min_degree``."""
    if n <= min_degree:
        raise PreconditionError(f"need n > {min_degree}")
    rng = make_rng(seed)
    g = random_connected_graph(n, extra_edges, rng)
    edges = set(g.edges())
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    while True:
        low = [v for v in range(n) if deg[v] < min_degree]
        if not low:
            break
        u = low[int(rng.integers(0, len(low)))]
        cands = [v for v in range(n) if v != u and (min(u, v), max(u, v)) not in edges]
        # prefer partners that are also short of degree
        short = [v for v in cands if deg[v] < min_degree]
        pool = short or cands
        v = pool[int(rng.integers(0, len(pool)))]
        edges.add((min(u, v), max(u, v)))
        deg[u] += 1
        deg[v] += 1
    g = Graph(range(n), edges)
    assert is_connected(g) and g.min_degree >= min_degree
    return g


# -- instances for the reduction rules ------------------------------------------


def _glue(g: Graph, h: Graph, at: int, h_root: int = 0) -> Graph:
    from .graph import attach

    return attach(g, h, at, h_root)[0]


def _base_graph(rng, n: int) -> Graph:
    kind = int(rng.integers(0, 3))
    if n < 2:
        return Graph([0])
    if kind == 0:
        return random_tree(n, rng)
    if kind == 1:
        return random_cactus(n, float(rng.uniform(0.2, 0.8)), rng)
    return random_connected_graph(n, int(rng.integers(0, n)), rng)


def _dense_core(rng, n: int) -> Graph:
    """A core with few low-degree vertices, so that ``d* >= 3`` is likely."""
    if n >= 5 and rng.random() < 0.6:
        return random_min_degree_graph(n, 3, rng, extra_edges=int(rng.integers(0, n)))
    # leafy cactus: every cycle vertex gets leaves, pushing degrees up
    g = random_cactus(max(n // 2, 3), 0.7, rng)
    for v in list(g.vertices):
        for _ in range(int(rng.integers(0, 2))):
            g = _glue(g, Graph.from_edges([(0, 1)]), v)
    return g


def random_rule_instance(rule: str, seed=0, max_n: int = 18,
                         max_attempts: int = MAX_ATTEMPTS):
    """Random connected graph (``n <= max_n``) on which ``rule`` applies.

    Returns ``(graph, step)`` where ``step`` is the first applicable step
    with the rule's standing hypotheses met.
    """
    from . import reductions as R

    rng = make_rng(seed)
    for _ in range(max_attempts):
        g = _rule_candidate(rule, rng, max_n)
        if g is None or g.n > max_n or not is_connected(g):
            continue
        steps = R.applicable_steps(g, rule)
        if steps:
            return g, steps[int(rng.integers(0, len(steps)))]
    raise GenerationError(f"could not build an instance for {rule}", acceptance_rate=0.0)


def _rule_candidate(rule: str, rng, max_n: int):
    from . import reductions as R
    from .graph import attach, cycle_graph, path_graph, star_graph

    if rule == R.STRONG_SUPPORT:
        leaves = int(rng.integers(2, 4))
        h = _base_graph(rng, int(rng.integers(2, max_n - leaves)))
        x = int(rng.choice(h.vertices))
        star = star_graph(leaves).add_vertices([leaves + 1]).add_edges([(0, leaves + 1)])
        g, mp = attach(h, star, x, leaves + 1)
        u = mp[0]
        if rng.random() < 0.5 and h.n >= 2:
            y = int(rng.choice([v for v in h.vertices if v != x]))
            g = g.add_edges([(u, y)])
        return g
    if rule == R.CYCLE_EDGE:
        n = int(rng.integers(5, max_n + 1))
        return random_cactus(n, 0.5, rng) if rng.random() < 0.5 else \
            random_connected_graph(n, int(rng.integers(1, 6)), rng)
    if rule == R.PATH_CONTRACT:
        core = _dense_core(rng, int(rng.integers(5, max_n - 2)))
        pairs = [(v, w) for v in core.vertices for w in core.vertices
                 if v < w and not core.has_edge(v, w)]
        if not pairs:
            return None
        v, w = pairs[int(rng.integers(0, len(pairs)))]
        nxt = max(core.vertices) + 1
        path = [v, nxt, nxt + 1, nxt + 2, w]
        return core.add_vertices(path[1:4]).add_edges(zip(path, path[1:]))
    if rule == R.PENDANT_PATH:
        core = _dense_core(rng, int(rng.integers(4, max_n - 2)))
        v = int(rng.choice(core.vertices))
        return _glue(core, path_graph(4), v)
    if rule == R.DEEP_TREE:
        size = int(rng.integers(3, 7))
        g = cycle_graph(size)
        for v in range(size):
            for _ in range(int(rng.integers(0, 3))):
                g = _glue(g, Graph.from_edges([(0, 1)]), v)
        room = max_n - g.n
        if room < 3:
            return None
        t = random_tree(int(rng.integers(4, room + 2)), rng)
        return _glue(g, t, int(rng.integers(0, size)), int(rng.choice(t.vertices)))
    if rule == R.SUBDIVIDED_STAR_RULE:
        s, t = int(rng.integers(2, 4)), int(rng.integers(0, 3))
        room = max_n - (2 * s + t)
        if room < 3:
            return None
        h = random_cactus(int(rng.integers(3, room + 1)), 0.6, rng)
        from .structure import cycle_blocks

        spots = [v for c in cycle_blocks(h) for v in c if h.degree(v) == 2]
        if not spots:
            return None
        star = Graph.from_edges(
            [(0, i) for i in range(1, s + t + 1)] + [(i, s + t + i) for i in range(1, s + 1)]
        )
        return _glue(h, star, int(rng.choice(spots)), 0)
    if rule == R.TREE_TRIM:
        return random_tree(int(rng.integers(3, max_n + 1)), rng)
    if rule == R.CYCLE_TRIM:
        return cycle_graph(int(rng.integers(3, max_n + 1)))
    raise ValueError(f"unknown rule {rule!r}")
