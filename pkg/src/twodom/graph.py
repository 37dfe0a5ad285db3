"""Immutable simple undirected graphs with stable vertex ids.

Every transformation returns a new :class:`Graph`; the original is never
touched.  Vertex ids are non-negative integers and survive deletions, so a
vertex keeps its name across a chain of reductions.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Iterator

from .errors import InvalidSelectionError, PreconditionError

Edge = tuple[int, int]


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """A finite simple undirected graph.

    >>> g = Graph.from_edges([(0, 1), (1, 2)])
    >>> g.n, g.m, g.degree(1)
    (3, 2, 2)
    """

    __slots__ = ("_adj", "_vertices", "_m", "_hash")

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[Edge] = ()):
        adj: dict[int, set[int]] = {}
        for v in vertices:
            v = int(v)
            if v < 0:
                raise InvalidSelectionError(f"negative vertex id {v}")
            adj.setdefault(v, set())
        m = 0
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise PreconditionError(f"self-loop at {u}")
            if u < 0 or v < 0:
                raise InvalidSelectionError(f"negative vertex id in edge {(u, v)}")
            nu = adj.setdefault(u, set())
            if v in nu:
                raise PreconditionError(f"parallel edge {_norm(u, v)}")
            nu.add(v)
            adj.setdefault(v, set()).add(u)
            m += 1
        self._adj = {v: frozenset(adj[v]) for v in sorted(adj)}
        self._vertices = tuple(self._adj)
        self._m = m
        self._hash = None

    @classmethod
    def from_edges(cls, edges: Iterable[Edge], n: int | None = None) -> "Graph":
        """Build a graph from an edge list; ``n`` adds isolated ids ``0..n-1``."""
        return cls(range(n) if n is not None else (), edges)

    @classmethod
    def _from_adj(cls, adj: dict[int, Iterable[int]]) -> "Graph":
        g = cls.__new__(cls)
        g._adj = {v: frozenset(adj[v]) for v in sorted(adj)}
        g._vertices = tuple(g._adj)
        g._m = sum(len(s) for s in g._adj.values()) // 2
        g._hash = None
        return g

    # -- basic queries -------------------------------------------------

    @property
    def vertices(self) -> tuple[int, ...]:
        """Vertex ids in increasing order."""
        return self._vertices

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return self._m

    def __len__(self) -> int:
        return len(self._vertices)

    def __iter__(self) -> Iterator[int]:
        return iter(self._vertices)

    def __contains__(self, v: object) -> bool:
        return v in self._adj

    def neighbors(self, v: int) -> frozenset[int]:
        try:
            return self._adj[v]
        except KeyError:
            raise InvalidSelectionError(f"unknown vertex {v}") from None

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        return self.neighbors(v) | {v}

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._adj and v in self._adj[u]

    def edges(self) -> list[Edge]:
        """Edges as ``(u, v)`` with ``u < v``, sorted."""
        return sorted((u, v) for u in self._vertices for v in self._adj[u] if u < v)

    def leaves(self) -> list[int]:
        return [v for v in self._vertices if len(self._adj[v]) == 1]

    @property
    def min_degree(self) -> int:
        return min((len(s) for s in self._adj.values()), default=0)

    @property
    def max_degree(self) -> int:
        return max((len(s) for s in self._adj.values()), default=0)

    def adjacency(self) -> dict[int, frozenset[int]]:
        return dict(self._adj)

    # -- value semantics -----------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._vertices, tuple(self.edges())))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, edges={self.edges()!r})"

    # -- transformations -------------------------------------------------

    def _check_ids(self, ids: Iterable[int]) -> set[int]:
        ids = set(ids)
        unknown = ids - self._adj.keys()
        if unknown:
            raise InvalidSelectionError(f"unknown vertices {sorted(unknown)}")
        return ids

    def delete_vertices(self, xs: Iterable[int]) -> "Graph":
        """Return ``G - X``; surviving ids are unchanged."""
        xs = self._check_ids(xs)
        return Graph._from_adj(
            {v: nb - xs for v, nb in self._adj.items() if v not in xs}
        )

    def delete_edges(self, edges: Iterable[Edge]) -> "Graph":
        adj = {v: set(nb) for v, nb in self._adj.items()}
        for u, v in edges:
            if not self.has_edge(u, v):
                raise PreconditionError(f"edge {_norm(u, v)} not in graph")
            if v not in adj[u]:
                raise PreconditionError(f"edge {_norm(u, v)} deleted twice")
            adj[u].discard(v)
            adj[v].discard(u)
        return Graph._from_adj(adj)

    def add_edges(self, edges: Iterable[Edge]) -> "Graph":
        adj = {v: set(nb) for v, nb in self._adj.items()}
        for u, v in edges:
            if u == v:
                raise PreconditionError(f"self-loop at {u}")
            self._check_ids((u, v))
            if v in adj[u]:
                raise PreconditionError(f"edge {_norm(u, v)} already present")
            adj[u].add(v)
            adj[v].add(u)
        return Graph._from_adj(adj)

    def add_vertices(self, vs: Iterable[int]) -> "Graph":
        adj = {v: set(nb) for v, nb in self._adj.items()}
        for v in vs:
            if v in adj or v < 0:
                raise PreconditionError(f"vertex {v} already present or negative")
            adj[v] = set()
        return Graph._from_adj(adj)

    def subgraph(self, vs: Iterable[int]) -> "Graph":
        keep = self._check_ids(vs)
        return self.delete_vertices(self._adj.keys() - keep)

    def relabel(self, mapping: dict[int, int]) -> "Graph":
        return Graph(
            (mapping[v] for v in self._vertices),
            ((mapping[u], mapping[v]) for u, v in self.edges()),
        )

    def compact(self) -> "Graph":
        """Relabel ids to ``0..n-1`` preserving their order."""
        return self.relabel({v: i for i, v in enumerate(self._vertices)})

    def validate(self) -> None:
        """Raise ``AssertionError`` if an internal invariant is broken."""
        total = 0
        for v, nb in self._adj.items():
            assert v >= 0
            assert v not in nb, f"self-loop at {v}"
            for u in nb:
                assert u in self._adj, f"dangling neighbour {u} of {v}"
                assert v in self._adj[u], f"asymmetric edge {v}-{u}"
            total += len(nb)
        assert total % 2 == 0 and total // 2 == self._m

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(self._vertices)
        g.add_edges_from(self.edges())
        return g


# -- module-level queries ---------------------------------------------------


def canonical_order(g: Graph) -> list[int]:
    """Vertices sorted by ``(degree, id)``."""
    return sorted(g.vertices, key=lambda v: (g.degree(v), v))


def degree_sequence(g: Graph) -> list[int]:
    """Non-decreasing degree sequence, in canonical ``(degree, id)`` order."""
    return [g.degree(v) for v in canonical_order(g)]


def potential_f(g: Graph) -> int:
    """``n + 3m + n1`` where ``n1`` counts degree-one vertices."""
    return g.n + 3 * g.m + len(g.leaves())


def bfs_distances(g: Graph, sources: Iterable[int]) -> dict[int, int]:
    dist = {s: 0 for s in sources}
    queue = deque(dist)
    while queue:
        v = queue.popleft()
        for u in g.neighbors(v):
            if u not in dist:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def connected_components(g: Graph) -> list[list[int]]:
    seen: set[int] = set()
    comps = []
    for v in g.vertices:
        if v not in seen:
            comp = sorted(bfs_distances(g, [v]))
            seen.update(comp)
            comps.append(comp)
    return comps


def is_connected(g: Graph) -> bool:
    """True iff ``g`` has at most one component (the empty graph counts)."""
    if g.n == 0:
        return True
    return len(bfs_distances(g, [g.vertices[0]])) == g.n


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and is_connected(g)


def is_cycle(g: Graph) -> bool:
    return (
        g.n >= 3
        and all(g.degree(v) == 2 for v in g.vertices)
        and is_connected(g)
    )


def is_bipartite(g: Graph) -> bool:
    """2-colouring test over every component."""
    colour: dict[int, int] = {}
    for s in g.vertices:
        if s in colour:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in g.neighbors(v):
                if u not in colour:
                    colour[u] = 1 - colour[v]
                    queue.append(u)
                elif colour[u] == colour[v]:
                    return False
    return True


# -- small named graphs (ids 0..n-1) ----------------------------------------


def empty_graph(n: int) -> Graph:
    return Graph(range(n))


def path_graph(n: int) -> Graph:
    return Graph(range(n), ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise PreconditionError("a cycle needs at least 3 vertices")
    return Graph(range(n), [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    """``K_{1,leaves}`` with centre 0."""
    return Graph(range(leaves + 1), ((0, i) for i in range(1, leaves + 1)))


def complete_graph(n: int) -> Graph:
    return Graph(range(n), ((i, j) for i in range(n) for j in range(i + 1, n)))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(range(10), outer + spokes + inner)


def attach(g: Graph, h: Graph, at: int, h_root: int = 0) -> tuple[Graph, dict[int, int]]:
    """Glue ``h`` onto ``g`` by identifying ``h_root`` with vertex ``at`` of ``g``.

    The other vertices of ``h`` receive fresh ids above ``max(g)``.  Returns
    the new graph and the id mapping applied to ``h``.
    """
    if at not in g:
        raise InvalidSelectionError(f"unknown vertex {at}")
    nxt = max(g.vertices, default=-1) + 1
    mapping = {}
    for v in h.vertices:
        if v == h_root:
            mapping[v] = at
        else:
            mapping[v] = nxt
            nxt += 1
    new = Graph(
        list(g.vertices) + list(mapping.values()),
        g.edges() + [(mapping[u], mapping[v]) for u, v in h.edges()],
    )
    return new, mapping
