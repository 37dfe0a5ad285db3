"""Edge-list text format and DOT export.

Edge-list format::

    n m
    u v        (m lines, 0 <= u < v < n)

Isolated vertices are implied by ``n``.  Blank lines are ignored.  Output is
canonical: edges sorted, one space separator, LF line endings.
"""

from __future__ import annotations

from .errors import ParseError
from .graph import Graph


def parse_edge_list(text: str) -> Graph:
    lines = [
        (i, ln.strip()) for i, ln in enumerate(text.splitlines(), start=1) if ln.strip()
    ]
    if not lines:
        raise ParseError("missing header 'n m'", line=1)
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise ParseError(f"malformed header {header!r}, expected 'n m'", line=lineno)
    n, m = int(parts[0]), int(parts[1])
    body = lines[1:]
    if len(body) != m:
        raise ParseError(
            f"header announces {m} edges but {len(body)} edge lines follow",
            line=body[-1][0] if len(body) > m else lineno,
        )
    seen = set()
    edges = []
    for lineno, ln in body:
        parts = ln.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise ParseError(f"malformed edge line {ln!r}", line=lineno)
        u, v = int(parts[0]), int(parts[1])
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", line=lineno)
        if u >= n or v >= n:
            raise ParseError(f"vertex id out of range 0..{n - 1}", line=lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"duplicate edge {key[0]} {key[1]}", line=lineno)
        seen.add(key)
        edges.append(key)
    return Graph(range(n), edges)


def read_edge_list(path) -> Graph:
    with open(path, encoding="ascii") as fh:
        return parse_edge_list(fh.read())


def write_edge_list(g: Graph) -> str:
    """Canonical edge-list text.

    Ids are compacted to ``0..n-1`` (order preserving) because the format
    cannot express gaps; graphs whose ids already are ``0..n-1`` round-trip
    exactly.
    """
    g = g.compact()
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(out) + "\n"


def write_dot(g: Graph, name: str = "G", highlight=()) -> str:
    """Graphviz DOT text. Vertices in ``highlight`` are filled."""
    highlight = set(highlight)
    out = [f"graph {name} {{"]
    for v in g.vertices:
        attrs = ' [style=filled, fillcolor="lightblue"]' if v in highlight else ""
        out.append(f"  {v}{attrs};")
    out.extend(f"  {u} -- {v};" for u, v in g.edges())
    out.append("}")
    return "\n".join(out) + "\n"
