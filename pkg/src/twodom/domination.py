"""Exact 2-domination solvers.

Three independent backends compute ``gamma_2``:

``bruteforce``
    exhaustive search by increasing size (numpy-vectorised), the oracle.
``branch_and_bound``
    bitmask search for arbitrary graphs with a node budget.
``cactus_dp``
    linear-size dynamic programme over the block structure of a cactus.

Leaves and isolated vertices can never be 2-dominated from outside, so all
three backends put them into the set up front.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, islice

import numpy as np

from .errors import BudgetError, CapacityError, PreconditionError, StructureError
from .graph import Graph, bfs_distances, is_connected
from .structure import decompose_cactus

BRUTEFORCE = "bruteforce"
BRANCH_AND_BOUND = "branch_and_bound"
CACTUS_DP = "cactus_dp"

BRUTEFORCE_CAP = 24
DEFAULT_NODE_BUDGET = 2_000_000


@dataclass(frozen=True)
class DominationCertificate:
    gamma2: int
    witness: frozenset[int]
    backend: str

    def as_dict(self) -> dict:
        return {
            "gamma2": self.gamma2,
            "witness": sorted(self.witness),
            "backend": self.backend,
        }


def is_2_dominating(g: Graph, s) -> bool:
    """True iff every vertex outside ``s`` has at least two neighbours in ``s``."""
    s = set(s)
    unknown = s.difference(g.vertices)
    if unknown:
        from .errors import InvalidSelectionError

        raise InvalidSelectionError(f"unknown vertices {sorted(unknown)}")
    return all(v in s or len(g.neighbors(v) & s) >= 2 for v in g.vertices)


def _forced(g: Graph) -> list[int]:
    return [v for v in g.vertices if g.degree(v) <= 1]


def _certificate(g: Graph, witness, backend: str) -> DominationCertificate:
    witness = frozenset(witness)
    assert is_2_dominating(g, witness)
    return DominationCertificate(len(witness), witness, backend)


def _require_nonempty(g: Graph) -> None:
    if g.n == 0:
        raise PreconditionError("the empty graph has no 2-domination number")


# -- brute force ---------------------------------------------------------------

_CHUNK = 1 << 16


def gamma2_bruteforce(g: Graph, cap: int = BRUTEFORCE_CAP) -> DominationCertificate:
    """Exhaustive minimum 2-dominating set; refuses graphs above ``cap`` vertices."""
    _require_nonempty(g)
    if g.n > cap:
        raise CapacityError(
            f"brute force is capped at n <= {cap} (got n = {g.n}); "
            "use gamma2_branch_and_bound or gamma2_cactus"
        )
    verts = list(g.vertices)
    idx = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    adj = np.zeros((n, n), dtype=np.int16)
    for u, v in g.edges():
        adj[idx[u], idx[v]] = adj[idx[v], idx[u]] = 1
    forced = [idx[v] for v in _forced(g)]
    free = [i for i in range(n) if i not in set(forced)]

    for k in range(len(free) + 1):
        it = combinations(free, k)
        while True:
            chunk = list(islice(it, _CHUNK))
            if not chunk:
                break
            rows = len(chunk)
            member = np.zeros((rows, n), dtype=bool)
            member[:, forced] = True
            if k:
                member[np.arange(rows)[:, None], np.array(chunk)] = True
            cover = member.astype(np.int16) @ adj
            ok = (member | (cover >= 2)).all(axis=1)
            hits = np.flatnonzero(ok)
            if hits.size:
                row = member[hits[0]]
                return _certificate(
                    g, (verts[i] for i in np.flatnonzero(row)), BRUTEFORCE
                )
    raise AssertionError("V(G) is always 2-dominating")


# -- branch and bound ----------------------------------------------------------


def _greedy(g: Graph) -> set[int]:
    """Degree-greedy 2-dominating set used as the initial incumbent."""
    s = set(_forced(g))

    def deficit(v):
        return 0 if v in s else max(0, 2 - len(g.neighbors(v) & s))

    while True:
        short = [v for v in g.vertices if deficit(v)]
        if not short:
            return s
        best = max(
            (v for v in g.vertices if v not in s),
            key=lambda v: (deficit(v) + sum(1 for u in g.neighbors(v) if deficit(u)), -v),
        )
        s.add(best)


def gamma2_branch_and_bound(
    g: Graph, node_budget: int = DEFAULT_NODE_BUDGET
) -> DominationCertificate:
    """Exact branch and bound over include/exclude decisions.

    Lower bound: every vertex not in the set still needs ``2 - |N(v) & S|``
    units of coverage, and one added vertex supplies at most ``Delta + 2``.
    Raises :class:`BudgetError` after ``node_budget`` search nodes.
    """
    _require_nonempty(g)
    verts = list(g.vertices)
    idx = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    nbr = [0] * n
    for u, v in g.edges():
        nbr[idx[u]] |= 1 << idx[v]
        nbr[idx[v]] |= 1 << idx[u]
    full = (1 << n) - 1
    step = g.max_degree + 2

    inc = _greedy(g)
    best_mask = sum(1 << idx[v] for v in inc)
    best = [len(inc), best_mask]
    nodes = [0]

    def search(ins: int, outs: int) -> None:
        nodes[0] += 1
        if nodes[0] > node_budget:
            raise BudgetError(f"branch and bound exceeded {node_budget} nodes")
        und = full & ~ins & ~outs
        # propagate forced inclusions from excluded vertices
        changed = True
        while changed:
            changed = False
            o = outs
            while o:
                low = o & -o
                x = low.bit_length() - 1
                o ^= low
                need = 2 - (nbr[x] & ins).bit_count()
                if need <= 0:
                    continue
                avail = nbr[x] & und
                have = avail.bit_count()
                if have < need:
                    return
                if have == need:
                    ins |= avail
                    und &= ~avail
                    changed = True
        size = ins.bit_count()
        if size >= best[0]:
            return
        deficit = 0
        pick, pick_slack = -1, None
        rest = full & ~ins
        while rest:
            low = rest & -rest
            x = low.bit_length() - 1
            rest ^= low
            need = 2 - (nbr[x] & ins).bit_count()
            if need <= 0:
                continue
            deficit += need
            slack = (nbr[x] & und).bit_count() - need
            if (und >> x) & 1:
                slack += 1
            if pick_slack is None or slack < pick_slack:
                pick, pick_slack = x, slack
        if deficit == 0:
            best[0], best[1] = size, ins
            return
        if size + -(-deficit // step) >= best[0]:
            return
        if (und >> pick) & 1:
            branch = pick
        else:
            cand = nbr[pick] & und
            branch = (cand & -cand).bit_length() - 1
        bit = 1 << branch
        search(ins | bit, outs)
        search(ins, outs | bit)

    forced = sum(1 << idx[v] for v in _forced(g))
    search(forced, 0)
    witness = [verts[i] for i in range(n) if (best[1] >> i) & 1]
    return _certificate(g, witness, BRANCH_AND_BOUND)


# -- cactus dynamic programme ----------------------------------------------

# Table states for a vertex v relative to the part of the graph hanging below
# it: IN (v chosen) or 0/1/2 = number of chosen neighbours below (2 means >=2).
IN = "in"


def _upd(table: dict, key, cost: int, sets) -> None:
    cur = table.get(key)
    if cur is None or cost < cur[0]:
        table[key] = (cost, sets)


def _join(a, b):
    # witnesses as nested tuples, flattened once at the end
    if a is None:
        return b
    if b is None:
        return a
    return (a, b)


def _flatten(w) -> list[int]:
    out, stack = [], [w]
    while stack:
        x = stack.pop()
        if x is None:
            continue
        if isinstance(x, tuple):
            stack.extend(x)
        else:
            out.append(x)
    return out


def _bridge_block(tc: dict) -> dict:
    """Contribution of a child across a bridge, keyed by (v_in, add)."""
    res: dict = {}
    for s, (c, w) in tc.items():
        if s == IN:
            _upd(res, (True, 0), c, w)
            _upd(res, (False, 1), c, w)
        elif s >= 1:
            _upd(res, (True, 0), c, w)
            if s == 2:
                _upd(res, (False, 0), c, w)
    return res


def _cycle_block(chain: list[int], tables: dict) -> dict:
    """Contribution of a cycle ``top, c1..ck`` (``chain = [c1..ck]``)."""
    res: dict = {}
    for v_in in (True, False):
        states: dict = {}
        for s, (c, w) in tables[chain[0]].items():
            cur = IN if s == IN else min(2, s + v_in)
            _upd(states, (s == IN, cur), c, w)
        for ci in chain[1:]:
            nxt: dict = {}
            for (first_in, cur), (c, w) in states.items():
                for s, (c2, w2) in tables[ci].items():
                    if s == IN:
                        prev_ok = cur == IN or cur + 1 >= 2
                        new = IN
                    else:
                        prev_ok = cur == IN or cur >= 2
                        new = min(2, s + (cur == IN))
                    if prev_ok:
                        _upd(nxt, (first_in, new), c + c2, _join(w, w2))
            states = nxt
        for (first_in, cur), (c, w) in states.items():
            if cur != IN and cur + v_in < 2:
                continue
            add = min(2, int(first_in) + int(cur == IN))
            _upd(res, (v_in, add), c, w)
    return res


def gamma2_cactus(g: Graph) -> DominationCertificate:
    """Exact 2-domination number of a connected cactus in linear time.

    The graph is rooted at its smallest vertex.  Each vertex keeps a table
    over {IN, 0, 1, 2} for the subgraph below it; child blocks are folded in
    one at a time.  A cycle block is handled by a chain DP around the cycle
    for both states of its top vertex.
    """
    _require_nonempty(g)
    if not is_connected(g):
        raise StructureError("gamma2_cactus needs a connected graph")
    dec = decompose_cactus(g)  # raises StructureError on non-cacti
    root = g.vertices[0]
    depth = bfs_distances(g, [root])
    children: dict[int, list[list[int]]] = {v: [] for v in g.vertices}
    for cyc in dec.cycle_blocks:
        i = min(range(len(cyc)), key=lambda j: depth[cyc[j]])
        rot = cyc[i:] + cyc[:i]
        children[rot[0]].append(rot)
    for u, v in dec.bridges:
        top, low = (u, v) if depth[u] < depth[v] else (v, u)
        children[top].append([top, low])

    tables: dict[int, dict] = {}
    for v in sorted(g.vertices, key=lambda x: (-depth[x], x)):
        table: dict = {IN: (1, v), 0: (0, None)}
        for blk in children[v]:
            if len(blk) == 2:
                contrib = _bridge_block(tables[blk[1]])
            else:
                contrib = _cycle_block(blk[1:], tables)
            new: dict = {}
            for s, (c, w) in table.items():
                for (v_in, add), (c2, w2) in contrib.items():
                    if v_in != (s == IN):
                        continue
                    key = IN if s == IN else min(2, s + add)
                    _upd(new, key, c + c2, _join(w, w2))
            table = new
        tables[v] = table
        for blk in children[v]:
            for x in blk[1:]:
                del tables[x]

    final = {k: val for k, val in tables[root].items() if k == IN or k == 2}
    cost, w = min(final.values(), key=lambda cw: cw[0])
    cert = _certificate(g, _flatten(w), CACTUS_DP)
    assert cert.gamma2 == cost
    return cert
