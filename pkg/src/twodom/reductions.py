"""Checked graph rewrites ``G -> G'`` that preserve the bound ``gamma_2 <= a + 1``.

Each rule returns a :class:`ReductionStep` carrying the rewritten graph.  A
step records the ``offset`` ``s`` claimed by the rule's counting argument:
``gamma_2(G) <= gamma_2(G') + s`` and ``a(G) >= a(G') + s``, which together
transfer the bound from ``G'`` to ``G``.  The claim is checked, not trusted,
by :func:`verify_step` (it is known to fail for ``deep_tree`` on some
graphs where re-hung siblings were the only dominators of ``v4``).
``offset`` is ``None`` for rules where no such constant is known.  Some rewrites are defined on more graphs than the
counting argument covers; ``hypotheses_met`` is ``False`` when the standing
hypotheses (``d* >= 3`` and friends) fail, and the engine never takes such
a step.

Rules, in the fixed priority used by :func:`reduce_trace`:

==================  =====================================================
``strong_support``  delete a strong support vertex with all its leaves
``cycle_edge``      delete a cycle edge at a vertex of degree >= 3
                    (needs ``d* <= 2``); offset 0
``path_contract``   replace an induced ``v u1 u2 u3 w`` with inner degree 2
                    by the edge ``vw`` (needs ``d* >= 3``); offset 2
``pendant_path``    delete a pendant path ``u1 u2 u3``; offset 2
``deep_tree``       shorten a hanging tree of height >= 3 at its deepest
                    leaf, re-hanging siblings; offset 2
``subdivided_star`` delete a subdivided star hanging at a degree-2 cycle
                    vertex (``s >= 2`` legs, ``t`` leaves); offset s+t+1
``tree_trim``       delete the smallest leaf of a tree
``cycle_trim``      delete one edge of a cycle
==================  =====================================================
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .domination import DEFAULT_NODE_BUDGET
from .errors import BudgetError, PreconditionError, RuleNotApplicable
from .graph import (
    Graph,
    bfs_distances,
    is_connected,
    is_cycle,
    is_tree,
    potential_f,
)
from .invariants import annihilation, gamma2
from .structure import (
    HANGING_TREE,
    INDUCED_P5_DEG2,
    PENDANT_P4,
    SUBDIVIDED_STAR,
    Feature,
    all_hanging_trees,
    bridges,
    feature_holds,
    find_induced_p5_deg2,
    find_pendant_p4,
    find_strong_supports,
    find_subdivided_stars,
    is_cactus,
    leaf_neighbors,
)

STRONG_SUPPORT = "strong_support"
CYCLE_EDGE = "cycle_edge"
PATH_CONTRACT = "path_contract"
PENDANT_PATH = "pendant_path"
DEEP_TREE = "deep_tree"
SUBDIVIDED_STAR_RULE = "subdivided_star"
TREE_TRIM = "tree_trim"
CYCLE_TRIM = "cycle_trim"

RULES = (
    STRONG_SUPPORT,
    CYCLE_EDGE,
    PATH_CONTRACT,
    PENDANT_PATH,
    DEEP_TREE,
    SUBDIVIDED_STAR_RULE,
    TREE_TRIM,
    CYCLE_TRIM,
)

BASE_CASE_K2 = "base_case_k2"
TERMINAL_TREE = "tree"
TERMINAL_CYCLE = "cycle"
NO_RULE = "no_rule_applies"


@dataclass(frozen=True)
class ReductionStep:
    rule: str
    anchors: dict
    removed_vertices: tuple[int, ...]
    removed_edges: tuple[tuple[int, int], ...]
    added_edges: tuple[tuple[int, int], ...]
    offset: int | None
    f_before: int
    f_after: int
    result: Graph = field(repr=False, compare=False)
    hypotheses_met: bool = True

    def as_dict(self) -> dict:
        return {
            "rule": self.rule,
            "anchors": _jsonable(self.anchors),
            "removed_vertices": list(self.removed_vertices),
            "removed_edges": [list(e) for e in self.removed_edges],
            "added_edges": [list(e) for e in self.added_edges],
            "offset": self.offset,
            "f_before": self.f_before,
            "f_after": self.f_after,
            "hypotheses_met": self.hypotheses_met,
        }

    def to_line(self) -> str:
        anchors = ",".join(f"{k}={_fmt(v)}" for k, v in self.anchors.items())
        off = "?" if self.offset is None else str(self.offset)
        return f"{self.rule} {anchors or '-'} s={off} f={self.f_before}->{self.f_after}"


def _fmt(v) -> str:
    if isinstance(v, (tuple, list)):
        return "[" + " ".join(_fmt(x) for x in v) + "]"
    return str(v)


def _jsonable(v):
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (tuple, list)):
        return [_jsonable(x) for x in v]
    return v


def _step(g: Graph, rule: str, anchors: dict, g2: Graph, offset,
          removed_vertices=(), removed_edges=(), added_edges=(), hypotheses_met=True) -> ReductionStep:
    if not is_connected(g2) or g2.n < 2:
        raise RuleNotApplicable(f"{rule}: result would be disconnected or trivial")
    return ReductionStep(
        rule=rule,
        anchors=anchors,
        removed_vertices=tuple(sorted(removed_vertices)),
        removed_edges=tuple(sorted(removed_edges)),
        added_edges=tuple(sorted(added_edges)),
        offset=offset,
        f_before=potential_f(g),
        f_after=potential_f(g2),
        result=g2,
        hypotheses_met=hypotheses_met,
    )


def _d_star(g: Graph):
    return annihilation(g).d_star


def _base(g: Graph) -> None:
    if g.n < 3 or not is_connected(g):
        raise PreconditionError("rule needs a connected graph with n >= 3")


# -- rules ----------------------------------------------------------------------


def apply_strong_support(g: Graph, u: int) -> ReductionStep:
    """Delete ``u`` together with its (at least two) leaf neighbours.

    No offset is known for this rule; only the implication between the
    bounds is guaranteed.
    """
    if g.n < 4:
        raise PreconditionError("strong_support needs n >= 4")
    leaves = leaf_neighbors(g, u)
    if len(leaves) < 2:
        raise RuleNotApplicable(f"{u} is not a strong support vertex")
    gone = [u, *leaves]
    g2 = g.delete_vertices(gone)
    if not is_connected(g2) or g2.n < 2:
        raise RuleNotApplicable(f"removing {u} and its leaves disconnects the graph")
    return _step(g, STRONG_SUPPORT, {"support": u, "leaves": tuple(leaves)}, g2, None,
                 removed_vertices=gone,
                 removed_edges=[(min(u, x), max(u, x)) for x in g.neighbors(u)])


def apply_cycle_edge(g: Graph) -> ReductionStep:
    """Delete the first cycle edge ``vu`` (lexicographic) with ``d(v) >= 3``."""
    _base(g)
    if is_tree(g):
        raise RuleNotApplicable("graph is a tree", route=TREE_TRIM)
    if is_cycle(g):
        raise RuleNotApplicable("graph is a cycle", route=CYCLE_TRIM)
    ds = _d_star(g)
    if ds is None or ds > 2:
        raise RuleNotApplicable(f"d* = {ds} > 2")
    br = set(bridges(g))
    for v in g.vertices:
        if g.degree(v) < 3:
            continue
        for u in sorted(g.neighbors(v)):
            e = (min(u, v), max(u, v))
            if e not in br:
                g2 = g.delete_edges([e])
                return _step(g, CYCLE_EDGE, {"v": v, "u": u}, g2, 0, removed_edges=[e])
    raise AssertionError("a connected non-tree, non-cycle graph has such an edge")


def _pick(features, kind, feature):
    if feature is None:
        if not features:
            raise RuleNotApplicable(f"no {kind} feature present")
        return features[0]
    return feature


def apply_path_contraction(g: Graph, feature: Feature | None = None) -> ReductionStep:
    """``G - {u1, u2, u3} + vw`` for an induced path ``v u1 u2 u3 w``.

    The counting argument needs ``d*(G) >= 3``; otherwise the step is still
    built but marked ``hypotheses_met=False`` (the engine uses ``cycle_edge``
    or a trim there).  Trees are refused and routed to ``tree_trim``.
    """
    _base(g)
    feature = _pick(find_induced_p5_deg2(g) if feature is None else [], INDUCED_P5_DEG2, feature)
    if feature.kind != INDUCED_P5_DEG2 or not feature_holds(g, feature):
        raise PreconditionError("stale or wrong induced path feature")
    if is_tree(g):
        raise RuleNotApplicable("path contraction on a tree", route=TREE_TRIM)
    ds = _d_star(g)
    a = feature.anchors
    v, w = a["v"], a["w"]
    inner = [a["u1"], a["u2"], a["u3"]]
    assert not g.has_edge(v, w)
    g2 = g.delete_vertices(inner).add_edges([(v, w)])
    step = _step(g, PATH_CONTRACT, dict(a), g2, 2, removed_vertices=inner,
                 hypotheses_met=ds is not None and ds >= 3,
                 removed_edges=[(min(x, y), max(x, y)) for x, y in
                                zip([v, *inner], [*inner, w])],
                 added_edges=[(min(v, w), max(v, w))])
    assert step.f_after == step.f_before - 12
    return step


def _pendant_ok(g: Graph, f: Feature) -> bool:
    ds = _d_star(g)
    return ds is not None and ds >= 3 and g.degree(f.anchors["v"]) >= 3


def apply_pendant_path(g: Graph, feature: Feature | None = None) -> ReductionStep:
    """Delete the pendant path ``u1 u2 u3`` hanging at ``v``.

    Offset 2.  The step is ``hypotheses_met`` when ``d*(G) >= 3`` and ``d(v) >= 3``
    (with ``d(v) = 2`` a path contraction applies instead).
    """
    _base(g)
    feature = _pick(find_pendant_p4(g) if feature is None else [], PENDANT_P4, feature)
    if feature.kind != PENDANT_P4 or not feature_holds(g, feature):
        raise PreconditionError("stale or wrong pendant path feature")
    a = feature.anchors
    gone = [a["u1"], a["u2"], a["u3"]]
    g2 = g.delete_vertices(gone)
    step = _step(g, PENDANT_PATH, dict(a), g2, 2, hypotheses_met=_pendant_ok(g, feature),
                 removed_vertices=gone,
                 removed_edges=[tuple(sorted(e)) for e in
                                [(a["u1"], a["u2"]), (a["u2"], a["u3"]), (a["u3"], a["v"])]])
    assert g2.m == g.m - 3
    return step


def _deep_path(g: Graph, feature: Feature):
    """``v1..v4`` from the deepest leaf of a hanging tree towards its root."""
    root = feature.anchors["root"]
    t = g.subgraph(feature.anchors["vertices"])
    depth = bfs_distances(t, [root])
    h = max(depth.values())
    if h < 3:
        raise RuleNotApplicable(f"hanging tree has height {h} < 3")
    v1 = min(v for v in depth if depth[v] == h)
    path = [v1]
    while len(path) < 4:
        cur = path[-1]
        path.append(next(u for u in t.neighbors(cur) if depth[u] == depth[cur] - 1))
    return path


def apply_deep_tree(g: Graph, feature: Feature) -> ReductionStep:
    """Shorten a hanging tree whose height from the root is at least 3.

    With ``v1`` a deepest leaf and ``v1 v2 v3 v4`` the path towards the root,
    delete ``v1, v2, v3`` and join the other children of ``v3`` to ``v4``.
    Needs ``d(v2) = 2``; when ``d(v2) >= 3`` the vertex ``v2`` is a strong
    support and ``strong_support`` applies instead.  Offset 2; ``hypotheses_met``
    when ``d*(G) >= 3``.
    """
    _base(g)
    if feature.kind != HANGING_TREE or not feature_holds(g, feature):
        raise PreconditionError("stale or wrong hanging tree feature")
    v1, v2, v3, v4 = _deep_path(g, feature)
    if g.degree(v2) >= 3:
        raise RuleNotApplicable(f"{v2} is a strong support vertex", route=STRONG_SUPPORT)
    others = sorted(g.neighbors(v3) - {v2, v4})
    added = [(min(w, v4), max(w, v4)) for w in others]
    g2 = g.delete_vertices([v1, v2, v3]).add_edges(added)
    ds = _d_star(g)
    removed = [(min(v3, x), max(v3, x)) for x in g.neighbors(v3)]
    removed += [tuple(sorted((v1, v2)))]
    step = _step(
        g, DEEP_TREE,
        {"root": feature.anchors["root"], "v1": v1, "v2": v2, "v3": v3, "v4": v4,
         "rehung": tuple(others)},
        g2, 2, removed_vertices=[v1, v2, v3], removed_edges=removed, added_edges=added,
        hypotheses_met=ds is not None and ds >= 3,
    )
    assert g2.m == g.m - 3
    return step


def apply_subdivided_star(g: Graph, feature: Feature) -> ReductionStep:
    """Delete a subdivided star (centre included) hung at a degree-2 cycle vertex."""
    _base(g)
    if feature.kind != SUBDIVIDED_STAR or not feature_holds(g, feature):
        raise PreconditionError("stale or wrong subdivided star feature")
    a = feature.anchors
    u = a["center"]
    legs, leaves = list(a["legs"]), list(a["leaves"])
    # recount on g: the feature must be maximal at its centre
    fresh = next(f for f in find_subdivided_stars(g) if f.anchors["center"] == u)
    s, t = fresh.params["s"], fresh.params["t"]
    if (s, t) != (len(legs), len(leaves)):
        raise PreconditionError("subdivided star feature is not maximal")
    if s < 2:
        raise RuleNotApplicable(f"subdivided star needs s >= 2 legs (s = {s})")
    if not fresh.params["on_cycle"]:
        raise RuleNotApplicable("centre is not a degree-2 vertex of a cycle in the host")
    gone = [u, *leaves, *(x for leg in legs for x in leg)]
    g2 = g.delete_vertices(gone)
    removed = sorted({(min(x, y), max(x, y)) for x in gone for y in g.neighbors(x)})
    step = _step(g, SUBDIVIDED_STAR_RULE, {"center": u, "legs": tuple(legs),
                                           "leaves": tuple(leaves)},
                 g2, s + t + 1, removed_vertices=gone, removed_edges=removed)
    assert g2.m == g.m - (2 * s + t + 2)
    return step


def tree_trim(g: Graph) -> ReductionStep:
    if not is_tree(g) or g.n < 3:
        raise RuleNotApplicable("tree_trim needs a tree with n >= 3")
    v = g.leaves()[0]
    (u,) = g.neighbors(v)
    return _step(g, TREE_TRIM, {"leaf": v}, g.delete_vertices([v]), None,
                 removed_vertices=[v], removed_edges=[(min(u, v), max(u, v))])


def cycle_trim(g: Graph) -> ReductionStep:
    if not is_cycle(g):
        raise RuleNotApplicable("cycle_trim needs a cycle")
    v = g.vertices[0]
    u = min(g.neighbors(v))
    return _step(g, CYCLE_TRIM, {"v": v, "u": u}, g.delete_edges([(v, u)]), None,
                 removed_edges=[(v, u)])


# -- verification ---------------------------------------------------------------


@dataclass(frozen=True)
class StepVerification:
    gamma2_inequality_ok: bool | None
    a_inequality_ok: bool | None
    end_implication_ok: bool | None
    partial: bool = False

    @property
    def ok(self) -> bool:
        flags = (self.gamma2_inequality_ok, self.a_inequality_ok, self.end_implication_ok)
        return not self.partial and all(f is not False for f in flags)

    def as_dict(self) -> dict:
        return {
            "gamma2_inequality_ok": self.gamma2_inequality_ok,
            "a_inequality_ok": self.a_inequality_ok,
            "end_implication_ok": self.end_implication_ok,
            "partial": self.partial,
        }


def verify_step(g: Graph, step: ReductionStep, g2: Graph | None = None,
                node_budget: int = DEFAULT_NODE_BUDGET) -> StepVerification:
    """Check the step numerically with exact solvers.

    With a known offset ``s``: ``gamma_2(G) <= gamma_2(G') + s`` and
    ``a(G) >= a(G') + s``.  Always: ``gamma_2(G') <= a(G') + 1`` implies
    ``gamma_2(G) <= a(G) + 1``.  A solver budget overrun yields a partial
    record with all flags ``None``.
    """
    g2 = step.result if g2 is None else g2
    try:
        d1, d2 = gamma2(g, node_budget).gamma2, gamma2(g2, node_budget).gamma2
    except BudgetError:
        return StepVerification(None, None, None, partial=True)
    a1, a2 = annihilation(g).a, annihilation(g2).a
    end = (d2 > a2 + 1) or (d1 <= a1 + 1)
    if step.offset is None:
        return StepVerification(None, None, end)
    s = step.offset
    return StepVerification(d1 <= d2 + s, a1 >= a2 + s, end)


# -- engine ---------------------------------------------------------------------


@dataclass(frozen=True)
class ReductionTrace:
    initial: Graph
    steps: tuple[ReductionStep, ...]
    terminal: Graph
    terminal_reason: str

    def to_text(self) -> str:
        lines = [step.to_line() for step in self.steps]
        lines.append(f"terminal {self.terminal_reason} n={self.terminal.n} m={self.terminal.m}")
        return "\n".join(lines) + "\n"

    def as_dict(self) -> dict:
        return {
            "initial": {"n": self.initial.n, "edges": [list(e) for e in self.initial.edges()]},
            "steps": [s.as_dict() for s in self.steps],
            "terminal": {
                "vertices": list(self.terminal.vertices),
                "edges": [list(e) for e in self.terminal.edges()],
            },
            "terminal_reason": self.terminal_reason,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)


def applicable_steps(g: Graph, rule: str) -> list[ReductionStep]:
    """Every way ``rule`` applies to ``g`` with its standing hypotheses met.

    Ordered by anchor ids.  Used by the engine (first element) and by tests
    that want to exercise a rule on every anchor.
    """
    if g.n < 3 or not is_connected(g):
        return []
    out = []

    def attempt(fn, *args):
        try:
            out.append(fn(g, *args))
        except RuleNotApplicable:
            pass

    if rule == STRONG_SUPPORT:
        if g.n >= 4:
            for f in find_strong_supports(g):
                attempt(apply_strong_support, f.anchors["support"])
    elif rule == CYCLE_EDGE:
        attempt(apply_cycle_edge)
    elif rule == PATH_CONTRACT:
        ds = _d_star(g)
        if ds is not None and ds >= 3:
            for f in find_induced_p5_deg2(g):
                attempt(apply_path_contraction, f)
    elif rule == PENDANT_PATH:
        for f in find_pendant_p4(g):
            if _pendant_ok(g, f):
                attempt(apply_pendant_path, f)
    elif rule == DEEP_TREE:
        ds = _d_star(g)
        if ds is not None and ds >= 3 and is_cactus(g):
            for f in all_hanging_trees(g):
                if f.params["height"] >= 3:
                    attempt(apply_deep_tree, f)
    elif rule == SUBDIVIDED_STAR_RULE:
        for f in find_subdivided_stars(g):
            if f.params["s"] >= 2 and f.params["on_cycle"]:
                attempt(apply_subdivided_star, f)
    elif rule == TREE_TRIM:
        attempt(tree_trim)
    elif rule == CYCLE_TRIM:
        attempt(cycle_trim)
    else:
        raise ValueError(f"unknown rule {rule!r}")
    return out


def reduce_trace(g: Graph, descend_base_cases: bool = True,
                 max_steps: int | None = None) -> ReductionTrace:
    """Apply the first applicable rule (fixed priority) until none applies.

    Stops at ``K2``.  With ``descend_base_cases=False`` it also stops as soon
    as the graph is a tree or a cycle, for which the bound is known.
    """
    if g.n < 2 or not is_connected(g):
        raise PreconditionError("reduce_trace needs a connected graph with n >= 2")
    initial, cur, steps = g, g, []
    reason = NO_RULE
    while max_steps is None or len(steps) < max_steps:
        if cur.n == 2:
            reason = BASE_CASE_K2
            break
        if not descend_base_cases and is_tree(cur):
            reason = TERMINAL_TREE
            break
        if not descend_base_cases and is_cycle(cur):
            reason = TERMINAL_CYCLE
            break
        step = None
        for rule in RULES:
            found = applicable_steps(cur, rule)
            if found:
                step = found[0]
                break
        if step is None:
            reason = NO_RULE
            break
        assert step.hypotheses_met
        nxt = step.result
        assert step.f_after < step.f_before
        assert is_connected(nxt) and nxt.n >= 2
        if is_cactus(cur):
            assert is_cactus(nxt), f"{step.rule} broke the cactus property"
        steps.append(step)
        cur = nxt
    return ReductionTrace(initial, tuple(steps), cur, reason)
