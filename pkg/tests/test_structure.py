import pytest
from hypothesis import given

from twodom.errors import PreconditionError
from twodom.family import FamilyParams, generate
from twodom.graph import Graph, attach, complete_graph, cycle_graph, path_graph, star_graph
from twodom.structure import (
    bridges,
    cycle_reports,
    decompose_cactus,
    every_edge_on_cycle,
    exit_vertices,
    feature_holds,
    find_induced_p5_deg2,
    find_pendant_p4,
    find_strong_supports,
    find_subdivided_stars,
    hanging_trees,
    has_sun,
    is_cactus,
    outer_cycles,
    theorem5_hypotheses,
    all_hanging_trees,
)

from .strategies import cacti

FAMILY = generate(FamilyParams.ones(4))
TWO_SQUARES = Graph.from_edges([(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4), (0, 4)])
THREE_SQUARES = Graph.from_edges([
    (0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4),
    (8, 9), (9, 10), (10, 11), (11, 8), (2, 4), (6, 8),
])


def with_leaves(g, at):
    for v in at:
        g = attach(g, path_graph(2), v)[0]
    return g


def test_cactus_recognition():
    assert is_cactus(cycle_graph(4))
    assert len(decompose_cactus(cycle_graph(4)).cycle_blocks) == 1
    assert not is_cactus(complete_graph(4))


def test_family_decomposition():
    d = decompose_cactus(FAMILY)
    assert d.cycle_blocks == [[0, 1, 2, 3], [4, 5, 6, 7], [8, 9, 10, 11], [12, 13, 14, 15]]
    assert len(d.bridges) == 16
    assert len(d.blocks) == 20


def test_exit_vertices():
    assert exit_vertices(cycle_graph(5), [0, 1, 2, 3, 4]) == frozenset()
    assert exit_vertices(TWO_SQUARES, [0, 1, 2, 3]) == {0}
    for cyc in decompose_cactus(FAMILY).cycle_blocks:
        # the smallest id of each cycle is the one joined to the hub (16)
        assert exit_vertices(FAMILY, cyc) == {cyc[0]}
        assert FAMILY.has_edge(cyc[0], 16)


def test_outer_cycles():
    assert [r.is_outer for r in cycle_reports(cycle_graph(6))] == [True]
    reports = cycle_reports(THREE_SQUARES)
    assert [r.is_outer for r in reports] == [True, False, True]
    assert sorted(reports[1].exit_vertices) == [4, 6]
    assert len(outer_cycles(FAMILY)) == 4
    assert outer_cycles(path_graph(4)) == []


def test_suns():
    c5 = with_leaves(cycle_graph(5), [1, 2, 3, 4])
    two_suns = Graph.from_edges(c5.edges() + [(0, 100)] + [(a + 100, b + 100) for a, b in c5.edges()])
    reports = cycle_reports(two_suns)
    assert [r.has_sun for r in reports] == [True, True]
    # unicyclic C4 with a leaf everywhere: a sun under the exempt-vertex convention
    assert cycle_reports(with_leaves(cycle_graph(4), range(4)))[0].has_sun
    assert all(r.has_sun for r in cycle_reports(FAMILY))


def test_sun_broken_by_second_leaf():
    g = with_leaves(cycle_graph(5), [1, 2, 3, 4, 4])
    g = Graph.from_edges(g.edges() + [(0, 100)] + [(a + 100, b + 100) for a, b in cycle_graph(3).edges()])
    assert not cycle_reports(g)[0].has_sun


def test_has_sun_requires_outer():
    middle = cycle_reports(THREE_SQUARES)[1]
    with pytest.raises(PreconditionError):
        has_sun(THREE_SQUARES, middle)


def test_theorem5_hypotheses():
    assert theorem5_hypotheses(cycle_graph(6)).all
    fam = theorem5_hypotheses(FAMILY)
    assert fam.cactus and fam.bipartite and not fam.no_sun_at_outer and not fam.all
    two = theorem5_hypotheses(TWO_SQUARES)
    assert two.no_sun_at_outer and not two.outer_4cycle_exit_degree_ok
    k4 = theorem5_hypotheses(complete_graph(4)).as_dict()
    assert k4["cactus"] is False and k4["all"] is False


def test_strong_supports():
    (f,) = find_strong_supports(star_graph(3))
    assert f.anchors["support"] == 0 and f.params["leaves"] == 3
    assert find_strong_supports(path_graph(4)) == []
    assert find_strong_supports(FAMILY) == []


def test_pendant_p4():
    assert len(find_pendant_p4(path_graph(5))) == 2
    assert find_pendant_p4(cycle_graph(4)) == []
    tail = Graph.from_edges([(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5)])
    (f,) = find_pendant_p4(tail)
    assert f.anchors == {"u1": 5, "u2": 4, "u3": 3, "v": 2}


def test_induced_p5():
    assert len(find_induced_p5_deg2(cycle_graph(6))) == 6
    assert find_induced_p5_deg2(cycle_graph(5)) == []
    assert len(find_induced_p5_deg2(path_graph(6))) == 2


def test_subdivided_stars():
    spider = Graph.from_edges([(0, 1), (1, 2), (0, 3), (3, 4)])
    (f,) = find_subdivided_stars(spider)
    assert (f.params["s"], f.params["t"]) == (2, 0)
    assert find_subdivided_stars(star_graph(4)) == []
    star = Graph.from_edges([(0, 1), (1, 2), (0, 3), (3, 4), (0, 5)])
    (f,) = find_subdivided_stars(attach(cycle_graph(6), star, 0)[0])
    assert (f.params["s"], f.params["t"], f.params["host_degree"]) == (2, 1, 2)
    assert f.params["on_cycle"]


def test_hanging_trees():
    (t,) = hanging_trees(with_leaves(cycle_graph(4), [0]), [0, 1, 2, 3])
    assert t.params["height"] == 1
    g = attach(cycle_graph(4), path_graph(4), 0)[0]
    (t,) = hanging_trees(g, [0, 1, 2, 3])
    assert t.params["height"] == 3 and t.params["radius"] == 2
    assert hanging_trees(cycle_graph(4), [0, 1, 2, 3]) == []


def test_every_edge_on_cycle():
    assert every_edge_on_cycle(cycle_graph(4))
    assert not every_edge_on_cycle(TWO_SQUARES)
    assert bridges(TWO_SQUARES) == [(0, 4)]


@given(cacti())
def test_decomposition_partitions_edges(g):
    d = decompose_cactus(g)
    assert len(d.bridges) + sum(len(c) for c in d.cycle_blocks) == g.m
    assert all(len(c) >= 3 for c in d.cycle_blocks)


@given(cacti())
def test_exit_free_iff_unicyclic(g):
    reports = cycle_reports(g)
    for r in reports:
        assert (not r.exit_vertices) == (len(reports) == 1)
        assert r.is_outer == (len(r.exit_vertices) <= 1)
    if reports:
        assert any(r.is_outer for r in reports)


@given(cacti())
def test_features_revalidate(g):
    feats = (find_strong_supports(g) + find_pendant_p4(g) + find_induced_p5_deg2(g)
             + find_subdivided_stars(g) + all_hanging_trees(g))
    for f in feats:
        assert feature_holds(g, f)


@given(cacti())
def test_sun_needs_one_leaf_per_vertex(g):
    from twodom.structure import leaf_neighbors

    for r in outer_cycles(g):
        odd = [v for v in r.cycle if v not in r.exit_vertices and len(leaf_neighbors(g, v)) != 1]
        if r.exit_vertices and odd:
            assert not r.has_sun
        if len(odd) >= 2:
            assert not r.has_sun


@pytest.mark.parametrize("ks", [(1, 1, 1, 1), (1, 3, 1, 5), (2, 1, 1, 1, 1)])
def test_family_fails_theorem5(ks):
    hyp = theorem5_hypotheses(generate(FamilyParams(len(ks), ks)))
    assert hyp.no_sun_at_outer is False
    assert hyp.bipartite == all(k % 2 == 1 for k in ks)
