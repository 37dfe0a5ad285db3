import pytest
from hypothesis import given, strategies as st

from twodom.errors import GraphError, InvalidSelectionError, PreconditionError
from twodom.family import FamilyParams, generate
from twodom.graph import (
    Graph,
    attach,
    bfs_distances,
    canonical_order,
    complete_graph,
    connected_components,
    cycle_graph,
    degree_sequence,
    empty_graph,
    is_bipartite,
    is_connected,
    is_cycle,
    is_tree,
    path_graph,
    petersen_graph,
    potential_f,
    star_graph,
)

from .strategies import connected_graphs

K2 = Graph.from_edges([(0, 1)])


def test_degree_sequences():
    assert degree_sequence(K2) == [1, 1]
    assert degree_sequence(cycle_graph(4)) == [2, 2, 2, 2]


def test_family_degree_sequence():
    # 12 leaves, 12 supports + 4 cycle vertices at the hub (degree 3), hub degree 4
    seq = degree_sequence(generate(FamilyParams.ones(4)))
    assert seq == [1] * 12 + [3] * 16 + [4]


def test_potential():
    assert potential_f(K2) == 7
    assert potential_f(path_graph(3)) == 11
    assert potential_f(cycle_graph(4)) == 16


def test_constructor_rejects_bad_edges():
    with pytest.raises(GraphError):
        Graph([0, 1], [(0, 0)])
    with pytest.raises(GraphError):
        Graph([0, 1], [(0, 1), (1, 0)])
    with pytest.raises(GraphError):
        Graph([0], [(0, -1)])
    # endpoints not listed among the vertices are added
    assert Graph([0, 1], [(0, 2)]).vertices == (0, 1, 2)


def test_delete_vertices_keeps_ids():
    assert K2.delete_vertices([1]) == Graph([0], [])
    p3 = path_graph(3).delete_vertices([1])
    assert p3.vertices == (0, 2) and p3.m == 0
    star = star_graph(3).delete_vertices([0])
    assert star.vertices == (1, 2, 3) and star.m == 0
    with pytest.raises(InvalidSelectionError):
        K2.delete_vertices([5])


def test_edge_edits():
    c4 = cycle_graph(4)
    p4 = c4.delete_edges([(3, 0)])
    assert is_tree(p4) and p4.max_degree == 2
    assert p4.add_edges([(0, 3)]) == c4
    assert c4.add_edges([(0, 2)]).m == 5
    with pytest.raises(PreconditionError):
        c4.add_edges([(0, 1)])
    with pytest.raises(PreconditionError):
        c4.delete_edges([(0, 2)])
    # value semantics: original untouched
    assert c4.m == 4


def test_connectivity():
    assert is_connected(K2)
    assert not is_connected(Graph.from_edges([(0, 1), (2, 3)]))
    assert is_connected(cycle_graph(4))
    assert is_connected(empty_graph(0))
    assert not is_connected(empty_graph(2))
    assert connected_components(Graph.from_edges([(0, 1), (2, 3)], n=5)) == [[0, 1], [2, 3], [4]]


def test_shape_predicates():
    assert is_tree(path_graph(5)) and not is_tree(cycle_graph(5))
    assert is_cycle(cycle_graph(3)) and not is_cycle(path_graph(3))
    assert is_bipartite(cycle_graph(4)) and not is_bipartite(cycle_graph(3))
    assert not is_bipartite(petersen_graph())
    assert complete_graph(4).m == 6
    assert petersen_graph().min_degree == petersen_graph().max_degree == 3


def test_canonical_order_ties_by_id():
    g = Graph.from_edges([(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)])
    assert canonical_order(g) == [4, 1, 2, 3, 0]


def test_bfs_distances():
    assert bfs_distances(path_graph(4), [0]) == {0: 0, 1: 1, 2: 2, 3: 3}
    assert bfs_distances(cycle_graph(6), [0, 3]) == {0: 0, 1: 1, 2: 1, 3: 0, 4: 1, 5: 1}


def test_attach_relabels_above_max():
    g, mp = attach(cycle_graph(4), path_graph(3), at=2, h_root=0)
    assert mp == {0: 2, 1: 4, 2: 5}
    assert g.edges() == [(0, 1), (0, 3), (1, 2), (2, 3), (2, 4), (4, 5)]


def test_compact_and_relabel():
    g = Graph.from_edges([(3, 7), (7, 9)])
    assert g.compact() == path_graph(3)
    assert g.relabel({3: 0, 7: 1, 9: 2}) == path_graph(3)


@given(connected_graphs())
def test_handshake_and_validation(g):
    g.validate()
    assert sum(degree_sequence(g)) == 2 * g.m


@given(connected_graphs(n_min=2), st.data())
def test_potential_drops_under_vertex_deletion(g, data):
    v = data.draw(st.sampled_from(g.vertices))
    h = g.delete_vertices([v])
    h.validate()
    assert potential_f(h) < potential_f(g)


@given(connected_graphs(n_min=2))
def test_potential_at_least_seven(g):
    assert potential_f(g) >= 7


def test_graph_is_hashable_value():
    assert len({cycle_graph(4), cycle_graph(4), path_graph(4)}) == 2
