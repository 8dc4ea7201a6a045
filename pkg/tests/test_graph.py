import random

import networkx as nx
import pytest

from grassmann_rsets import make_field
from grassmann_rsets.graph import Graph, automorphism_group_order, find_automorphism, grassmann_graph, parse_edge_list
from grassmann_rsets.maps import collineation_and_duality_subgroup_order
from grassmann_rsets.subspace import BudgetExceeded, distance


def vf2_count(graph: Graph) -> int:
    G = nx.Graph(graph.edges())
    G.add_nodes_from(range(len(graph)))
    return sum(1 for _ in nx.algorithms.isomorphism.GraphMatcher(G, G).isomorphisms_iter())


def from_nx(G) -> Graph:
    G = nx.convert_node_labels_to_integers(G)
    return Graph.from_edges(G.number_of_nodes(), G.edges())


def test_path_on_three_vertices():
    assert automorphism_group_order(Graph.from_edges(3, [(0, 1), (1, 2)])) == 2


@pytest.mark.parametrize(
    "G",
    [nx.petersen_graph(), nx.hypercube_graph(3), nx.cycle_graph(9), nx.complete_bipartite_graph(3, 4), nx.path_graph(6)],
    ids=["petersen", "cube", "c9", "k34", "p6"],
)
def test_named_graphs_match_vf2(G):
    g = from_nx(G)
    assert automorphism_group_order(g) == vf2_count(g)


def test_random_graphs_match_vf2():
    rng = random.Random(3)
    for _ in range(15):
        G = nx.gnp_random_graph(9, rng.choice([0.2, 0.4, 0.6]), seed=rng.randrange(10**6))
        g = from_nx(G)
        assert automorphism_group_order(g) == vf2_count(g)


def test_lines_of_the_fano_plane_form_a_complete_graph(gf2):
    g = grassmann_graph(3, 1, gf2)
    assert len(g) == 7 and all(d == 6 for d in g.degrees())
    assert automorphism_group_order(g) == 5040


def test_grassmann_graph_is_regular_with_brute_force_degree(gf2):
    g = grassmann_graph(4, 2, gf2)
    S = g.index[0]
    expected = sum(1 for T in g.index if distance(S, T) == 1)
    assert set(g.degrees()) == {expected}


def test_g2_f2_4_automorphisms(gf2):
    g = grassmann_graph(4, 2, gf2)
    assert automorphism_group_order(g) == 40320 == collineation_and_duality_subgroup_order(4, 2, gf2)


def test_collineations_of_the_fano_plane(gf2):
    assert collineation_and_duality_subgroup_order(3, 1, gf2) == 168


def test_found_automorphisms_are_genuine(gf2):
    g = grassmann_graph(4, 2, gf2)
    perm = find_automorphism(g, [0, 1], [5, 9])
    if perm is not None:
        assert perm[0] == 5 and perm[1] == 9
        assert all({perm[w] for w in g.adj[v]} == g.adj[perm[v]] for v in range(len(g)))


def test_edge_list_round_trip(gf2):
    g = grassmann_graph(3, 1, gf2)
    h = parse_edge_list("# comment\n" + g.edge_list_text())
    assert h.adj == g.adj


def test_vertex_budget():
    with pytest.raises(BudgetExceeded):
        automorphism_group_order(Graph.from_edges(300, []), max_vertices=256)
