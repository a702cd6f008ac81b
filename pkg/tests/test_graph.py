import itertools

import networkx as nx
import pytest
from hypothesis import given

from edgereg.graph import (
    Graph,
    GraphFormatError,
    bipartite_complement,
    complement,
    component_masks,
    contract_edge,
    delete_vertex,
    disjoint_union,
    encode_graph6,
    format_edge_list,
    g_sub_x,
    has_anticycle,
    induced_long_cycle,
    induced_matching_number,
    induced_subgraph,
    is_anticycle,
    is_bipartition,
    is_chordal,
    is_connected,
    matching_number,
    parse_edge_list,
    parse_graph6,
    relabel,
)
from tests.conftest import graphs


def test_graph6_known_strings():
    assert parse_graph6("A_").edges() == [(0, 1)]
    assert parse_graph6("A?").edges() == []
    assert parse_graph6("?").n == 0
    assert encode_graph6(Graph.complete(6)) == "E~~w"
    assert parse_graph6("EK?G").num_edges() == 3


def test_graph6_header_accepted():
    assert parse_graph6(">>graph6<<A_") == parse_graph6("A_")


@pytest.mark.parametrize("bad, where", [("A", "offset 1"), ("A_\x01", "offset 2"), ("", "empty")])
def test_graph6_errors_name_position(bad, where):
    with pytest.raises(GraphFormatError, match=where):
        parse_graph6(bad)


def test_graph6_padding_checked():
    # 'A' + byte with low padding bits set
    with pytest.raises(GraphFormatError):
        parse_graph6("A" + chr(63 + 0b000001))


@given(graphs(max_n=9))
def test_graph6_matches_networkx(g):
    ours = encode_graph6(g)
    theirs = nx.to_graph6_bytes(g.to_networkx(), header=False).decode().strip()
    assert ours == theirs
    assert parse_graph6(ours) == g


def test_graph6_large_n_roundtrip():
    g = Graph.cycle(70)
    s = encode_graph6(g)
    assert s[0] == "~"
    assert parse_graph6(s) == g
    assert s == nx.to_graph6_bytes(nx.cycle_graph(70), header=False).decode().strip()


def test_edge_list_roundtrip():
    g = Graph.cycle(5)
    assert parse_edge_list(format_edge_list(g)) == g
    with pytest.raises(GraphFormatError):
        parse_edge_list("3\n0 3\n")
    with pytest.raises(GraphFormatError):
        parse_edge_list("")


def test_constructors():
    assert Graph.complete(4).num_edges() == 6
    assert Graph.cycle(5).num_edges() == 5
    assert Graph.path(4).num_edges() == 3
    assert Graph.matching(3).n == 6
    k222 = Graph.complete_multipartite(2, 2, 2)
    assert k222.num_edges() == 12
    assert complement(Graph.matching(3)) == k222


def test_graph_immutable_and_hash():
    g = Graph.cycle(4)
    with pytest.raises(AttributeError):
        g.n = 5
    assert hash(g) == hash(Graph.cycle(4))
    assert Graph(2, [2, 1], ["p", "q"]) == Graph(2, [2, 1])


def test_bad_edges_rejected():
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 0)])
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 3)])


@given(graphs(max_n=8))
def test_complement_involution(g):
    assert complement(complement(g)) == g
    assert g.num_edges() + complement(g).num_edges() == g.n * (g.n - 1) // 2


def test_bipartite_complement():
    g = Graph.from_edges(4, [(0, 2)])
    part = 0b0011  # one side; the other is its complement
    assert is_bipartition(g, part) is None
    assert is_bipartition(Graph.from_edges(4, [(0, 1)]), part) == (0, 1)
    assert sorted(bipartite_complement(g, part).edges()) == [(0, 3), (1, 2), (1, 3)]
    with pytest.raises(ValueError):
        bipartite_complement(Graph.from_edges(4, [(0, 1)]), part)


def test_induced_subgraph_keeps_labels():
    g = Graph.cycle(5)
    h = induced_subgraph(g, [0, 1, 2])
    assert h.edges() == [(0, 1), (1, 2)]
    assert h.labels == ("x1", "x2", "x3")
    assert induced_subgraph(g, [1, 3]).labels == ("x2", "x4")


def test_g_sub_x():
    g = Graph.cycle(6)
    h = g_sub_x(g, 0)
    assert h.n == 3 and h.num_edges() == 2
    assert delete_vertex(g, 0) == Graph.path(5)


def test_contraction():
    g = Graph.cycle(4)
    h = contract_edge(g, (0, 1))
    assert h.n == 3
    assert h == Graph.complete(3)
    assert h.labels == ("x3", "x4", "x1x2")
    with pytest.raises(ValueError):
        contract_edge(g, (0, 2))


@given(graphs(min_n=2, max_n=7))
def test_contraction_matches_networkx(g):
    for u, v in g.edges()[:2]:
        ours = contract_edge(g, (u, v)).to_networkx()
        theirs = nx.contracted_nodes(g.to_networkx(), u, v, self_loops=False)
        assert nx.is_isomorphic(ours, theirs)


def test_disjoint_union_and_relabel():
    g = disjoint_union(Graph.path(2), Graph.cycle(3))
    assert g.n == 5 and g.num_edges() == 4
    assert len(component_masks(g)) == 2
    r = relabel(Graph.path(3), [2, 1, 0])
    assert r == Graph.path(3)


def test_connectivity_conventions():
    assert is_connected(Graph.empty(0))
    assert is_connected(Graph.empty(1))
    assert not is_connected(Graph.empty(2))


@given(graphs(max_n=9))
def test_chordal_matches_networkx(g):
    assert is_chordal(g) == nx.is_chordal(g.to_networkx())


@given(graphs(max_n=8))
def test_long_cycle_iff_not_chordal(g):
    cyc = induced_long_cycle(g, 4)
    assert (cyc is None) == is_chordal(g)
    if cyc is not None:
        sub = induced_subgraph(g, cyc)
        assert all(sub.degree(v) == 2 for v in range(sub.n)) and is_connected(sub)


def test_anticycle():
    assert has_anticycle(Graph.matching(2))
    assert is_anticycle(Graph.matching(2), 0b1111)
    assert not has_anticycle(Graph.complete(5))
    assert not is_anticycle(Graph.cycle(5), 0b111)


@given(graphs(max_n=9))
def test_matching_number_matches_networkx(g):
    assert matching_number(g) == len(nx.max_weight_matching(g.to_networkx(), maxcardinality=True))


def _brute_im(g):
    es = g.edges()
    for k in range(len(es), 0, -1):
        for combo in itertools.combinations(es, k):
            vs = [v for e in combo for v in e]
            if len(set(vs)) == 2 * k and induced_subgraph(g, vs).num_edges() == k:
                return k
    return 0


@given(graphs(max_n=7))
def test_induced_matching_brute_force(g):
    assert induced_matching_number(g) == _brute_im(g)


def test_matching_examples():
    assert induced_matching_number(Graph.matching(3)) == 3
    assert induced_matching_number(Graph.cycle(5)) == 1
    assert matching_number(Graph.cycle(5)) == 2
