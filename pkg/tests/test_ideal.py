import pytest
from hypothesis import given

from edgereg.graph import Graph, complement
from edgereg.ideal import (
    SimplicialComplex,
    SquarefreeMonomialIdeal,
    add_variable,
    clique_complex,
    colon_by_variable,
    disjoint_sum,
    edge_ideal,
    euler_characteristic,
    ideal_of_complex,
    ideal_sum,
    independence_complex,
    intersect,
    join,
    restrict,
    stanley_reisner_complex,
    x_partition,
)
from tests.conftest import graphs


def test_ideal_minimal_generators():
    i = SquarefreeMonomialIdeal(3, [(0, 1), (0, 1, 2), (2,)])
    assert i.supports() == [(2,), (0, 1)]
    assert i.contains_monomial(0b111)
    assert not i.contains_monomial(0b011 & ~0b010)
    assert SquarefreeMonomialIdeal(3).is_zero()


def test_unit_ideal_rejected():
    with pytest.raises(ValueError):
        SquarefreeMonomialIdeal(2, [0])
    with pytest.raises(ValueError):
        SquarefreeMonomialIdeal(2, [(2,)])


def test_text_roundtrip():
    i = edge_ideal(Graph.cycle(5))
    assert SquarefreeMonomialIdeal.from_text(i.to_text()) == i
    d = clique_complex(Graph.cycle(4))
    assert SimplicialComplex.from_text(d.to_text()) == d


def test_void_and_empty_complexes():
    void, empty = SimplicialComplex(2), SimplicialComplex(2, [0])
    assert void.is_void and void.dimension == -2
    assert not empty.is_void and empty.dimension == -1
    assert euler_characteristic(empty) == (0, -1)
    with pytest.raises(ValueError):
        ideal_of_complex(void)


def test_faces_and_f_vector():
    d = SimplicialComplex(4, [(0, 1, 2), (2, 3)])
    assert d.f_vector() == [1, 4, 4, 1]
    assert d.is_face(0b0101) and not d.is_face(0b1001)


def test_stanley_reisner_examples():
    # I(C4): independent sets of C4 are the two diagonals
    d = stanley_reisner_complex(edge_ideal(Graph.cycle(4)))
    assert sorted(d.facets) == [0b0101, 0b1010]
    assert stanley_reisner_complex(SquarefreeMonomialIdeal(3)).facets == (0b111,)


@given(graphs(max_n=7))
def test_sr_roundtrip(g):
    i = edge_ideal(g)
    assert ideal_of_complex(stanley_reisner_complex(i)) == i


@given(graphs(max_n=7))
def test_independence_is_clique_of_complement(g):
    assert independence_complex(g) == stanley_reisner_complex(edge_ideal(g))
    assert independence_complex(g) == clique_complex(complement(g))


def test_restrict_and_join():
    d = clique_complex(Graph.complete(3))
    assert restrict(d, 0b011).facets == (0b011,)
    j = join(SimplicialComplex(1, [1]), SimplicialComplex(1, [1]))
    assert j.facets == (0b11,)


def test_colon_add_intersect_sum():
    i = edge_ideal(Graph.path(3))
    assert colon_by_variable(i, 1).supports() == [(0,), (2,)]
    with pytest.raises(ValueError):
        colon_by_variable(add_variable(i, 0), 0)
    a = SquarefreeMonomialIdeal(3, [(0,)])
    b = SquarefreeMonomialIdeal(3, [(1,)])
    assert intersect(a, b).supports() == [(0, 1)]
    assert ideal_sum(a, b).supports() == [(0,), (1,)]
    ip, ipp = x_partition(edge_ideal(Graph.cycle(4)), 0)
    assert ip.supports() == [(0, 1), (0, 3)] and ipp.supports() == [(1, 2), (2, 3)]
    s = disjoint_sum(edge_ideal(Graph.path(2)), edge_ideal(Graph.path(2)))
    assert s == edge_ideal(Graph.matching(2))
