import warnings

import pytest
from hypothesis import given

from edgereg.graph import Graph, complement, is_connected
from edgereg.surfaces import (
    PureTwoComplex,
    SearchCapExceeded,
    SearchCaps,
    catalog,
    check_closed_surface,
    clique_triangles,
    find_induced_surface,
    find_surface_subcomplex,
    flag_surface_vertex_sets,
    is_closed_surface,
    is_induced_in,
    orientability,
    surface_label,
    theorem_host,
    vertex_link,
)
from tests.conftest import graphs


@pytest.mark.parametrize("name, orientable, euler, label", [
    ("tetrahedron", True, 2, "sphere"),
    ("octahedron", True, 2, "sphere"),
    ("csaszar-torus", True, 0, "orientable-genus-1"),
    ("rp2-6", False, 1, "nonorientable-genus-1"),
])
def test_catalog(name, orientable, euler, label):
    cert = is_closed_surface(catalog()[name])
    assert cert is not None
    assert (cert.orientable, cert.euler, cert.label) == (orientable, euler, label)


def test_csaszar_skeleton_is_k7():
    assert catalog()["csaszar-torus"].skeleton() == Graph.complete(7)


def test_surface_label():
    assert surface_label(True, -2) == (2, "orientable-genus-2")
    assert surface_label(False, 0) == (2, "nonorientable-genus-2")


def test_rejections():
    tet = catalog()["tetrahedron"].triangles
    assert check_closed_surface(PureTwoComplex(4, tet[:3])) == (None, "bad-edge")
    assert check_closed_surface(PureTwoComplex(4, [])) == (None, "empty")
    two = list(tet) + [tuple(v + 4 for v in t) for t in tet]
    assert check_closed_surface(PureTwoComplex(8, two)) == (None, "disconnected")
    # two tetrahedra glued at vertex 0
    pinch = list(tet) + [tuple(0 if v == 4 else v for v in (4, 5, 6)), (0, 5, 7), (0, 6, 7), (5, 6, 7)]
    assert check_closed_surface(PureTwoComplex(8, pinch)) == (None, "pinched-vertex")


def test_orientability_obstruction():
    ok, cycle = orientability(catalog()["rp2-6"])
    assert not ok and len(cycle) >= 2
    ok, sign = orientability(catalog()["octahedron"])
    assert ok and set(sign.values()) <= {1, -1}


def test_vertex_link():
    oct_ = catalog()["octahedron"]
    link = vertex_link(oct_, 0)
    assert link.n == 4 and all(link.degree(v) == 2 for v in range(4)) and is_connected(link)
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        assert vertex_link(PureTwoComplex(5, [(0, 1, 2)]), 4).n == 0
        assert w


def test_triangle_validation():
    with pytest.raises(ValueError):
        PureTwoComplex(3, [(0, 0, 1)])
    with pytest.raises(ValueError):
        PureTwoComplex(3, [(0, 1, 3)])


def test_search_octahedron_in_3k2_complement():
    cert = find_surface_subcomplex(theorem_host(Graph.matching(3)), True)
    assert cert is not None and cert.label == "sphere"
    cert2 = find_surface_subcomplex(theorem_host(Graph.matching(3)), True, fast_path=False)
    assert cert2 is not None and cert2.label == "sphere"


def test_search_nothing_in_c4_complement():
    assert find_surface_subcomplex(theorem_host(Graph.matching(2)), False) is None


def test_search_finds_torus_in_k7():
    t = clique_triangles(Graph.complete(7))
    cert = find_surface_subcomplex(t, True)
    assert cert is not None and cert.orientable


def test_search_rp2_when_only_rp2_present():
    cert = find_surface_subcomplex(catalog()["rp2-6"], False)
    assert cert is not None and cert.label == "nonorientable-genus-1"
    assert find_surface_subcomplex(catalog()["rp2-6"], True) is None


def test_search_exclude_tetrahedra():
    cert = find_surface_subcomplex(clique_triangles(Graph.complete(5)), True, exclude_tetrahedra=True)
    assert cert is not None and len(cert.triangles.vertices()) == 5


def test_search_caps():
    with pytest.raises(SearchCapExceeded):
        find_surface_subcomplex(clique_triangles(Graph.complete(7)), False,
                                SearchCaps(max_nodes=2), fast_path=False)


def test_induced_surfaces():
    k222 = complement(Graph.matching(3))
    assert [w for w, _ in flag_surface_vertex_sets(k222)] == [0b111111]
    assert find_induced_surface(Graph.complete(6), False) is None
    cert = find_surface_subcomplex(clique_triangles(Graph.complete(4)), False)
    assert not is_induced_in(cert, Graph.complete(5))


@given(graphs(max_n=7))
def test_induced_surface_is_found_by_search(g):
    host = complement(g)
    cert = find_induced_surface(host, False)
    if cert is not None:
        assert is_induced_in(cert, host)
        assert find_surface_subcomplex(theorem_host(g), False) is not None
