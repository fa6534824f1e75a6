import json
from pathlib import Path

import pytest

from fatspheres.errors import InconsistentGluing, UnknownSimplex, UnsupportedDimension
from fatspheres.iso import automorphism_count, isomorphic
from fatspheres.poset import (EMPTY, SimplicialPoset, build_poset, cycle, from_facets, is_admissible,
                              is_cell_sphere, is_simplicial_complex, link, octahedron, open_star,
                              simplex_boundary, upper_link)

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def tet():
    return simplex_boundary()


@pytest.fixture
def digon():
    return build_poset([("a", "b"), ("a", "b")])


def test_simplex_boundary_counts(tet):
    assert tet.f_vector == (4, 6, 4)
    assert tet.dim == 2
    assert is_simplicial_complex(tet)


def test_digon_has_two_edges_on_one_vertex_set(digon):
    assert digon.f_vector == (2, 2)
    assert not is_simplicial_complex(digon)
    assert is_cell_sphere(digon).verdict == "cell-sphere"


def test_lower_intervals_are_boolean(tet):
    for i in range(len(tet)):
        assert len(tet.closure([i])) == 2 ** tet.rank(i)


def test_link_of_vertex_is_triangle(tet):
    v = tet.vertices[0]
    L = link(tet, v)
    assert isomorphic(L, cycle(3)) is not None


def test_link_of_empty_is_whole(tet):
    assert isomorphic(link(tet, EMPTY), tet) is not None


def test_link_in_digon_collapses_to_one_vertex(digon):
    a = digon.vertex_by_label("a")
    L = link(digon, a)
    assert L.f_vector == (1,)
    assert [L.label(v) for v in L.vertices] == ["b"]


def test_open_star_of_vertex(tet):
    v = tet.vertex_by_label(1)
    st = open_star(tet, v)
    names = sorted(tuple(sorted(tet.label(u) for u in tet.verts[i])) for i in st.members)
    assert names == [(1,), (1, 2), (1, 2, 3), (1, 2, 4), (1, 3), (1, 3, 4), (1, 4)]


def test_open_star_of_empty_is_everything(tet):
    assert len(open_star(tet, EMPTY)) == len(tet)


def test_open_star_in_digon(digon):
    a = digon.vertex_by_label("a")
    assert len(open_star(digon, a)) == 3


def test_admissibility(tet, digon):
    assert all(is_admissible(tet, v) for v in tet.vertices)
    assert not is_admissible(digon, digon.vertex_by_label("a"))


def test_upper_link_is_topological_link(digon):
    a = digon.vertex_by_label("a")
    assert upper_link(digon, a).f_vector == (2,)


def test_unknown_simplex(tet):
    with pytest.raises(UnknownSimplex):
        link(tet, 999)


def test_sphere_checks(tet):
    rep = is_cell_sphere(tet)
    assert rep.is_sphere and rep.euler_characteristic == 2
    single = from_facets([(1, 2, 3)])
    assert not is_cell_sphere(single).is_sphere
    with pytest.raises(UnsupportedDimension):
        is_cell_sphere(simplex_boundary(5))


def test_isomorphism_examples(tet):
    relabeled = from_facets([("x", "y", "z"), ("x", "y", "w"), ("x", "z", "w"), ("y", "z", "w")])
    assert isomorphic(tet, relabeled) is not None
    assert isomorphic(tet, octahedron()) is None
    assert isomorphic(cycle(3), cycle(4)) is None
    assert automorphism_count(tet) == 24
    assert automorphism_count(octahedron()) == 48


def test_inconsistent_gluing_rejected():
    with pytest.raises(InconsistentGluing):
        build_poset([(1, 1, 2)])
    with pytest.raises(InconsistentGluing):
        SimplicialPoset.from_json({"simplices": [{"id": 0, "rank": 0, "faces": []},
                                                 {"id": 1, "rank": 2, "faces": [5, 6]}]})


@pytest.mark.parametrize("make", [simplex_boundary, octahedron, lambda: cycle(2), lambda: cycle(7)])
def test_json_roundtrip(make):
    S = make()
    S2 = SimplicialPoset.from_json(json.loads(json.dumps(S.to_json())))
    assert S2.f_vector == S.f_vector
    assert isomorphic(S, S2) is not None
    assert S2.to_json() == S.to_json()


def test_golden_octahedron_json():
    doc = json.loads((GOLDEN / "octahedron_poset.json").read_text())
    assert octahedron().to_json() == doc
