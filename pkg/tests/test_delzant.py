from fractions import Fraction

import pytest

from fatspheres.delzant import (RationalPolytope, box, build_polytope, coincide_near_facet,
                                dual_weighted_sphere, is_delzant, polygon, standard_simplex)
from fatspheres.errors import Degenerate, FacetMismatch, NotSimple, Unbounded
from fatspheres.iso import isomorphic
from fatspheres.poset import cycle, octahedron
from fatspheres.weighted import SignClass, check_star_condition, value_count


def test_square():
    P = build_polytope([((1, 0), 1), ((-1, 0), 0), ((0, 1), 1), ((0, -1), 0)])
    assert len(P.vertices) == 4 and P.f_vector == (4, 4)


def test_standard_triangle():
    P = build_polytope([{"normal": [-1, 0], "offset": 0}, {"normal": [0, -1], "offset": 0},
                        {"normal": [1, 1], "offset": 1}])
    assert P.vertices == ((0, 0), (0, 1), (1, 0))
    assert P == standard_simplex(2)


def test_cube():
    C = box([0, 0, 0], [1, 1, 1])
    assert len(C.vertices) == 8 and C.f_vector == (8, 12, 6)


def test_delzant_examples():
    assert is_delzant(standard_simplex(2)).ok
    assert is_delzant(box([0, 0], [1, 1])).ok
    assert is_delzant(box([0, 0, 0], [1, 1, 1])).ok
    assert is_delzant(standard_simplex(3)).ok


def test_non_delzant_witness():
    P = RationalPolytope([((-1, 0), 0), ((0, -1), 0), ((2, 1), 2)])
    rep = is_delzant(P)
    assert not rep.ok
    assert rep.determinant == 2
    assert rep.vertex == (1, 0)
    assert {P.normals[i] for i in rep.facets} == {(0, -1), (2, 1)}


def test_dual_spheres():
    tri = dual_weighted_sphere(standard_simplex(2))
    assert isomorphic(tri.K, cycle(3)) is not None
    assert {tri.nu[v] for v in tri.K.vertices} == {SignClass((1, 0)), SignClass((0, 1)), SignClass((1, 1))}
    sq = dual_weighted_sphere(box([0, 0], [1, 1]))
    assert isomorphic(sq.K, cycle(4)) is not None and value_count(sq.nu) == 2
    cube = dual_weighted_sphere(box([0, 0, 0], [1, 1, 1]))
    assert isomorphic(cube.K, octahedron()) is not None
    assert value_count(cube.nu) == 3
    for D in (tri, sq, cube):
        assert check_star_condition(D.K, D.nu).ok


def test_errors():
    with pytest.raises(Unbounded):
        RationalPolytope([((1, 0), 1), ((0, 1), 1)])
    with pytest.raises(Unbounded):
        RationalPolytope([((1, 0), 1), ((-1, 0), 0)])
    with pytest.raises(Degenerate):
        RationalPolytope([((1, 0), 0), ((-1, 0), -1), ((0, 1), 1), ((0, -1), 0)])
    with pytest.raises(Degenerate):
        RationalPolytope([((1, 0), 1), ((-1, 0), 0), ((0, 1), 1), ((0, -1), 0), ((1, 1), 5)])
    with pytest.raises(NotSimple):  # square pyramid: apex on four facets
        RationalPolytope([((0, 0, -1), 0), ((1, 0, 1), 1), ((-1, 0, 1), 1), ((0, 1, 1), 1), ((0, -1, 1), 1)])


def test_normalization():
    P = RationalPolytope([((2, 0), 2), ((Fraction(-1, 2), 0), 0), ((0, 3), 3), ((0, -1), 0)])
    assert P == box([0, 0], [1, 1])


def test_json_roundtrip():
    P = polygon([(1, 0), (2, 0), (2, 1), (1, 2), (0, 2), (0, 1)])
    assert RationalPolytope.from_json(P.to_json()) == P


def test_facet_polytope():
    C = box([0, 0, 0], [2, 1, 1])
    i = C.find_facet((1, 0, 0), 2)
    F = C.facet_polytope(i)
    assert F.dim == 2 and len(F.vertices) == 4 and is_delzant(F).ok


def test_coincide_near_facet():
    T = standard_simplex(2)
    h = T.find_facet((1, 1), 1)
    assert coincide_near_facet(T, h, T, h)
    S = box([0, 0], [1, 1])
    for i in range(S.facet_count):
        assert coincide_near_facet(S, i, S, i)
    # same bottom edge [0,1]x{0}, different lines through its endpoints
    tri = polygon([(0, 0), (1, 0), (0, 1)])
    sq = box([0, 0], [1, 1])
    assert not coincide_near_facet(tri, tri.find_facet((0, -1), 0), sq, sq.find_facet((0, -1), 0))
    with pytest.raises(FacetMismatch):
        coincide_near_facet(tri, tri.find_facet((0, -1), 0), sq, sq.find_facet((1, 0), 1))
