import json

import pytest

from fatspheres.corpus import (TREE_TEMPLATES, four_hexagon_cycle, looped_square, single_square,
                               single_triangle, two_squares, two_triangles)
from fatspheres.delzant import dual_weighted_sphere, standard_simplex
from fatspheres.errors import NotATree, NotCooriented
from fatspheres.iso import isomorphic
from fatspheres.poset import cycle
from fatspheres.template import (OrigamiTemplate, TemplateEdge, facet_classes, graph_is_tree,
                                 induced_template, is_cooriented, is_orientable,
                                 orbit_identity_holds, orbit_poset_as_connected_sum,
                                 orbit_poset_glued, render_svg, validate_template)


def test_two_triangles_valid_tree():
    t = two_triangles()
    assert validate_template(t).valid
    assert is_orientable(t) and is_cooriented(t) and graph_is_tree(t)


def test_four_hexagon_cycle_valid_cycle():
    t = four_hexagon_cycle()
    assert validate_template(t).valid
    assert not graph_is_tree(t)
    assert is_orientable(t)
    with pytest.raises(NotATree):
        orbit_poset_glued(t)


def test_adjacent_fold_facets_fail_condition_two():
    T = standard_simplex(2)
    h, leg = T.find_facet((1, 1), 1), T.find_facet((-1, 0), 0)
    t = OrigamiTemplate({0: T, 1: T, 2: T}, [TemplateEdge(0, 1, h, h), TemplateEdge(0, 2, leg, leg)])
    rep = validate_template(t)
    assert not rep.valid
    assert any(not c["ok"] for c in rep.to_json()["condition2"])


def test_condition_one_failure():
    from fatspheres.delzant import box, polygon
    tri = polygon([(0, 0), (1, 0), (0, 1)])
    sq = box([0, 0], [1, 1])
    t = OrigamiTemplate({0: tri, 1: sq}, [TemplateEdge(0, 1, tri.find_facet((0, -1), 0), sq.find_facet((0, -1), 0))])
    assert not validate_template(t).valid


def test_loops():
    t = looped_square()
    assert not is_cooriented(t) and not is_orientable(t)
    with pytest.raises(NotCooriented):
        orbit_poset_glued(t)


def test_single_node_tree():
    assert graph_is_tree(single_square())


def test_two_triangles_orbit_poset_is_digon():
    t = two_triangles()
    g = orbit_poset_glued(t)
    assert isomorphic(g.S_Q, cycle(2)) is not None
    assert len(facet_classes(t)) == 2
    s = orbit_poset_as_connected_sum(t)
    assert isomorphic(s.S_Q, cycle(2)) is not None
    assert orbit_identity_holds(t)


def test_single_node_orbit_poset_is_dual():
    for t in (single_square(), single_triangle()):
        g = orbit_poset_glued(t)
        D = dual_weighted_sphere(t.nodes[0])
        assert isomorphic(g.S_Q, D.K, {v: g.nu[v] for v in g.S_Q.vertices},
                          {v: D.nu[v] for v in D.K.vertices}) is not None
        assert isomorphic(orbit_poset_as_connected_sum(t).S_Q, D.K) is not None


def test_two_square_path():
    t = two_squares()
    g = orbit_poset_glued(t)
    assert isomorphic(g.S_Q, cycle(4)) is not None
    fcs = facet_classes(t)
    assert len(fcs) == 4
    assert sorted(len(c.members) for c in fcs) == [1, 1, 2, 2]
    assert orbit_identity_holds(t)


def test_induced_templates():
    t = two_triangles()
    for fc in facet_classes(t):
        it = induced_template(t, fc)
        assert it.dim == 1 and len(it.nodes) == 2 and len(it.edges) == 1
    t = two_squares()
    for fc in facet_classes(t):
        it = induced_template(t, fc)
        assert len(it.nodes) == len(fc.members)
        if len(fc.members) == 2:
            assert len(it.edges) == 1 and validate_template(it).valid
    t = single_square()
    for fc in facet_classes(t):
        it = induced_template(t, fc)
        assert len(it.nodes) == 1 and it.dim == 1


@pytest.mark.parametrize("name", sorted(TREE_TEMPLATES))
def test_corpus_identity(name):
    t = TREE_TEMPLATES[name]()
    assert validate_template(t).valid
    assert graph_is_tree(t)
    assert orbit_identity_holds(t)
    assert orbit_poset_glued(t).S_Q.euler_characteristic == (2 if t.dim != 2 else 0)


def test_json_roundtrip(tmp_path):
    t = four_hexagon_cycle()
    p = tmp_path / "t.json"
    p.write_text(json.dumps(t.to_json()))
    t2 = OrigamiTemplate.load(p)
    assert t2.to_json() == t.to_json()


def test_svg():
    svg = render_svg(four_hexagon_cycle())
    assert svg.startswith("<svg") and svg.count("<polygon") == 4


def _intersection_components(t, F1, F2):
    """Connected components of F1 ∩ F2 in Q, computed on points.

    Q-vertices are (node, vertex) pairs identified across fold facets that
    contain the vertex; Q-edges join identified endpoints.
    """
    from fatspheres.template import _UF
    uf = _UF()
    for n, P in t.nodes.items():
        for p in P.vertices:
            uf.add((n, p))
    for e in t.edges:
        Pu, Pv = t.nodes[e.u], t.nodes[e.v]
        for p in Pu.facet_point_set(e.facet_u) & Pv.facet_point_set(e.facet_v):
            uf.union((e.u, p), (e.v, p))

    def in_class(F, n, p):
        P = t.nodes[n]
        k = P.vertices.index(p)
        return any((n, i) in F.members for i in P.vertex_facets[k])

    def cls_in(F):
        out = set()
        for n, P in t.nodes.items():
            for p in P.vertices:
                if in_class(F, n, p):
                    out.add(uf.find((n, p)))
        return out

    common = cls_in(F1) & cls_in(F2)
    comp = _UF()
    for x in common:
        comp.add(x)
    for n, P in t.nodes.items():
        if P.dim < 3:
            continue
        for a in range(len(P.vertices)):
            for b in range(a + 1, len(P.vertices)):
                shared = set(P.vertex_facets[a]) & set(P.vertex_facets[b])
                if len(shared) != P.dim - 1:
                    continue
                on1 = any((n, i) in F1.members for i in shared)
                on2 = any((n, i) in F2.members for i in shared)
                ra, rb = uf.find((n, P.vertices[a])), uf.find((n, P.vertices[b]))
                if on1 and on2 and ra in common and rb in common:
                    comp.union(ra, rb)
    return len({comp.find(x) for x in common})


@pytest.mark.parametrize("name", sorted(TREE_TEMPLATES))
def test_face_definitions_agree(name):
    """Codimension-two faces by gluing match components of facet intersections."""
    from fatspheres.template import _glue_faces
    t = TREE_TEMPLATES[name]()
    fcs = facet_classes(t)
    owner = {m: k for k, fc in enumerate(fcs) for m in fc.members}
    uf, faces = _glue_faces(t)
    glued: dict = {}
    for n in t.nodes:
        for f in faces[n]:
            if len(f) == 2:
                pair = frozenset(owner[(n, i)] for i in f)
                glued.setdefault(pair, set()).add(uf.find((n, f)))
    for a in range(len(fcs)):
        for b in range(a + 1, len(fcs)):
            expect = len(glued.get(frozenset((a, b)), ()))
            assert _intersection_components(t, fcs[a], fcs[b]) == expect, (a, b)
