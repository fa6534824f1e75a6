import math
from fractions import Fraction

import pytest

from fatspheres.errors import InvalidParams, NotACycle, NotADisc, PreconditionError
from fatspheres.metric import (EquilateralGeometry, PiForm, cycle_length, discrete_area_bound,
                               estimate_lipschitz, isoperimetric_constants, kappa_bounds,
                               lq_vertex_count, random_cycles, small_side_bound_check,
                               subdivided_tetrahedron, triangle_cycles)
from fatspheres.poset import bipyramid, octahedron, simplex_boundary
from fatspheres.surgery import cycle_from_vertices

THIRD = Fraction(1, 3)


def test_kappa_bounds_bracket_float():
    import mpmath
    lo, hi = kappa_bounds()
    with mpmath.workdps(80):
        k = 1 / (mpmath.sqrt(3) * mpmath.pi)
        assert mpmath.mpf(lo.numerator) / lo.denominator < k < mpmath.mpf(hi.numerator) / hi.denominator
    assert hi - lo < Fraction(1, 10 ** 35)


def test_default_constants():
    c = isoperimetric_constants(8, 3, THIRD)
    assert c.A.coef == 6912 and c.A.rat == 0
    assert abs(float(c.A) - 1270.26) < 0.01
    assert c.B == 12
    lo, hi = c.threshold.bounds()
    assert lo < hi and abs(float(c.threshold) - 15251.14) <= 0.01
    assert lo <= Fraction(1525114, 100) + Fraction(1, 100) and hi >= Fraction(1525114, 100) - Fraction(1, 100)


def test_small_constants():
    c = isoperimetric_constants(3, 1, 1)
    assert abs(float(c.A) - 36 / (math.sqrt(3) * math.pi)) < 1e-12
    assert abs(float(c.A) - 6.616) < 1e-3
    assert c.B == 2
    assert abs(float(c.threshold) - 16.2319) < 1e-3


@pytest.mark.parametrize("t", [Fraction(1, 2), 2, 7, Fraction(5, 3)])
def test_scaling_invariance(t):
    a = isoperimetric_constants(8, 3, THIRD)
    b = isoperimetric_constants(8, 3 * t, THIRD * t * t)
    assert a.threshold == b.threshold


@pytest.mark.parametrize("N", [3, 4, 8, 12])
def test_q_min_is_tight(N):
    c = isoperimetric_constants(N, 3, THIRD)
    q = c.q_min()
    assert c.exceeded_by(lq_vertex_count(q))
    assert q == 1 or not c.exceeded_by(lq_vertex_count(q - 1))
    assert isoperimetric_constants(8, 3, THIRD).q_min() == 88


def test_exact_comparison_never_floats():
    p = PiForm(Fraction(0), Fraction(1))
    lo, hi = kappa_bounds()
    assert p.compare(hi) == 1 and p.compare(lo) == -1


@pytest.mark.parametrize("args", [(2, 3, THIRD), (8, 0, THIRD), (8, 3, -1), (8.5, 3, THIRD)])
def test_invalid_params(args):
    with pytest.raises(InvalidParams):
        isoperimetric_constants(*args)


@pytest.mark.parametrize("q", [1, 2, 3, 4, 7])
def test_subdivided_tetrahedron_counts(q):
    T = subdivided_tetrahedron(q)
    assert T.sphere.f_vector == (2 * q * q + 2, 6 * q * q, 4 * q * q)
    assert T.sphere.euler_characteristic == 2


def test_q1_is_tetrahedron():
    from fatspheres.iso import isomorphic
    assert isomorphic(subdivided_tetrahedron(1).sphere, simplex_boundary()) is not None


def test_positions_have_unit_edges():
    T = subdivided_tetrahedron(3)
    S = T.sphere
    lens = {round(float(sum((T.position(a) - T.position(b)) ** 2) ** .5), 9)
            for a, b in (S.verts[e] for e in S.edges)}
    assert lens == {round(1 / 3, 9)}


def test_cycle_lengths():
    K = bipyramid(3)
    g = EquilateralGeometry(K)
    eq = cycle_from_vertices(K, [K.vertex_by_label(x) for x in (1, 2, 3)])
    assert cycle_length(g, eq) == 3
    O = octahedron()
    sq = cycle_from_vertices(O, [O.vertex_by_label(x) for x in (2, 3, 4, 5)])
    assert cycle_length(EquilateralGeometry(O), sq) == 4
    with pytest.raises(NotACycle):
        cycle_length(g, list(eq)[:2])


@pytest.mark.parametrize("q", [2, 3, 5])
def test_face_boundary_has_3q_vertices(q):
    T = subdivided_tetrahedron(q)
    S = T.sphere
    ridges = []
    for e in S.edges:
        a, b = (S.label(v) for v in S.verts[e])
        za = {i for i, x in enumerate(a) if x == 0}
        zb = {i for i, x in enumerate(b) if x == 0}
        common = za & zb
        if 0 in common and len(common) >= 2:
            ridges.append(e)
    assert cycle_length(EquilateralGeometry(S), ridges) == 3 * q


def _tris(K, containing):
    v = K.vertex_by_label(containing)
    return [t for t in K.by_rank[3] if v in K.verts[t]]


def test_discrete_area_examples():
    K = bipyramid(3)
    assert discrete_area_bound(EquilateralGeometry(K), _tris(K, "N")) == (4, 6)
    O = octahedron()
    assert discrete_area_bound(EquilateralGeometry(O), _tris(O, 1)) == (5, 8)


def test_discrete_area_errors():
    O = octahedron()
    g = EquilateralGeometry(O)
    with pytest.raises(PreconditionError):
        discrete_area_bound(g, _tris(O, 1)[:1])
    with pytest.raises(NotADisc):
        discrete_area_bound(g, list(O.by_rank[3]))


def test_discrete_area_on_L5_stars():
    T = subdivided_tetrahedron(5)
    S = T.sphere
    g = EquilateralGeometry(S)
    for v in S.vertices[:40]:
        V, bound = discrete_area_bound(g, [t for t in S.by_rank[3] if v in S.verts[t]])
        assert V <= bound


def test_lipschitz_q1_and_q8():
    a = estimate_lipschitz(subdivided_tetrahedron(1), 8)
    b = estimate_lipschitz(subdivided_tetrahedron(4), 8)
    assert a.c2 <= 3 + 1e-3 and a.c3 >= 1 / 3 - 1e-3
    assert a.c1 > 0.3
    for k in ("c1", "c2", "c3", "c4"):
        assert abs(getattr(a, k) - getattr(b, k)) <= 1e-6 * getattr(a, k)


def test_small_side_triangles_L6():
    T = subdivided_tetrahedron(6)
    c = isoperimetric_constants(3, 3, THIRD)
    rep = small_side_bound_check(T, c, triangle_cycles(T.sphere))
    assert rep.ok and rep.checked >= 4 * 36
    assert rep.worst_small_side <= 4


def test_corner_triangle_small_side():
    T = subdivided_tetrahedron(4)
    c = isoperimetric_constants(3, 3, THIRD)
    tri = T.sphere.by_rank[3][0]
    rep = small_side_bound_check(T, c, [frozenset(T.sphere.faces[tri])])
    assert rep.worst_small_side == 3


def test_small_side_random_L10():
    T = subdivided_tetrahedron(10)
    c = isoperimetric_constants(8, 3, THIRD)
    cyc = random_cycles(T.sphere, 8, 200, seed=3)
    rep = small_side_bound_check(T, c, cyc)
    assert rep.ok and rep.checked == len(cyc) > 50


def test_small_side_rejects_long_cycles():
    T = subdivided_tetrahedron(10)
    c = isoperimetric_constants(3, 3, THIRD)
    long = [C for C in random_cycles(T.sphere, 8, 50, seed=1) if len(C) > 3][:1]
    with pytest.raises(PreconditionError):
        small_side_bound_check(T, c, long)
