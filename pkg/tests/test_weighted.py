import random

import pytest

from fatspheres.coloring import four_color
from fatspheres.errors import DimensionMismatch
from fatspheres.metric import subdivided_tetrahedron
from fatspheres.poset import cycle, is_cell_sphere, octahedron, simplex_boundary
from fatspheres.weighted import (COLOR_VECTORS, CharacteristicFunction, SignClass, WeightedSphere,
                                 check_star_condition, coloring_to_characteristic, suspend, value_count)

from _gen import random_sphere


def _lam(S, vecs):
    return CharacteristicFunction(len(vecs[0]), dict(zip(S.vertices, vecs)))


def test_sign_classes():
    assert SignClass((1, -2)) == SignClass((-1, 2))
    assert SignClass((1, 0)) != SignClass((0, 1))


def test_star_condition_four_vectors():
    S = simplex_boundary()
    assert check_star_condition(S, _lam(S, list(COLOR_VECTORS.values()))).ok


def test_star_condition_on_triangle_n2():
    S = cycle(3)
    assert check_star_condition(S, _lam(S, [(1, 0), (0, 1), (1, 1)])).ok


def test_star_condition_witness():
    S = simplex_boundary()
    rep = check_star_condition(S, _lam(S, [(1, 0, 0), (0, 1, 0), (2, 1, 0), (0, 0, 1)]))
    assert not rep.ok
    assert rep.determinant == 0
    assert set(S.label(v) for v in rep.vertices) == {1, 2, 3}


def test_star_condition_rank_mismatch():
    S = simplex_boundary()
    with pytest.raises(DimensionMismatch):
        check_star_condition(S, _lam(S, [(1, 0)] * 4))


def test_four_color_examples():
    tet = simplex_boundary()
    c = four_color(tet)
    assert c.is_proper(tet) and c.used() == {1, 2, 3, 4}
    oc = octahedron()
    c = four_color(oc)
    assert c.is_proper(oc) and len(c.used()) <= 4
    L4 = subdivided_tetrahedron(4).sphere
    c = four_color(L4)
    assert c.is_proper(L4) and len(c.used()) <= 4


def test_coloring_to_characteristic():
    tet = simplex_boundary()
    lam = coloring_to_characteristic(four_color(tet))
    assert value_count(lam) == 4
    assert check_star_condition(tet, lam).ok
    oc = octahedron()
    three = {}
    for v in oc.vertices:  # antipodal pairs share a colour
        three[v] = {1: 1, 6: 1, 2: 2, 4: 2, 3: 3, 5: 3}[oc.label(v)]
    from fatspheres.weighted import Coloring
    col = Coloring(three)
    assert col.is_proper(oc)
    lam = coloring_to_characteristic(col)
    assert value_count(lam) == 3 and check_star_condition(oc, lam).ok


def test_value_count_examples():
    assert value_count(CharacteristicFunction(2, {1: (1, 0), 2: (-1, 0)})) == 1
    assert value_count(CharacteristicFunction(2, {1: (3, 1)})) == 1


def test_suspend_triangle():
    S = cycle(3)
    W = WeightedSphere(S, _lam(S, [(1, 0), (0, 1), (1, 1)]))
    W2 = suspend(W)
    assert W2.sphere.f_vector == (5, 9, 6)
    assert W2.n == 3
    assert check_star_condition(W2.sphere, W2.lam).ok
    assert value_count(W2.lam) == value_count(W.lam) + 1


@pytest.mark.parametrize("seed", range(5))
def test_suspend_keeps_sphere(seed):
    K = random_sphere(6 + seed, seed)
    W = WeightedSphere(K, coloring_to_characteristic(four_color(K)))
    W2 = suspend(W)
    assert W2.sphere.dim == 3
    assert value_count(W2.lam) == value_count(W.lam) + 1
    assert check_star_condition(W2.sphere, W2.lam).ok
    assert is_cell_sphere(suspend(WeightedSphere(cycle(4), _lam(cycle(4), [(1, 0), (0, 1)] * 2))).sphere).is_sphere


def test_json_roundtrip():
    S = simplex_boundary()
    W = WeightedSphere(S, coloring_to_characteristic(four_color(S)))
    W2 = WeightedSphere.from_json(W.to_json())
    assert W2.lam == W.lam


def test_random_flip_invariance_small():
    rng = random.Random(7)
    K = random_sphere(20, 3)
    lam = coloring_to_characteristic(four_color(K))
    flipped = CharacteristicFunction(3, {v: tuple(-x for x in lam.raw[v]) if rng.random() < .5 else lam.raw[v]
                                         for v in K.vertices})
    assert check_star_condition(K, flipped).ok == check_star_condition(K, lam).ok


def test_four_color_reports_impossible_graph():
    from itertools import combinations

    from fatspheres.errors import ColoringNotFound
    from fatspheres.poset import from_facets
    K5 = from_facets(combinations(range(5), 3))  # 2-skeleton of a 4-simplex
    with pytest.raises(ColoringNotFound):
        four_color(K5)
