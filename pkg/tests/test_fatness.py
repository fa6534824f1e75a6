import json
from pathlib import Path

import pytest

from fatspheres.errors import BudgetExceeded
from fatspheres.fatness import fatness_bruteforce, default_small_side_bound
from fatspheres.iso import isomorphic
from fatspheres.metric import isoperimetric_constants
from fatspheres.poset import bipyramid, cycle, octahedron, simplex_boundary
from fatspheres.surgery import check_degree_bound, tree_connected_sum, width

GOLDEN = Path(__file__).parent / "golden"


def _clean(r):
    assert r.stats["degree_violations"] == []
    assert r.stats["small_side_violations"] == []


@pytest.mark.parametrize("k", range(2, 9))
def test_one_spheres_at_most_three(k):
    r = fatness_bruteforce(cycle(k))
    assert r.exact and r.value == min(k, 3)
    _clean(r)


def test_tetrahedron_is_four():
    r = fatness_bruteforce(simplex_boundary())
    assert r.exact and r.value == 4
    assert r.cycles == []
    _clean(r)


def test_triangular_bipyramid_is_four():
    r = fatness_bruteforce(bipyramid(3))
    assert r.exact and r.value == 4
    _clean(r)


def test_octahedron_golden():
    g = json.loads((GOLDEN / "octahedron_fatness.json").read_text())
    O = octahedron()
    assert list(O.f_vector) == g["f_vector"]
    r = fatness_bruteforce(O)
    assert r.exact == g["exact"] and r.value == g["fatness"]
    _clean(r)


def test_best_slicing_reassembles():
    O = octahedron()
    r = fatness_bruteforce(O)
    K, sl = tree_connected_sum(r.best.without_derived())
    assert isomorphic(K, O) is not None
    assert width(sl).width == r.value
    assert check_degree_bound(sl, r.value)[0]


def test_upper_bound_monotone_in_budget():
    O = octahedron()
    uppers = [fatness_bruteforce(O, L).upper for L in (3, 4, 5, 6)]
    assert uppers == sorted(uppers, reverse=True)
    assert uppers[-1] == 5


def test_short_budget_gives_interval():
    r = fatness_bruteforce(octahedron(), 3)
    assert not r.exact and r.lower <= 5 <= r.upper


def test_time_budget_raises_with_partial():
    with pytest.raises(BudgetExceeded) as ei:
        fatness_bruteforce(bipyramid(5), time_budget=0.01)
    part = ei.value.partial
    assert part.lower <= 5 <= part.upper


def test_rejects_non_spheres():
    from fatspheres.poset import from_facets
    with pytest.raises(ValueError):
        fatness_bruteforce(from_facets([(1, 2, 3)]))


def test_small_side_bound_matches_exact_constant():
    c = isoperimetric_constants(8, 3, 1 / 3)
    lo, hi = c.A.bounds()
    assert hi <= default_small_side_bound(8) <= float(hi) * (1 + 1e-9)
    assert abs(default_small_side_bound(8) - float(lo)) < 1e-6
