"""Named origami templates used by tests, examples and the CLI."""

from __future__ import annotations

from .delzant import RationalPolytope, box, polygon, standard_simplex
from .template import OrigamiTemplate, TemplateEdge


def _facet(P: RationalPolytope, normal, offset) -> int:
    i = P.find_facet(normal, offset)
    if i is None:
        raise KeyError((normal, offset))
    return i


def _path(name, polys, folds):
    """``folds[k] = (normal, offset)`` glues node k to node k + 1."""
    nodes = {k: P for k, P in enumerate(polys)}
    edges = [TemplateEdge(k, k + 1, _facet(polys[k], n, b), _facet(polys[k + 1], n, b))
             for k, (n, b) in enumerate(folds)]
    return OrigamiTemplate(nodes, edges, name)


def two_triangles() -> OrigamiTemplate:
    """Two copies of one triangle folded along the hypotenuse."""
    T = standard_simplex(2)
    return _path("two-triangles", [T, T], [((1, 1), 1)])


def two_squares() -> OrigamiTemplate:
    """Two copies of the unit square folded along x = 1."""
    S = box([0, 0], [1, 1])
    return _path("two-squares", [S, S], [((1, 0), 1)])


def three_squares() -> OrigamiTemplate:
    S = box([0, 0], [1, 1])
    nodes = {0: S, 1: S, 2: S}
    edges = [TemplateEdge(0, 1, _facet(S, (1, 0), 1), _facet(S, (1, 0), 1)),
             TemplateEdge(1, 2, _facet(S, (-1, 0), 0), _facet(S, (-1, 0), 0))]
    return OrigamiTemplate(nodes, edges, "three-squares")


def hexagon() -> RationalPolytope:
    return polygon([(1, 0), (2, 0), (2, 1), (1, 2), (0, 2), (0, 1)])


def hexagon_star() -> OrigamiTemplate:
    """A hexagon folded along three pairwise disjoint sides to three copies."""
    H = hexagon()
    folds = [((0, -1), 0), ((1, 1), 3), ((-1, 0), 0)]
    nodes = {0: H, 1: H, 2: H, 3: H}
    edges = [TemplateEdge(0, k + 1, _facet(H, n, b), _facet(H, n, b)) for k, (n, b) in enumerate(folds)]
    return OrigamiTemplate(nodes, edges, "hexagon-star")


def triangle_trapezoid() -> OrigamiTemplate:
    """A triangle and a trapezoid (corner cut away from the fold) sharing x + y = 2."""
    T = polygon([(0, 0), (2, 0), (0, 2)])
    Z = polygon([(1, 0), (2, 0), (0, 2), (0, 1)])
    return _path("triangle-trapezoid", [T, Z], [((1, 1), 2)])


def single_triangle() -> OrigamiTemplate:
    return OrigamiTemplate({0: standard_simplex(2)}, [], "single-triangle")


def single_square() -> OrigamiTemplate:
    return OrigamiTemplate({0: box([0, 0], [1, 1])}, [], "single-square")


def two_cubes() -> OrigamiTemplate:
    C = box([0, 0, 0], [1, 1, 1])
    return _path("two-cubes", [C, C], [((1, 0, 0), 1)])


def three_cubes() -> OrigamiTemplate:
    C = box([0, 0, 0], [1, 1, 1])
    nodes = {0: C, 1: C, 2: C}
    edges = [TemplateEdge(0, 1, _facet(C, (0, 0, 1), 1), _facet(C, (0, 0, 1), 1)),
             TemplateEdge(1, 2, _facet(C, (0, 0, -1), 0), _facet(C, (0, 0, -1), 0))]
    return OrigamiTemplate(nodes, edges, "three-cubes")


def two_tetrahedra() -> OrigamiTemplate:
    T = standard_simplex(3)
    return _path("two-tetrahedra", [T, T], [((1, 1, 1), 1)])


def cube_and_cut_cube() -> OrigamiTemplate:
    C = box([0, 0, 0], [2, 2, 2])
    D = RationalPolytope(list(zip(C.normals, C.offsets)) + [((-1, -1, -1), -1)])
    return _path("cube-and-cut-cube", [C, D], [((1, 0, 0), 2)])


def four_hexagon_cycle() -> OrigamiTemplate:
    """Four hexagons glued in a 4-cycle (not a tree)."""
    yellow = polygon([(1, 0), (2, 0), (2, 6), (1, 6), (0, 5), (0, 1)])
    green = polygon([(4, 0), (5, 0), (6, 1), (6, 5), (5, 6), (4, 6)])
    orange = polygon([(0, 2), (0, 1), (1, 0), (5, 0), (6, 1), (6, 2)])
    blue = polygon([(0, 4), (6, 4), (6, 5), (5, 6), (1, 6), (0, 5)])
    nodes = {"yellow": yellow, "orange": orange, "green": green, "blue": blue}
    folds = [("yellow", "orange", (-1, -1), -1), ("orange", "green", (1, -1), 5),
             ("green", "blue", (1, 1), 11), ("blue", "yellow", (-1, 1), 5)]
    edges = [TemplateEdge(a, b, _facet(nodes[a], n, o), _facet(nodes[b], n, o)) for a, b, n, o in folds]
    return OrigamiTemplate(nodes, edges, "four-hexagons")


def looped_square() -> OrigamiTemplate:
    S = box([0, 0], [1, 1])
    i = _facet(S, (1, 0), 1)
    return OrigamiTemplate({0: S}, [TemplateEdge(0, 0, i, i)], "looped-square")


TREE_TEMPLATES = {
    "two-triangles": two_triangles,
    "two-squares": two_squares,
    "three-squares": three_squares,
    "hexagon-star": hexagon_star,
    "triangle-trapezoid": triangle_trapezoid,
    "single-triangle": single_triangle,
    "single-square": single_square,
    "two-cubes": two_cubes,
    "three-cubes": three_cubes,
    "two-tetrahedra": two_tetrahedra,
    "cube-and-cut-cube": cube_and_cut_cube,
}
