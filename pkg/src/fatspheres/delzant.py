"""Exact rational simple polytopes (dimension 1 to 3), the Delzant test and
dual weighted spheres."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Mapping, Sequence

from .errors import Degenerate, FacetMismatch, NotSimple, Unbounded
from .lattice import int_det, rank_rational, solve_rational, unimodular_completion, vector_gcd
from .poset import SimplicialPoset, from_facets
from .weighted import CharacteristicFunction, WeightedSphere

Point = tuple[Fraction, ...]


def _normalize(normal: Sequence, offset) -> tuple[tuple[int, ...], Fraction]:
    """Scale ``<normal, x> <= offset`` to a primitive integer normal."""
    fr = [Fraction(c) for c in normal]
    if all(c == 0 for c in fr):
        raise Degenerate("zero normal vector")
    den = 1
    for c in fr:
        den = den * c.denominator // _gcd(den, c.denominator)
    ints = [int(c * den) for c in fr]
    g = vector_gcd(ints)
    return tuple(c // g for c in ints), Fraction(offset) * den / g


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _affine_rank(points: Sequence[Point]) -> int:
    if not points:
        return -1
    p0 = points[0]
    return rank_rational([[a - b for a, b in zip(p, p0)] for p in points[1:]]) if len(points) > 1 else 0


class RationalPolytope:
    """``{x : <nu_i, x> <= b_i}`` with primitive outward integer normals.

    Every halfspace must define a facet; the polytope must be bounded,
    full-dimensional and simple.
    """

    def __init__(self, halfspaces: Sequence[tuple[Sequence, object]]):
        hs = [_normalize(n, b) for n, b in halfspaces]
        if not hs:
            raise Degenerate("no halfspaces")
        dims = {len(n) for n, _ in hs}
        if len(dims) != 1:
            raise Degenerate("normals of different lengths")
        self.dim = dims.pop()
        if not 1 <= self.dim <= 3:
            raise Degenerate(f"dimension {self.dim} not supported (1 to 3)")
        if len(set(hs)) != len(hs):
            raise Degenerate("repeated halfspace")
        self.normals: tuple[tuple[int, ...], ...] = tuple(n for n, _ in hs)
        self.offsets: tuple[Fraction, ...] = tuple(b for _, b in hs)
        self._check_bounded()
        self._enumerate()

    # -- construction ------------------------------------------------------------
    def _check_bounded(self) -> None:
        d = self.dim
        if rank_rational(self.normals) < d:
            raise Unbounded("normals do not span the ambient space (a line fits inside)")
        rays = []
        if d == 1:
            rays = [(Fraction(1),), (Fraction(-1),)]
        else:
            for sub in combinations(self.normals, d - 1):
                if rank_rational(sub) != d - 1:
                    continue
                r = _kernel_vector(sub, d)
                rays += [r, tuple(-x for x in r)]
        for r in rays:
            if all(_dot(n, r) <= 0 for n in self.normals):
                raise Unbounded(f"recession direction {tuple(map(str, r))}")

    def _enumerate(self) -> None:
        d = self.dim
        pts: dict[Point, None] = {}
        for idx in combinations(range(len(self.normals)), d):
            A = [self.normals[i] for i in idx]
            if rank_rational(A) < d:
                continue
            x = solve_rational(A, [self.offsets[i] for i in idx])
            if x is None:
                continue
            x = tuple(x)
            if all(_dot(n, x) <= b for n, b in zip(self.normals, self.offsets)):
                pts[x] = None
        vertices = sorted(pts)
        if not vertices:
            raise Degenerate("empty polytope")
        if _affine_rank(vertices) < d:
            raise Degenerate("polytope is not full-dimensional")
        tight = []
        for v in vertices:
            t = tuple(i for i, (n, b) in enumerate(zip(self.normals, self.offsets)) if _dot(n, v) == b)
            if len(t) != d:
                raise NotSimple(f"vertex {tuple(map(str, v))} lies on {len(t)} facets")
            tight.append(t)
        self.vertices: tuple[Point, ...] = tuple(vertices)
        self.vertex_facets: tuple[tuple[int, ...], ...] = tuple(tight)
        for i in range(len(self.normals)):
            vs = self.facet_vertices(i)
            if _affine_rank([self.vertices[j] for j in vs]) != d - 1:
                raise Degenerate(f"halfspace {i} does not define a facet")

    # -- queries --------------------------------------------------------------------
    @property
    def facet_count(self) -> int:
        return len(self.normals)

    def halfspace(self, i: int) -> tuple[tuple[int, ...], Fraction]:
        return self.normals[i], self.offsets[i]

    def facet_vertices(self, i: int) -> tuple[int, ...]:
        return tuple(j for j, t in enumerate(self.vertex_facets) if i in t)

    def facet_point_set(self, i: int) -> frozenset[Point]:
        return frozenset(self.vertices[j] for j in self.facet_vertices(i))

    def ridges_of(self, i: int) -> dict[frozenset[Point], int]:
        """Codimension-two faces inside facet i, keyed by their vertex sets,
        mapped to the other facet through them."""
        out = {}
        for g in range(self.facet_count):
            if g == i:
                continue
            shared = [j for j in self.facet_vertices(i) if g in self.vertex_facets[j]]
            if shared and _affine_rank([self.vertices[j] for j in shared]) == self.dim - 2:
                out[frozenset(self.vertices[j] for j in shared)] = g
        return out

    def neighbours(self, i: int) -> list[int]:
        """Facets meeting facet i in a ridge, in index order."""
        return sorted(self.ridges_of(i).values())

    def adjacent(self, i: int, j: int) -> bool:
        """Facets i and j meet."""
        return any(i in t and j in t for t in self.vertex_facets)

    def find_facet(self, normal, offset) -> int | None:
        key = _normalize(normal, offset)
        for i in range(self.facet_count):
            if self.halfspace(i) == key:
                return i
        return None

    @cached_property
    def f_vector(self) -> tuple[int, ...]:
        """(vertices, ..., facets) counted through the dual sphere."""
        return tuple(self.dual_sphere.f_vector[::-1])

    @cached_property
    def dual_sphere(self) -> SimplicialPoset:
        return from_facets(self.vertex_facets)

    def contains(self, x) -> bool:
        return all(_dot(n, x) <= b for n, b in zip(self.normals, self.offsets))

    def facet_polytope(self, i: int) -> "RationalPolytope":
        """Facet i as a polytope in lattice coordinates of its hyperplane.

        Its facets follow the order of ``neighbours(i)``.
        """
        if self.dim == 1:
            raise Degenerate("facets of a segment are points")
        U, Uinv = unimodular_completion(self.normals[i])
        b = self.offsets[i]
        hs = []
        for g in self.neighbours(i):
            row = [sum(self.normals[g][k] * Uinv[k][c] for k in range(self.dim)) for c in range(self.dim)]
            hs.append((row[1:], self.offsets[g] - row[0] * b))
        return RationalPolytope(hs)

    def to_json(self) -> dict:
        return {"dim": self.dim,
                "halfspaces": [{"normal": list(n), "offset": str(b)}
                               for n, b in zip(self.normals, self.offsets)]}

    @classmethod
    def from_json(cls, doc: Mapping) -> "RationalPolytope":
        P = cls([(h["normal"], Fraction(str(h["offset"]))) for h in doc["halfspaces"]])
        if "dim" in doc and doc["dim"] != P.dim:
            raise Degenerate(f"declared dim {doc['dim']} != {P.dim}")
        return P

    def __eq__(self, other):
        return (isinstance(other, RationalPolytope)
                and set(zip(self.normals, self.offsets)) == set(zip(other.normals, other.offsets)))

    def __hash__(self):
        return hash(frozenset(zip(self.normals, self.offsets)))

    def __repr__(self):
        return f"RationalPolytope(dim={self.dim}, facets={self.facet_count}, vertices={len(self.vertices)})"


def _kernel_vector(rows, d) -> tuple[Fraction, ...]:
    """A nonzero vector orthogonal to ``d - 1`` independent rows."""
    if d == 2:
        (a, b), = rows
        return (Fraction(-b), Fraction(a))
    (a1, a2, a3), (b1, b2, b3) = rows
    return (Fraction(a2 * b3 - a3 * b2), Fraction(a3 * b1 - a1 * b3), Fraction(a1 * b2 - a2 * b1))


def build_polytope(halfspaces) -> RationalPolytope:
    """Accepts ``[(normal, offset), ...]`` or ``[{"normal", "offset"}, ...]``."""
    hs = [(h["normal"], Fraction(str(h["offset"]))) if isinstance(h, Mapping) else h for h in halfspaces]
    return RationalPolytope(hs)


# -- Delzant ------------------------------------------------------------------------

@dataclass
class DelzantReport:
    ok: bool
    vertex: Point | None = None
    facets: tuple[int, ...] = ()
    determinant: int | None = None

    def __bool__(self):
        return self.ok


def is_delzant(P: RationalPolytope) -> DelzantReport:
    for v, t in zip(P.vertices, P.vertex_facets):
        d = int_det([P.normals[i] for i in t])
        if abs(d) != 1:
            return DelzantReport(False, v, t, abs(d))
    return DelzantReport(True)


@dataclass
class DualWeightedSphere:
    K: SimplicialPoset
    nu: CharacteristicFunction

    def weighted(self, validate: bool = True) -> WeightedSphere:
        return WeightedSphere(self.K, self.nu, validate=validate)

    def vertex_of_facet(self, i: int) -> int:
        return self.K.vertex_by_label(i)


def dual_weighted_sphere(P: RationalPolytope) -> DualWeightedSphere:
    K = P.dual_sphere
    nu = CharacteristicFunction(P.dim, {v: P.normals[K.label(v)] for v in K.vertices})
    return DualWeightedSphere(K, nu)


def coincide_near_facet(P1: RationalPolytope, f1: int, P2: RationalPolytope, f2: int) -> bool:
    """Both polytopes have the same supporting halfspace along the facet and
    the same second halfspace through each of its ridges."""
    if P1.dim != P2.dim:
        raise FacetMismatch("polytopes of different dimension")
    if P1.halfspace(f1) != P2.halfspace(f2):
        raise FacetMismatch("facets lie on different supporting halfspaces")
    if P1.facet_point_set(f1) != P2.facet_point_set(f2):
        raise FacetMismatch("facets have different vertex sets")
    r1, r2 = P1.ridges_of(f1), P2.ridges_of(f2)
    if set(r1) != set(r2):
        return False
    return all(P1.halfspace(r1[k]) == P2.halfspace(r2[k]) for k in r1)


# -- standard shapes -----------------------------------------------------------------

def standard_simplex(dim: int = 2) -> RationalPolytope:
    hs = [([-1 if j == i else 0 for j in range(dim)], 0) for i in range(dim)]
    hs.append(([1] * dim, 1))
    return RationalPolytope(hs)


def box(lo: Sequence, hi: Sequence) -> RationalPolytope:
    dim = len(lo)
    hs = []
    for i in range(dim):
        e = [0] * dim
        e[i] = -1
        hs.append((list(e), -Fraction(lo[i])))
        e[i] = 1
        hs.append((list(e), Fraction(hi[i])))
    return RationalPolytope(hs)


def polygon(points: Sequence[Sequence]) -> RationalPolytope:
    """Convex polygon from counterclockwise vertices."""
    pts = [tuple(Fraction(c) for c in p) for p in points]
    hs = []
    for a, b in zip(pts, pts[1:] + pts[:1]):
        n = (b[1] - a[1], a[0] - b[0])  # outward for counterclockwise order
        hs.append((n, n[0] * a[0] + n[1] * a[1]))
    return RationalPolytope(hs)
