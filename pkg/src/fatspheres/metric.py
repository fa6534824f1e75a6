"""Equilateral metric on 2-spheres, isoperimetric constants and the
subdivided-tetrahedron family L_(q).

Counts are exact.  The threshold max(AB + N, 2A) has the shape
``rational + rational * kappa`` with kappa = 1/(sqrt(3) pi); comparisons go
through an mpmath interval enclosure of kappa with rational endpoints, and
the precision is raised until the comparison is decided.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations

import numpy as np
from mpmath import iv
from mpmath.libmp import to_rational

from .errors import DegenerateTriangle, InvalidParams, NotADisc, PreconditionError
from .poset import SimplicialPoset, from_facets, is_connected
from .surgery import ridge_tops, sides, validate_cycle

SQRT3_OVER_4 = math.sqrt(3) / 4


# -- exact numbers ---------------------------------------------------------------

def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(str(x))


@lru_cache(maxsize=None)
def kappa_bounds(dps: int = 40) -> tuple[Fraction, Fraction]:
    """Rational lo < 1/(sqrt(3) pi) < hi."""
    old = iv.dps
    iv.dps = dps
    try:
        k = 1 / (iv.sqrt(3) * iv.pi)
        lo, hi = k._mpi_
    finally:
        iv.dps = old
    return Fraction(*to_rational(lo)), Fraction(*to_rational(hi))


@dataclass(frozen=True)
class PiForm:
    """``rat + coef / (sqrt(3) pi)``."""

    rat: Fraction
    coef: Fraction

    def bounds(self, dps: int = 40) -> tuple[Fraction, Fraction]:
        lo, hi = kappa_bounds(dps)
        a, b = self.rat + self.coef * lo, self.rat + self.coef * hi
        return (a, b) if a <= b else (b, a)

    def __float__(self):
        return float(self.rat) + float(self.coef) / (math.sqrt(3) * math.pi)

    def compare(self, x) -> int:
        """sign(x - self), decided with rising precision (x rational)."""
        x = as_fraction(x)
        if self.coef == 0:
            return (x > self.rat) - (x < self.rat)
        dps = 40
        while dps <= 2000:
            lo, hi = self.bounds(dps)
            if x > hi:
                return 1
            if x < lo:
                return -1
            dps *= 2
        raise ArithmeticError("comparison undecided (value may be transcendental-equal)")

    def to_json(self) -> dict:
        lo, hi = self.bounds()
        return {"rational": str(self.rat), "coefficient_of_inv_sqrt3_pi": str(self.coef),
                "value": float(self), "lower": str(lo), "upper": str(hi)}


def pi_max(p: PiForm, r: PiForm) -> PiForm:
    """The larger of two forms (decided on the exact difference)."""
    diff = PiForm(p.rat - r.rat, p.coef - r.coef)
    return p if diff.compare(0) <= 0 else r


@dataclass(frozen=True)
class IsoperimetricConstants:
    N: int
    c2: Fraction
    c3: Fraction

    @property
    def A(self) -> PiForm:
        return PiForm(Fraction(0), 4 * self.N ** 2 * self.c2 ** 2 / self.c3)

    @property
    def B(self) -> int:
        return 2 * (self.N - 2)

    @property
    def threshold(self) -> PiForm:
        A = self.A
        ab_n = PiForm(Fraction(self.N), A.coef * self.B)
        two_a = PiForm(Fraction(0), 2 * A.coef)
        return pi_max(ab_n, two_a)

    def exceeded_by(self, vertex_count: int) -> bool:
        return self.threshold.compare(vertex_count) > 0

    def q_min(self) -> int:
        """Least q with 2q^2 + 2 > threshold."""
        hi = self.threshold.bounds()[1]
        q = max(1, math.isqrt(max(0, int((hi - 2) / 2))))
        while q > 1 and self.exceeded_by(2 * (q - 1) ** 2 + 2):
            q -= 1
        while not self.exceeded_by(2 * q * q + 2):
            q += 1
        return q

    def to_json(self) -> dict:
        return {"N": self.N, "c2": str(self.c2), "c3": str(self.c3), "A": self.A.to_json(),
                "B": self.B, "threshold": self.threshold.to_json()}


def isoperimetric_constants(N: int, c2=3, c3=Fraction(1, 3)) -> IsoperimetricConstants:
    if not isinstance(N, int) or N < 3:
        raise InvalidParams(f"N must be an integer >= 3, got {N!r}")
    c2, c3 = as_fraction(c2), as_fraction(c3)
    if c2 <= 0 or c3 <= 0:
        raise InvalidParams("c2 and c3 must be positive")
    return IsoperimetricConstants(N, c2, c3)


# -- equilateral geometry ------------------------------------------------------------

@dataclass
class EquilateralGeometry:
    sphere: SimplicialPoset

    def __post_init__(self):
        if self.sphere.dim != 2:
            raise PreconditionError("equilateral geometry needs a 2-dimensional sphere")

    @property
    def triangle_count(self) -> int:
        return len(self.sphere.by_rank[3])

    def area(self) -> float:
        return SQRT3_OVER_4 * self.triangle_count


def cycle_length(geom: EquilateralGeometry, C) -> int:
    rs = validate_cycle(geom.sphere, C)
    return len({v for r in rs for v in geom.sphere.verts[r]})


def _is_disc(K: SimplicialPoset, tris: set[int]) -> bool:
    cl = K.closure(tris)
    sub = K.restrict(cl)
    if not is_connected(sub):
        return False
    f = sub.f_vector
    if f[0] - f[1] + f[2] != 1:
        return False
    deg = {e: 0 for e in sub.by_rank[2]}
    for t in sub.by_rank[3]:
        for e in sub.faces[t]:
            deg[e] += 1
    if any(d not in (1, 2) for d in deg.values()):
        return False
    boundary = [e for e, d in deg.items() if d == 1]
    bv: dict[int, int] = {}
    for e in boundary:
        for v in sub.verts[e]:
            bv[v] = bv.get(v, 0) + 1
    return bool(boundary) and all(x == 2 for x in bv.values())


def discrete_area_bound(geom: EquilateralGeometry, triangles) -> tuple[int, int]:
    """(V_-, (8/sqrt3) * area) for a disc region given by its triangles.

    The bound simplifies to 2 * #triangles exactly.
    """
    K = geom.sphere
    tris = set(triangles)
    if any(K.rank(t) != 3 for t in tris):
        raise NotADisc("region must be given by triangles")
    if len(tris) < 2:
        raise PreconditionError("a disc with fewer than two triangles is outside the bound's range")
    if not _is_disc(K, tris):
        raise NotADisc("closure of the triangles is not a disc")
    V = len({v for t in tris for v in K.verts[t]})
    bound = 2 * len(tris)
    assert V <= bound, (V, bound)
    return V, bound


# -- subdivided tetrahedron ----------------------------------------------------------

_S = 1 / (2 * math.sqrt(2))
TETRA = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], dtype=float) * _S
CIRCUMRADIUS = math.sqrt(3 / 8)


def _face_triangles(q: int, k: int):
    """Triangles of the face opposite tetrahedron vertex k, as 4-tuples."""
    others = [i for i in range(4) if i != k]

    def lift(x, y, z):
        out = [0, 0, 0, 0]
        out[others[0]], out[others[1]], out[others[2]] = x, y, z
        return tuple(out)

    for x in range(q):
        for y in range(q - x):
            z = q - 1 - x - y
            yield (lift(x + 1, y, z), lift(x, y + 1, z), lift(x, y, z + 1))
    for x in range(q - 1):
        for y in range(q - 1 - x):
            z = q - 2 - x - y
            yield (lift(x, y + 1, z + 1), lift(x + 1, y, z + 1), lift(x + 1, y + 1, z))


@dataclass
class SubdividedTetrahedron:
    q: int
    sphere: SimplicialPoset
    triangles: list[tuple[tuple[int, ...], ...]] = field(repr=False)
    R: float = CIRCUMRADIUS

    def barycentric(self, v: int) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.q) for c in self.sphere.label(v))

    def position(self, v: int) -> np.ndarray:
        """Point of the unit-edge tetrahedron (centred at the origin)."""
        return np.array(self.sphere.label(v), dtype=float) @ TETRA / self.q

    @cached_property
    def vertex_count(self) -> int:
        return len(self.sphere.by_rank[1])


def subdivided_tetrahedron(q: int) -> SubdividedTetrahedron:
    if not isinstance(q, int) or q < 1:
        raise InvalidParams(f"q must be a positive integer, got {q!r}")
    tris = [t for k in range(4) for t in _face_triangles(q, k)]
    return SubdividedTetrahedron(q, from_facets(tris), tris)


def lq_vertex_count(q: int) -> int:
    return 2 * q * q + 2


# -- Lipschitz estimation ---------------------------------------------------------------

@dataclass
class LipschitzEstimate:
    c1: float
    c2: float
    c3: float
    c4: float
    sample_count: int
    method: str
    argmin_sv: tuple[float, ...] = ()
    argmax_sv: tuple[float, ...] = ()

    def respects(self, c2=3.0, c3=1 / 3, tol=1e-3) -> bool:
        return self.c2 <= c2 + tol and self.c3 >= c3 - tol

    def to_json(self) -> dict:
        return {k: getattr(self, k) for k in ("c1", "c2", "c3", "c4", "sample_count", "method")}


def _sample_weights(depth: int) -> np.ndarray:
    pts = [(i / depth, j / depth, (depth - i - j) / depth)
           for i in range(depth + 1) for j in range(depth + 1 - i)]
    pts += [(0.5, 0.5, 0.0), (0.5, 0.0, 0.5), (0.0, 0.5, 0.5), (1 / 3, 1 / 3, 1 / 3)]
    return np.array(sorted(set(pts)), dtype=float)


def estimate_lipschitz(T: SubdividedTetrahedron, depth: int = 16) -> LipschitzEstimate:
    """Sampled extremes of the central projection |L_(q)| -> sphere of radius qR.

    L_(q) is measured with unit edges, so the big tetrahedron has edge q.
    On a triangle with orthonormal frame E the differential is
    ``(qR/|x|) (I - x^ x^T) E``; singular values give c1, c2 and the
    Jacobian (their product) gives c3, c4.
    """
    if depth < 1:
        raise InvalidParams("depth must be >= 1")
    q = T.q
    corners = np.array([[np.array(v, dtype=float) @ TETRA for v in tri] for tri in T.triangles])
    e1 = corners[:, 1] - corners[:, 0]
    e2 = corners[:, 2] - corners[:, 0]
    n = np.cross(e1, e2)
    norms = np.linalg.norm(n, axis=1)
    if np.any(norms < 1e-12):
        raise DegenerateTriangle("a triangle of the subdivision has zero area")
    u1 = e1 / np.linalg.norm(e1, axis=1)[:, None]
    u2 = np.cross(n / norms[:, None], u1)
    E = np.stack([u1, u2], axis=2)  # (t, 3, 2)
    W = _sample_weights(depth)
    X = np.einsum("sk,tkd->tsd", W, corners)  # (t, s, 3)
    r = np.linalg.norm(X, axis=2)
    xh = X / r[..., None]
    scale = q * T.R / r
    P = np.eye(3)[None, None] - xh[..., :, None] * xh[..., None, :]
    M = scale[..., None, None] * np.einsum("tsij,tjk->tsik", P, E)
    sv = np.linalg.svd(M.reshape(-1, 3, 2), compute_uv=False)
    det = sv[:, 0] * sv[:, 1]
    pts = X.reshape(-1, 3) / q
    i_min, i_max = int(np.argmin(sv[:, 1])), int(np.argmax(sv[:, 0]))
    return LipschitzEstimate(
        c1=float(sv[:, 1].min()), c2=float(sv[:, 0].max()),
        c3=float(det.min()), c4=float(det.max()),
        sample_count=int(sv.shape[0]),
        method=f"central projection, SVD of the differential at barycentric depth {depth} "
               "plus edge midpoints and centroid of every triangle",
        argmin_sv=tuple(map(float, pts[i_min])), argmax_sv=tuple(map(float, pts[i_max])),
    )


# -- small side audit ------------------------------------------------------------------

@dataclass
class SmallSideReport:
    checked: int
    violations: list[tuple[frozenset[int], int, int]]
    worst_small_side: int
    bound: float

    @property
    def ok(self) -> bool:
        return not self.violations


def side_vertex_counts(K: SimplicialPoset, C, rt=None) -> tuple[int, int]:
    comps = sides(K, frozenset(C), rt)
    if len(comps) != 2:
        raise PreconditionError("cycle does not split the sphere in two")
    cv = {v for e in C for v in K.verts[e]}
    out = []
    for comp in comps:
        vs = {v for t in comp for v in K.verts[t]} | cv
        out.append(len(vs))
    return out[0], out[1]


def triangle_cycles(K: SimplicialPoset) -> list[frozenset[int]]:
    """All 3-cycles of the 1-skeleton (as edge-id sets)."""
    out = []
    adj = K.adjacency
    for a in K.vertices:
        for b in adj[a]:
            if b <= a:
                continue
            for c in adj[b]:
                if c <= b or c not in adj[a]:
                    continue
                for e1 in K.edge_between(a, b):
                    for e2 in K.edge_between(b, c):
                        for e3 in K.edge_between(a, c):
                            out.append(frozenset((e1, e2, e3)))
    return out


def random_cycles(K: SimplicialPoset, max_len: int, count: int, seed: int = 0) -> list[frozenset[int]]:
    """Random simple cycles up to ``max_len`` vertices, via random walks."""
    rng = random.Random(seed)
    adj = {v: sorted(ns) for v, ns in K.adjacency.items()}
    verts = sorted(adj)
    out: set[frozenset[int]] = set()
    tries = 0
    while len(out) < count and tries < 200 * count:
        tries += 1
        start = rng.choice(verts)
        path = [start]
        while len(path) <= max_len:
            nxt = rng.choice(adj[path[-1]])
            if nxt == start and len(path) >= 3:
                es = [K.edge_between(a, b)[0] for a, b in zip(path, path[1:] + [start])]
                out.add(frozenset(es))
                break
            if nxt in path:
                break
            path.append(nxt)
    return sorted(out, key=sorted)


def small_side_bound_check(T: SubdividedTetrahedron | SimplicialPoset, consts: IsoperimetricConstants,
                           cycles) -> SmallSideReport:
    K = T.sphere if isinstance(T, SubdividedTetrahedron) else T
    A_hi = consts.A.bounds()[1]
    rt = ridge_tops(K)
    viol = []
    worst = 0
    n = 0
    for C in cycles:
        C = validate_cycle(K, C)
        nv = len({v for e in C for v in K.verts[e]})
        if nv > consts.N:
            raise PreconditionError(f"cycle with {nv} vertices exceeds N = {consts.N}")
        a, b = side_vertex_counts(K, C, rt)
        n += 1
        small = min(a, b)
        worst = max(worst, small)
        if small > A_hi:
            viol.append((C, a, b))
    return SmallSideReport(n, viol, worst, float(consts.A))
