"""Non-origami certificates for (L_(q), Lambda) and their independent re-check.

Chain recorded in a certificate:
  |ver L_(q)| = 2q^2 + 2 > max(AB + N, 2A)  =>  ft(L_(q)) > N >= 2r
  =>  no tree connected sum of Delzant duals has the weighted sphere
      (L_(q), Lambda), with Lambda the 4-vector image of a proper coloring.
The Lipschitz constants c2, c3 are assumptions carried with a provenance tag.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .coloring import four_color
from .errors import ColoringUsesTooManyValues, ThresholdNotMet
from .fatness import _Search, fatness_bruteforce
from .metric import (IsoperimetricConstants, PiForm, estimate_lipschitz, isoperimetric_constants,
                     lq_vertex_count, subdivided_tetrahedron)
from .poset import SimplicialPoset
from .weighted import (COLOR_VECTORS, CharacteristicFunction, Coloring, WeightedSphere,
                       check_star_condition, coloring_to_characteristic, suspend, value_count)

FORMAT = "fatspheres-certificate/1"
VERDICT = ("(P, Lambda) is not equivariantly homeomorphic to any toric origami manifold, "
           "conditional on the Lipschitz constants c2, c3")


def sphere_digest(triangles) -> str:
    canon = sorted(tuple(sorted(t)) for t in triangles)
    return hashlib.sha256(json.dumps(canon, separators=(",", ":")).encode()).hexdigest()


@dataclass
class Certificate:
    N: int
    q: int
    c2: Fraction
    c3: Fraction
    provenance: dict
    A: dict
    B: int
    threshold: dict
    vertex_count: int
    sphere_digest: str
    coloring: str                 # one digit per vertex, vertices in id order
    color_vectors: dict
    r: int
    verdict: str = VERDICT
    lipschitz: dict | None = None

    def to_json(self) -> dict:
        doc = {
            "format": FORMAT, "N": self.N, "q": self.q, "c2": str(self.c2), "c3": str(self.c3),
            "provenance": self.provenance, "A": self.A, "B": self.B, "threshold": self.threshold,
            "vertex_count": self.vertex_count, "sphere_digest": self.sphere_digest,
            "coloring": self.coloring,
            "lambda": {"n": 3, "color_vectors": {str(k): list(v) for k, v in sorted(self.color_vectors.items())}},
            "r": self.r, "verdict": self.verdict,
        }
        if self.lipschitz is not None:
            doc["lipschitz"] = self.lipschitz
        return doc

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1)

    @classmethod
    def from_json(cls, doc: dict) -> "Certificate":
        return cls(
            N=int(doc["N"]), q=int(doc["q"]), c2=Fraction(doc["c2"]), c3=Fraction(doc["c3"]),
            provenance=dict(doc.get("provenance", {})), A=dict(doc["A"]), B=int(doc["B"]),
            threshold=dict(doc["threshold"]), vertex_count=int(doc["vertex_count"]),
            sphere_digest=doc["sphere_digest"], coloring=str(doc["coloring"]),
            color_vectors={int(k): tuple(v) for k, v in doc["lambda"]["color_vectors"].items()},
            r=int(doc["r"]), verdict=doc.get("verdict", VERDICT), lipschitz=doc.get("lipschitz"),
        )

    def weighted_sphere(self, validate: bool = True) -> WeightedSphere:
        S = subdivided_tetrahedron(self.q).sphere
        vs = S.vertices
        lam = CharacteristicFunction(3, {v: self.color_vectors[int(ch)] for v, ch in zip(vs, self.coloring)})
        return WeightedSphere(S, lam, validate=validate)


def certify_non_origami(N: int = 8, q: int = 88, c2=3, c3=Fraction(1, 3),
                        provenance: str = "stated constants", corroborate_depth: int | None = None
                        ) -> Certificate:
    consts = isoperimetric_constants(N, c2, c3)
    V = lq_vertex_count(q)
    if not consts.exceeded_by(V):
        qm = consts.q_min()
        raise ThresholdNotMet(
            f"2q^2 + 2 = {V} does not exceed the threshold {float(consts.threshold):.2f}; "
            f"least sufficient q is {qm}", qm)
    T = subdivided_tetrahedron(q)
    S = T.sphere
    if len(S.vertices) != V:
        raise AssertionError("vertex count disagrees with 2q^2 + 2")
    col = four_color(S)
    lam = coloring_to_characteristic(col)
    star = check_star_condition(S, lam)
    if not star.ok:
        raise AssertionError(f"star condition fails on simplex {star.simplex}")
    r = value_count(lam)
    if 2 * r > N:
        raise ColoringUsesTooManyValues(f"r = {r} but N = {N} < 2r")
    lip = None
    prov = {"c2": provenance, "c3": provenance}
    if corroborate_depth:
        est = estimate_lipschitz(subdivided_tetrahedron(1), corroborate_depth)
        lip = est.to_json()
        tag = f"{provenance}; sampled extremes respect them at depth {corroborate_depth}" \
            if est.respects(float(consts.c2), float(consts.c3)) else \
            f"{provenance}; sampled extremes do NOT respect them"
        prov = {"c2": tag, "c3": tag}
    return Certificate(
        N=N, q=q, c2=consts.c2, c3=consts.c3, provenance=prov,
        A=consts.A.to_json(), B=consts.B, threshold=consts.threshold.to_json(),
        vertex_count=V, sphere_digest=sphere_digest(T.triangles),
        coloring="".join(str(col[v]) for v in S.vertices),
        color_vectors=dict(COLOR_VECTORS), r=r, lipschitz=lip,
    )


@dataclass
class ValidationReport:
    ok: bool
    reasons: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        return {"valid": self.ok, "reasons": self.reasons}


def validate_certificate(c: Certificate | dict) -> ValidationReport:
    """Recompute every claim from raw data."""
    if isinstance(c, dict):
        c = Certificate.from_json(c)
    reasons: list[str] = []
    try:
        consts = isoperimetric_constants(c.N, c.c2, c.c3)
    except Exception as exc:  # noqa: BLE001 - reported, not raised
        return ValidationReport(False, [f"invalid constants: {exc}"])
    if consts.B != c.B:
        reasons.append(f"B mismatch: recorded {c.B}, recomputed {consts.B}")
    for key, form in (("A", consts.A), ("threshold", consts.threshold)):
        rec = getattr(c, key)
        exp = form.to_json()
        if (rec.get("rational"), rec.get("coefficient_of_inv_sqrt3_pi")) != \
                (exp["rational"], exp["coefficient_of_inv_sqrt3_pi"]):
            reasons.append(f"{key} mismatch: recorded {rec.get('value')}, recomputed {exp['value']}")
    if c.vertex_count != lq_vertex_count(c.q):
        reasons.append(f"vertex count {c.vertex_count} != 2q^2 + 2 = {lq_vertex_count(c.q)}")
    if not consts.exceeded_by(c.vertex_count):
        reasons.append(f"threshold not exceeded: {c.vertex_count} <= {float(consts.threshold):.4f}")
    T = subdivided_tetrahedron(c.q)
    S = T.sphere
    if len(S.vertices) != c.vertex_count:
        reasons.append(f"rebuilt sphere has {len(S.vertices)} vertices, certificate says {c.vertex_count}")
    if sphere_digest(T.triangles) != c.sphere_digest:
        reasons.append("sphere digest mismatch")
    vs = S.vertices
    if len(c.coloring) != len(vs) or any(ch not in "1234" for ch in c.coloring):
        reasons.append("coloring has the wrong length or uses values outside 1..4")
        return ValidationReport(False, reasons)
    col = Coloring({v: int(ch) for v, ch in zip(vs, c.coloring)})
    bad = col.improper_edge(S)
    if bad is not None:
        reasons.append(f"improper coloring at edge ({bad[0]},{bad[1]})")
    if {k: tuple(v) for k, v in c.color_vectors.items()} != COLOR_VECTORS:
        reasons.append("color vectors differ from (1,0,0), (0,1,0), (0,0,1), (1,1,1)")
    try:
        lam = CharacteristicFunction(3, {v: c.color_vectors[col[v]] for v in vs})
        star = check_star_condition(S, lam)
        if not star.ok:
            reasons.append(f"star condition fails on simplex {star.simplex} (det {star.determinant})")
        r = value_count(lam)
        if r != c.r:
            reasons.append(f"value count mismatch: recorded {c.r}, recomputed {r}")
        if 2 * r > c.N:
            reasons.append(f"2r = {2 * r} exceeds N = {c.N}")
    except Exception as exc:  # noqa: BLE001
        reasons.append(f"characteristic function invalid: {exc}")
    return ValidationReport(not reasons, reasons)


@dataclass
class LiftedCertificate:
    base: Certificate
    k: int
    rank: int
    sphere: WeightedSphere
    value_count: int
    star_ok: bool

    def to_json(self) -> dict:
        return {"base_digest": self.base.sphere_digest, "k": self.k, "rank": self.rank,
                "f_vector": list(self.sphere.sphere.f_vector), "value_count": self.value_count,
                "star_condition": self.star_ok,
                "argument": "each suspension is the dual of a product with an interval; every "
                            "characteristic submanifold of a toric origami manifold is toric origami, "
                            "so a realisation of the lift would restrict to one of the base"}


def lift_certificate(c: Certificate, k: int) -> LiftedCertificate:
    if k < 0:
        raise ValueError("k must be non-negative")
    rep = validate_certificate(c)
    if not rep.ok:
        raise ValueError(f"base certificate invalid: {rep.reasons}")
    W = c.weighted_sphere(validate=False)
    for step in range(k):
        W = suspend(W)
    star = check_star_condition(W.sphere, W.lam)
    return LiftedCertificate(c, k, 3 + k, W, value_count(W.lam), star.ok)


# -- brute-force audit on small spheres ------------------------------------------------------

class _Counting(_Search):
    """Is there a slicing whose every region R has 2 |Lambda(ver R)| >= |ver R|?"""

    def __init__(self, K, lam, max_len, deadline):
        super().__init__(K, max_len, deadline, False, None)
        self.lam = lam
        self.feas: dict = {}
        self.witness: dict = {}

    def count_ok(self, T, B) -> bool:
        vs = self.region_vertices(T, B)
        return 2 * len({self.lam[v] for v in vs}) >= len(vs)

    def feasible(self, T, B) -> bool:
        key = (T, B)
        if key in self.feas:
            return self.feas[key]
        self.feas[key] = False
        if self.piece_ok(T, B) and self.count_ok(T, B):
            self.feas[key] = True
            return True
        holes = {}
        for C in B:
            a, b = self.sides(C)
            holes[C] = b if a & T else a
        for C in self.candidates(T, self.max_len):
            if C in B:
                continue
            sA, sB = self.sides(C)
            if not sB:
                continue
            T1, T2 = T & sA, T & sB
            if not T1 or not T2:
                continue
            B1, B2 = [C], [C]
            ok = True
            for b, h in holes.items():
                if h <= sA:
                    B1.append(b)
                elif h <= sB:
                    B2.append(b)
                else:
                    ok = False
                    break
            if ok and self.feasible(T1, frozenset(B1)) and self.feasible(T2, frozenset(B2)):
                self.feas[key] = True
                self.witness[key] = C
                return True
        return False


@dataclass
class AuditReport:
    fatness: int
    fatness_exact: bool
    r: int
    fires: bool
    counting_feasible: bool | None
    consistent: bool
    message: str

    def to_json(self) -> dict:
        return dict(self.__dict__)


def lemma_consistency_audit(K: SimplicialPoset, lam: CharacteristicFunction,
                            time_budget: float | None = None) -> AuditReport:
    """Compare exact fatness with 2r and search for a slicing passing the
    region-by-region counting condition."""
    if len(K.vertices) > 30:
        raise ValueError("audit is limited to spheres with at most 30 vertices")
    ft = fatness_bruteforce(K, time_budget=time_budget)
    r = value_count(lam.restricted(K.vertices))
    fires = ft.lower > 2 * r
    s = _Counting(K, lam, max(2 * r, 2), None)
    feasible = s.feasible(s.tops, frozenset())
    if fires:
        consistent = not feasible
        msg = ("lemma fires: ft(K) > 2r and no slicing passes the counting condition"
               if consistent else "INCONSISTENT: lemma fires but a counting-feasible slicing exists")
    else:
        consistent = True
        msg = "lemma inapplicable (ft(K) <= 2r); this says nothing about realisability"
    return AuditReport(ft.upper, ft.exact, r, fires, feasible, consistent, msg)
