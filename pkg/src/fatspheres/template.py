"""Origami templates: validation, facet classes, orbit-space posets (glued and
as connected sums) and induced templates."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Hashable, Mapping

from .delzant import RationalPolytope, coincide_near_facet, dual_weighted_sphere, is_delzant
from .errors import (EmptyIntersection, FacetMismatch, InconsistentGluing, InconsistentNormals,
                     InvalidTemplate, NotATree, NotCooriented)
from .iso import isomorphic
from .poset import SimplicialPoset, _assemble, is_cell_sphere
from .surgery import Slicing, tree_connected_sum
from .weighted import CharacteristicFunction, SignClass


@dataclass(frozen=True)
class TemplateEdge:
    u: Hashable
    v: Hashable
    facet_u: int
    facet_v: int

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    def facet_at(self, node, end: int | None = None) -> int:
        if end is not None:
            return self.facet_u if end == 0 else self.facet_v
        if node == self.u:
            return self.facet_u
        if node == self.v:
            return self.facet_v
        raise KeyError(node)

    def other(self, node):
        return self.v if node == self.u else self.u


@dataclass
class OrigamiTemplate:
    nodes: dict[Hashable, RationalPolytope]
    edges: list[TemplateEdge]
    name: str = ""

    @property
    def dim(self) -> int:
        return next(iter(self.nodes.values())).dim

    def incident(self, node) -> list[int]:
        return [k for k, e in enumerate(self.edges) if node in (e.u, e.v)]

    def fold_facets(self, node) -> dict[int, int]:
        """edge index -> fold facet of ``node``'s polytope."""
        out = {}
        for k, e in enumerate(self.edges):
            if e.u == node:
                out[k] = e.facet_u
            elif e.v == node:
                out[k] = e.facet_v
        return out

    def to_json(self) -> dict:
        doc = {"nodes": [{"id": n, "polytope": P.to_json()} for n, P in self.nodes.items()],
               "edges": [{"u": e.u, "v": e.v, "facet_u": e.facet_u, "facet_v": e.facet_v}
                         for e in self.edges]}
        if self.name:
            doc["name"] = self.name
        return doc

    @classmethod
    def from_json(cls, doc: Mapping) -> "OrigamiTemplate":
        nodes = {n["id"]: RationalPolytope.from_json(n["polytope"]) for n in doc["nodes"]}
        edges = [TemplateEdge(e["u"], e["v"], int(e["facet_u"]), int(e["facet_v"])) for e in doc["edges"]]
        for e in edges:
            if e.u not in nodes or e.v not in nodes:
                raise InvalidTemplate(f"edge {e} refers to an unknown node")
        return cls(nodes, edges, doc.get("name", ""))

    @classmethod
    def load(cls, path) -> "OrigamiTemplate":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


# -- graph properties ------------------------------------------------------------

def _components(nodes, edges) -> int:
    parent = {n: n for n in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edges:
        parent[find(e.u)] = find(e.v)
    return len({find(n) for n in nodes})


def is_cooriented(t: OrigamiTemplate) -> bool:
    return not any(e.is_loop for e in t.edges)


def is_orientable(t: OrigamiTemplate) -> bool:
    """The template graph is bipartite (a loop rules this out)."""
    colour: dict = {}
    for start in t.nodes:
        if start in colour:
            continue
        colour[start] = 0
        stack = [start]
        while stack:
            x = stack.pop()
            for k in t.incident(x):
                y = t.edges[k].other(x)
                if y not in colour:
                    colour[y] = 1 - colour[x]
                    stack.append(y)
                elif colour[y] == colour[x]:
                    return False
    return True


def graph_is_tree(t: OrigamiTemplate) -> bool:
    return (is_cooriented(t) and len(t.edges) == len(t.nodes) - 1
            and _components(t.nodes, t.edges) == 1)


@dataclass
class TemplateReport:
    connected: bool
    delzant: dict = field(default_factory=dict)      # node -> (ok, witness)
    condition1: list = field(default_factory=list)   # (edge index, ok, reason)
    condition2: list = field(default_factory=list)   # (node, e1, e2, ok, reason)
    dimensions_agree: bool = True

    @property
    def valid(self) -> bool:
        return (self.connected and self.dimensions_agree
                and all(ok for ok, _ in self.delzant.values())
                and all(ok for _, ok, _ in self.condition1)
                and all(c[3] for c in self.condition2))

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "connected": self.connected,
            "dimensions_agree": self.dimensions_agree,
            "delzant": {str(n): {"ok": ok, "witness": w} for n, (ok, w) in self.delzant.items()},
            "condition1": [{"edge": k, "ok": ok, "reason": r} for k, ok, r in self.condition1],
            "condition2": [{"node": str(n), "edges": [a, b], "ok": ok, "reason": r}
                           for n, a, b, ok, r in self.condition2],
        }


def validate_template(t: OrigamiTemplate) -> TemplateReport:
    rep = TemplateReport(connected=_components(t.nodes, t.edges) == 1 if t.nodes else False)
    rep.dimensions_agree = len({P.dim for P in t.nodes.values()}) == 1
    for n, P in t.nodes.items():
        d = is_delzant(P)
        rep.delzant[n] = (d.ok, None if d.ok else
                          {"vertex": [str(c) for c in d.vertex], "determinant": d.determinant})
    for k, e in enumerate(t.edges):
        Pu, Pv = t.nodes[e.u], t.nodes[e.v]
        if not (0 <= e.facet_u < Pu.facet_count and 0 <= e.facet_v < Pv.facet_count):
            rep.condition1.append((k, False, "facet index out of range"))
            continue
        try:
            ok = coincide_near_facet(Pu, e.facet_u, Pv, e.facet_v)
            rep.condition1.append((k, ok, "" if ok else "polytopes differ near the fold facet"))
        except FacetMismatch as exc:
            rep.condition1.append((k, False, str(exc)))
    for n, P in t.nodes.items():
        inc = t.incident(n)
        for a in range(len(inc)):
            for b in range(a + 1, len(inc)):
                fa, fb = t.edges[inc[a]].facet_at(n), t.edges[inc[b]].facet_at(n)
                if fa == fb:
                    rep.condition2.append((n, inc[a], inc[b], False, f"both edges use facet {fa}"))
                elif P.adjacent(fa, fb):
                    rep.condition2.append((n, inc[a], inc[b], False, f"facets {fa} and {fb} meet"))
                else:
                    rep.condition2.append((n, inc[a], inc[b], True, ""))
    return rep


def _require_tree(t: OrigamiTemplate) -> None:
    if not is_cooriented(t):
        raise NotCooriented("template graph has a loop")
    rep = validate_template(t)
    if not rep.valid:
        raise InvalidTemplate(f"template fails validation: {rep.to_json()}")
    if not graph_is_tree(t):
        raise NotATree("orbit space is not a disc: the template graph has a cycle")


# -- faces of the orbit space --------------------------------------------------------

def _face_points(P: RationalPolytope, facets: frozenset[int]) -> frozenset:
    return frozenset(v for v, tight in zip(P.vertices, P.vertex_facets) if facets <= set(tight))


def _nonfold_faces(P: RationalPolytope, folds: set[int]) -> list[frozenset[int]]:
    """Facet sets of the nonempty faces of P avoiding fold facets."""
    out = {frozenset()}
    for tight in P.vertex_facets:
        free = [f for f in tight if f not in folds]
        for mask in range(1 << len(free)):
            out.add(frozenset(f for b, f in enumerate(free) if mask >> b & 1))
    return sorted(out, key=lambda s: (len(s), sorted(s)))


@dataclass
class FacetClass:
    members: frozenset          # {(node, facet)}
    normal: SignClass
    hyperplane: tuple            # (primitive normal, offset) of a representative


@dataclass
class OrbitPoset:
    S_Q: SimplicialPoset
    nu: CharacteristicFunction
    provenance: dict[int, FacetClass]


class _UF:
    def __init__(self):
        self.p: dict = {}

    def add(self, x):
        self.p.setdefault(x, x)

    def find(self, x):
        root = x
        while self.p[root] != root:
            root = self.p[root]
        while self.p[x] != root:
            self.p[x], x = root, self.p[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.p[max(ra, rb, key=repr)] = min(ra, rb, key=repr)


def _glue_faces(t: OrigamiTemplate):
    """Union-find over (node, non-fold facet set) by elementary neighbourliness."""
    uf = _UF()
    folds = {n: set(t.fold_facets(n).values()) for n in t.nodes}
    faces = {n: _nonfold_faces(P, folds[n]) for n, P in t.nodes.items()}
    for n in t.nodes:
        for f in faces[n]:
            uf.add((n, f))
    for e in t.edges:
        Pu, Pv = t.nodes[e.u], t.nodes[e.v]
        by_trace: dict = {}
        for f in faces[e.u]:
            tr = _face_points(Pu, f | {e.facet_u})
            if tr:
                by_trace.setdefault(tr, []).append(f)
        for g in faces[e.v]:
            tr = _face_points(Pv, g | {e.facet_v})
            if not tr:
                continue
            for f in by_trace.get(tr, []):
                if len(f) == len(g):
                    uf.union((e.u, f), (e.v, g))
    return uf, faces


def facet_classes(t: OrigamiTemplate) -> list[FacetClass]:
    if not is_cooriented(t):
        raise NotCooriented("template graph has a loop")
    uf, faces = _glue_faces(t)
    groups: dict = {}
    for n in t.nodes:
        for f in faces[n]:
            if len(f) == 1:
                groups.setdefault(uf.find((n, f)), set()).add((n, next(iter(f))))
    out = []
    for members in groups.values():
        normals = {SignClass(t.nodes[n].normals[i]) for n, i in members}
        if len(normals) != 1:
            raise InconsistentNormals(f"facet class {sorted(members, key=repr)} has normals {normals}")
        planes = {t.nodes[n].halfspace(i) for n, i in members}
        if len(planes) != 1:
            raise InconsistentNormals(f"facet class {sorted(members, key=repr)} spans several hyperplanes")
        n0, i0 = min(members, key=repr)
        out.append(FacetClass(frozenset(members), normals.pop(), t.nodes[n0].halfspace(i0)))
    out.sort(key=lambda c: repr(sorted(c.members, key=repr)))
    return out


def orbit_poset_glued(t: OrigamiTemplate) -> OrbitPoset:
    """Faces of Q as classes of glued non-fold faces, ordered by reversed inclusion."""
    _require_tree(t)
    uf, faces = _glue_faces(t)
    fc = facet_classes(t)
    cls_of_facet = {}
    for k, c in enumerate(fc):
        for m in c.members:
            cls_of_facet[m] = k
    items: dict = {}
    labels: dict = {}
    order = []
    for n in t.nodes:
        for f in faces[n]:
            root = uf.find((n, f))
            d = {uf.find((n, frozenset([x]))): uf.find((n, f - {x})) for x in f}
            if root in items:
                if items[root] != d:
                    raise InconsistentGluing(f"glued faces {root} and {(n, f)} disagree")
                continue
            items[root] = d
            order.append(root)
            if len(f) == 1:
                labels[root] = cls_of_facet[(n, next(iter(f)))]
    S = _assemble({k: items[k] for k in order}, labels=labels, validate=True)
    values = {v: fc[S.label(v)].normal for v in S.vertices}
    nu = CharacteristicFunction(t.dim, values)
    prov = {v: fc[S.label(v)] for v in S.vertices}
    rep = is_cell_sphere(S) if S.dim in (1, 2) else None
    if rep is not None and not rep.is_sphere:
        raise InvalidTemplate(f"orbit poset is not a sphere: {rep.reasons}")
    return OrbitPoset(S, nu, prov)


def orbit_poset_as_connected_sum(t: OrigamiTemplate) -> OrbitPoset:
    """Tree connected sum of the dual weighted spheres of the node polytopes."""
    _require_tree(t)
    nodes = list(t.nodes)
    index = {n: k for k, n in enumerate(nodes)}
    pieces, weights, fold, xi = {}, {}, {}, {}
    duals = {n: dual_weighted_sphere(P) for n, P in t.nodes.items()}
    for n in nodes:
        pieces[index[n]] = duals[n].K
        weights[index[n]] = duals[n].nu
    edges = []
    for k, e in enumerate(t.edges):
        edges.append((index[e.u], index[e.v]))
        Ku, Kv = duals[e.u].K, duals[e.v].K
        iu, iv = Ku.vertex_by_label(e.facet_u), Kv.vertex_by_label(e.facet_v)
        fold[(index[e.u], k)] = iu
        fold[(index[e.v], k)] = iv
        # link elements matched by the geometric face they cut out of the fold
        trace_v = {}
        for j in Kv.upset(iv):
            lk = Kv.complement(j, iv)
            fs = frozenset(Kv.label(x) for x in Kv.verts[j])
            trace_v[_face_points(t.nodes[e.v], fs)] = lk
        m = {}
        for j in Ku.upset(iu):
            lk = Ku.complement(j, iu)
            fs = frozenset(Ku.label(x) for x in Ku.verts[j])
            tr = _face_points(t.nodes[e.u], fs)
            if tr not in trace_v:
                raise FacetMismatch(f"edge {k}: face {sorted(fs)} of node {e.u} has no partner")
            m[lk] = trace_v[tr]
        xi[k] = m
    sl = Slicing(list(range(len(nodes))), edges, pieces, fold, xi, weights=weights)
    K, out = tree_connected_sum(sl)
    lam = out.ambient_weights
    return OrbitPoset(K, lam, {})


def orbit_identity_holds(t: OrigamiTemplate) -> bool:
    """The glued orbit poset and the connected sum agree as weighted posets."""
    a, b = orbit_poset_glued(t), orbit_poset_as_connected_sum(t)
    ca = {v: a.nu[v] for v in a.S_Q.vertices}
    cb = {v: b.nu[v] for v in b.S_Q.vertices}
    return isomorphic(a.S_Q, b.S_Q, ca, cb) is not None


# -- induced templates -----------------------------------------------------------------

def induced_template(t: OrigamiTemplate, fc: FacetClass) -> OrigamiTemplate:
    """Template on the hyperplane of a facet class (one dimension lower)."""
    if t.dim < 2:
        raise EmptyIntersection("a 1-dimensional template has no induced templates")
    members = {}
    for n, i in fc.members:
        if n in members:
            raise InvalidTemplate(f"node {n} contributes two facets to one class")
        members[n] = i
    if not members:
        raise EmptyIntersection("empty facet class")
    nodes = {n: t.nodes[n].facet_polytope(i) for n, i in members.items()}
    edges = []
    for e in t.edges:
        if e.u not in members or e.v not in members:
            continue
        fu, fv = members[e.u], members[e.v]
        Pu, Pv = t.nodes[e.u], t.nodes[e.v]
        tu = _face_points(Pu, frozenset([fu, e.facet_u]))
        tv = _face_points(Pv, frozenset([fv, e.facet_v]))
        if not tu or tu != tv:
            continue
        nu_ = Pu.neighbours(fu)
        nv_ = Pv.neighbours(fv)
        if e.facet_u not in nu_ or e.facet_v not in nv_:
            raise EmptyIntersection(f"fold facet of edge {e} does not meet the class facet in a ridge")
        edges.append(TemplateEdge(e.u, e.v, nu_.index(e.facet_u), nv_.index(e.facet_v)))
    out = OrigamiTemplate(nodes, edges, name=f"{t.name}|{fc.hyperplane}" if t.name else "")
    if _components(out.nodes, out.edges) != 1:
        raise InvalidTemplate("induced graph is disconnected")
    return out


# -- rendering ---------------------------------------------------------------------------

_PALETTE = ["#f5d547", "#7bc96f", "#f4a259", "#7aa6e8", "#c38fd1", "#e87a7a", "#8fd1c8"]


def _polygon_cycle(P: RationalPolytope) -> list:
    # walk the facet cycle: consecutive facets share a vertex
    start = 0
    order = [start]
    prev = None
    while True:
        cur = order[-1]
        nxt = [g for g in P.neighbours(cur) if g != prev and g not in order[1:]]
        if not nxt or (nxt[0] == start):
            break
        prev = cur
        order.append(nxt[0])
        if len(order) > P.facet_count:
            break
    pts = []
    for a, b in zip(order, order[1:] + order[:1]):
        v = next(v for v, tight in zip(P.vertices, P.vertex_facets) if set(tight) == {a, b})
        pts.append(v)
    return pts


def render_svg(t: OrigamiTemplate, scale: float = 60.0, margin: float = 20.0) -> str:
    if t.dim != 2:
        raise InvalidTemplate("only 2-dimensional templates are rendered")
    allpts = [v for P in t.nodes.values() for v in P.vertices]
    xs = [float(p[0]) for p in allpts]
    ys = [float(p[1]) for p in allpts]
    x0, y1 = min(xs), max(ys)
    w = (max(xs) - x0) * scale + 2 * margin
    h = (y1 - min(ys)) * scale + 2 * margin

    def tr(p):
        return (margin + (float(p[0]) - x0) * scale, margin + (y1 - float(p[1])) * scale)

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0f}" height="{h:.0f}">']
    for k, (n, P) in enumerate(t.nodes.items()):
        pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in map(tr, _polygon_cycle(P)))
        parts.append(f'<polygon points="{pts}" fill="{_PALETTE[k % len(_PALETTE)]}" '
                     f'fill-opacity="0.5" stroke="black"><title>{n}</title></polygon>')
    for e in t.edges:
        P = t.nodes[e.u]
        a, b = sorted(P.facet_point_set(e.facet_u))
        (xa, ya), (xb, yb) = tr(a), tr(b)
        parts.append(f'<line x1="{xa:.2f}" y1="{ya:.2f}" x2="{xb:.2f}" y2="{yb:.2f}" '
                     f'stroke="red" stroke-width="4"/>')
    parts.append("</svg>")
    return "\n".join(parts)
