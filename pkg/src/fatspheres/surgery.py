"""Connected sums of (weighted) spheres along vertices, slicings and width.

A slicing is a tree whose nodes carry cell spheres and whose edges carry a
pair of fold vertices plus an isomorphism between their links.  Gluing all of
them at once (``tree_connected_sum``) gives the ambient sphere K, the regions
R_v and the border cycles C_e.  ``cut_along_cycles`` goes the other way.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import (AdjacentFoldVertices, ConeNotSphere, InconsistentGluing, LinkMismatch,
                     NotACycle, NotAdmissible, NotATree, NotMutuallyOrdered, WeightMismatch)
from .iso import isomorphic
from .poset import (EMPTY, SimplicialPoset, SubPoset, _assemble, _is_one_sphere, _is_zero_sphere,
                    is_admissible, is_cell_sphere, link, link_elements)
from .weighted import CharacteristicFunction, WeightedSphere


@dataclass
class Slicing:
    """Tree of pieces glued along fold vertices.

    ``edges[e] = (u, v)``; ``xi[e]`` maps link elements of ``fold[(u, e)]`` in
    ``pieces[u]`` to link elements of ``fold[(v, e)]`` in ``pieces[v]``.
    The ambient/regions/cycles fields are filled by :func:`tree_connected_sum`
    and :func:`cut_along_cycles`.
    """

    nodes: list[int]
    edges: list[tuple[int, int]]
    pieces: dict[int, SimplicialPoset]
    fold: dict[tuple[int, int], int]
    xi: dict[int, dict[int, int]] = field(default_factory=dict)
    weights: dict[int, CharacteristicFunction] | None = None
    # derived
    ambient: SimplicialPoset | None = None
    ambient_weights: CharacteristicFunction | None = None
    regions: dict[int, SubPoset] | None = None
    cycles: dict[int, SubPoset] | None = None
    element_map: dict[tuple[int, int], int] | None = None

    def degree(self, v: int) -> int:
        return sum((a == v) + (b == v) for a, b in self.edges)

    def incident(self, v: int) -> list[int]:
        return [e for e, (a, b) in enumerate(self.edges) if v in (a, b)]

    def without_derived(self) -> "Slicing":
        return replace(self, ambient=None, ambient_weights=None, regions=None, cycles=None,
                       element_map=None)

    def to_json(self) -> dict:
        doc = {
            "tree": {
                "nodes": list(self.nodes),
                "edges": [
                    {"id": e, "u": u, "v": v,
                     "xi": sorted([a, b] for a, b in self.xi.get(e, {}).items())}
                    for e, (u, v) in enumerate(self.edges)
                ],
            },
            "pieces": [{"node": v, "poset": self.pieces[v].to_json()} for v in self.nodes],
            "fold_vertices": [
                {"node": v, "edge": e, "vertex": x} for (v, e), x in sorted(self.fold.items())
            ],
        }
        if self.weights:
            doc["weights"] = {str(v): w.to_json() for v, w in self.weights.items()}
        return doc

    @classmethod
    def from_json(cls, doc: Mapping) -> "Slicing":
        tree = doc["tree"]
        edges_doc = sorted(tree["edges"], key=lambda e: e["id"])
        edges = [(e["u"], e["v"]) for e in edges_doc]
        xi = {e["id"]: {a: b for a, b in e.get("xi", [])} for e in edges_doc if e.get("xi")}
        pieces = {p["node"]: SimplicialPoset.from_json(p["poset"]) for p in doc["pieces"]}
        fold = {(f["node"], f["edge"]): f["vertex"] for f in doc["fold_vertices"]}
        weights = None
        if "weights" in doc:
            weights = {int(k): CharacteristicFunction.from_json(w) for k, w in doc["weights"].items()}
        return cls(list(tree["nodes"]), edges, pieces, fold, xi, weights)


@dataclass
class WidthReport:
    per_region_vertex_counts: dict[int, int]
    width: int
    degree_check: dict[int, tuple[int, int]]  # node -> (degree, 2(width-2))


# -- helpers ---------------------------------------------------------------------

def check_tree(nodes: Sequence[int], edges: Sequence[tuple[int, int]]) -> None:
    ns = set(nodes)
    if len(ns) != len(nodes):
        raise NotATree("duplicate nodes")
    for u, v in edges:
        if u == v:
            raise NotATree(f"loop at node {u}")
        if u not in ns or v not in ns:
            raise NotATree(f"edge ({u}, {v}) has an unknown endpoint")
    if len(edges) != len(nodes) - 1:
        raise NotATree(f"{len(nodes)} nodes but {len(edges)} edges")
    adj: dict[int, list[int]] = {v: [] for v in nodes}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {nodes[0]} if nodes else set()
    queue = deque(seen)
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    if len(seen) != len(nodes):
        raise NotATree("graph is not connected")


def _validate_xi(S1, L1: set, S2, L2: set, xi: Mapping[int, int]) -> None:
    if set(xi) != L1 or set(xi.values()) != L2 or len(set(xi.values())) != len(xi):
        raise LinkMismatch("xi is not a bijection between the two links")
    for x in L1:
        y = xi[x]
        if S1.rank(x) != S2.rank(y):
            raise LinkMismatch(f"xi changes the rank of {x}")
        if sorted(xi[f] for f in S1.faces[x]) != sorted(S2.faces[y]):
            raise LinkMismatch(f"xi does not preserve the faces of {x}")


def find_link_isomorphism(S1, i1, S2, i2, lam1=None, lam2=None) -> dict[int, int]:
    """An isomorphism ``link(i1) -> link(i2)`` in ids of S1/S2 (weight preserving
    when characteristic functions are given)."""
    L1, L2 = link(S1, i1), link(S2, i2)
    ca = cb = None
    if lam1 is not None and lam2 is not None:
        ca = {v: lam1[L1.origin[v]] for v in L1.vertices}
        cb = {v: lam2[L2.origin[v]] for v in L2.vertices}
    m = isomorphic(L1, L2, ca, cb)
    if m is None:
        raise LinkMismatch("links are not isomorphic" + (" preserving weights" if ca else ""))
    return {L1.origin[a]: L2.origin[b] for a, b in m.items()}


# -- connected sums ------------------------------------------------------------------

def tree_connected_sum(sl: Slicing) -> tuple[SimplicialPoset, Slicing]:
    """Simultaneous connected sum over all tree edges.

    Returns the ambient poset and a copy of the slicing with ``ambient``,
    ``regions``, ``cycles`` (and ``ambient_weights`` for weighted pieces).
    """
    check_tree(sl.nodes, sl.edges)
    weighted = sl.weights is not None
    links: dict[tuple[int, int], set[int]] = {}
    removed: dict[int, set[int]] = {v: set() for v in sl.nodes}
    for e, (u, v) in enumerate(sl.edges):
        for node in (u, v):
            if (node, e) not in sl.fold:
                raise NotAdmissible(f"no fold vertex for node {node}, edge {e}")
            S = sl.pieces[node]
            i = sl.fold[(node, e)]
            S.check(i)
            if S.rank(i) != 1:
                raise NotAdmissible(f"fold element {i} of node {node} is not a vertex")
            d = link_elements(S, i)
            if len(set(d.values())) != len(d):
                raise NotAdmissible(f"vertex {i} of node {node} is not admissible")
            links[(node, e)] = set(d.values())
            removed[node] |= set(d)
    for node in sl.nodes:
        inc = sl.incident(node)
        S = sl.pieces[node]
        for a in range(len(inc)):
            for b in range(a + 1, len(inc)):
                x, y = sl.fold[(node, inc[a])], sl.fold[(node, inc[b])]
                if x == y or y in S.adjacency.get(x, ()):
                    raise AdjacentFoldVertices(
                        f"node {node}: fold vertices {x}, {y} (edges {inc[a]}, {inc[b]}) coincide or are adjacent")
    xis: dict[int, dict[int, int]] = {}
    for e, (u, v) in enumerate(sl.edges):
        Su, Sv = sl.pieces[u], sl.pieces[v]
        if e in sl.xi and sl.xi[e]:
            xi = dict(sl.xi[e])
            _validate_xi(Su, links[(u, e)], Sv, links[(v, e)], xi)
        else:
            lam_u = sl.weights[u] if weighted else None
            lam_v = sl.weights[v] if weighted else None
            xi = find_link_isomorphism(Su, sl.fold[(u, e)], Sv, sl.fold[(v, e)], lam_u, lam_v)
        if weighted:
            for x, y in xi.items():
                if Su.rank(x) == 1 and sl.weights[u][x] != sl.weights[v][y]:
                    raise WeightMismatch(
                        f"edge {e}: {sl.weights[u][x]} at ({u},{x}) vs {sl.weights[v][y]} at ({v},{y})")
        xis[e] = xi

    parent: dict[tuple[int, int], tuple[int, int]] = {}

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    kept: list[tuple[int, int]] = []
    for node in sl.nodes:
        S = sl.pieces[node]
        for i in range(len(S)):
            if i not in removed[node]:
                parent[(node, i)] = (node, i)
                kept.append((node, i))
    for e, (u, v) in enumerate(sl.edges):
        for x, y in xis[e].items():
            a, b = find((u, x)), find((v, y))
            if a != b:
                parent[max(a, b)] = min(a, b)
    members: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for key in kept:
        members.setdefault(find(key), []).append(key)
    for root, ms in members.items():
        nodes_seen = [m[0] for m in ms]
        if len(set(nodes_seen)) != len(nodes_seen):
            raise InconsistentGluing(f"two elements of one piece were identified: {ms}")
        ranks = {sl.pieces[n].rank(i) for n, i in ms}
        if len(ranks) != 1:
            raise InconsistentGluing(f"identified elements of different rank: {ms}")

    items: dict = {}
    labels: dict = {}
    order = sorted(members, key=lambda r: (sl.pieces[r[0]].rank(r[1]), sl.nodes.index(r[0]), r[1]))
    for root in order:
        node, i = root
        S = sl.pieces[node]
        d = {find((node, v)): find((node, S.face(i, v))) for v in S.verts[i]}
        for n2, i2 in members[root][1:]:
            S2 = sl.pieces[n2]
            d2 = {find((n2, v)): find((n2, S2.face(i2, v))) for v in S2.verts[i2]}
            if d2 != d:
                raise InconsistentGluing(f"identified simplices {root} / {(n2, i2)} disagree on faces")
        items[root] = d
        if S.rank(i) == 1:
            labels[root] = (node, S.label(i)) if len(sl.nodes) > 1 else S.label(i)
    K = _assemble(items, labels=labels, keep_origin=True)
    key_to_id = {k: j for j, k in enumerate(K.origin)}
    element_map = {key: key_to_id[find(key)] for key in kept}
    K = SimplicialPoset(K.verts, K.faces, K.labels, validate=False)

    regions = {}
    for node in sl.nodes:
        S = sl.pieces[node]
        ids = {element_map[(node, i)] for i in range(len(S)) if i not in removed[node]}
        regions[node] = SubPoset(K, frozenset(ids))
    cycles = {}
    for e, (u, v) in enumerate(sl.edges):
        cycles[e] = SubPoset(K, frozenset(element_map[(u, x)] for x in links[(u, e)]))

    amb_w = None
    if weighted:
        vals: dict[int, tuple[int, ...]] = {}
        for (node, i), j in element_map.items():
            if sl.pieces[node].rank(i) != 1:
                continue
            x = sl.weights[node].raw[i]
            if j in vals and sl.weights[node][i] != CharacteristicFunction(len(x), {0: vals[j]})[0]:
                raise WeightMismatch(f"vertex {j} receives two different weights")
            vals.setdefault(j, x)
        amb_w = CharacteristicFunction(next(iter(sl.weights.values())).n, vals)

    out = replace(sl, xi=xis, ambient=K, ambient_weights=amb_w, regions=regions, cycles=cycles,
                  element_map=element_map)
    return K, out


def connected_sum(S1: SimplicialPoset, i1: int, S2: SimplicialPoset, i2: int,
                  xi: Mapping[int, int] | None = None) -> SimplicialPoset:
    """``(S1 minus open star of i1) ⊔ (S2 minus open star of i2)`` glued along xi."""
    sl = Slicing([0, 1], [(0, 1)], {0: S1, 1: S2}, {(0, 0): i1, (1, 0): i2},
                 {0: dict(xi)} if xi else {})
    K, _ = tree_connected_sum(sl)
    return K


def weighted_connected_sum(W1: WeightedSphere, i1: int, W2: WeightedSphere, i2: int,
                           xi: Mapping[int, int] | None = None) -> WeightedSphere:
    sl = Slicing([0, 1], [(0, 1)], {0: W1.sphere, 1: W2.sphere}, {(0, 0): i1, (1, 0): i2},
                 {0: dict(xi)} if xi else {}, weights={0: W1.lam, 1: W2.lam})
    K, out = tree_connected_sum(sl)
    return WeightedSphere(K, out.ambient_weights)


# -- cutting -----------------------------------------------------------------------

def cycle_from_vertices(K: SimplicialPoset, seq: Sequence[int]) -> frozenset[int]:
    """Ridge ids of a cycle given by a vertex sequence (closed walk, no repeat of
    the first vertex at the end).  In dimension 1 the sequence is a vertex pair."""
    if K.dim == 1:
        if len(seq) != 2:
            raise NotACycle("a cycle in a 1-sphere is a pair of vertices")
        return frozenset(seq)
    out = []
    for a, b in zip(seq, list(seq[1:]) + [seq[0]]):
        es = K.edge_between(a, b)
        if len(es) != 1:
            raise NotACycle(f"{len(es)} edges between {a} and {b}")
        out.append(es[0])
    if len(set(out)) != len(out):
        raise NotACycle("cycle repeats an edge")
    return frozenset(out)


def ridge_tops(K: SimplicialPoset) -> dict[int, list[int]]:
    d = K.dim
    return {r: [c for c in K.cofaces[r] if K.rank(c) == d + 1] for r in K.by_rank[d]}


def validate_cycle(K: SimplicialPoset, ridges: Iterable[int]) -> frozenset[int]:
    d = K.dim
    rs = frozenset(ridges)
    if not rs or any(K.rank(r) != d for r in rs):
        raise NotACycle(f"cycle elements must be {d - 1}-simplices of K")
    C = K.restrict(K.closure(rs))
    if d == 2 and not _is_one_sphere(C):
        raise NotACycle("closed subposet is not a 1-sphere")
    if d == 1 and not _is_zero_sphere(C):
        raise NotACycle("closed subposet is not a 0-sphere")
    return rs


def sides(K: SimplicialPoset, ridges: frozenset[int], rt=None) -> list[set[int]]:
    """Components of top simplices when crossing ``ridges`` is forbidden."""
    rt = rt if rt is not None else ridge_tops(K)
    d = K.dim
    tops = K.by_rank[d + 1]
    seen: set[int] = set()
    comps = []
    for t in tops:
        if t in seen:
            continue
        comp = {t}
        seen.add(t)
        stack = [t]
        while stack:
            x = stack.pop()
            for r in K.faces[x]:
                if r in ridges:
                    continue
                for y in rt[r]:
                    if y not in seen:
                        seen.add(y)
                        comp.add(y)
                        stack.append(y)
        comps.append(comp)
    return comps


def cut_along_cycles(K: SimplicialPoset, cycles: Sequence[Iterable[int]]) -> Slicing:
    """Slicing of K determined by a mutually ordered family of cycles.

    Cycles are given as sets of ridge ids (edges of a 2-sphere, vertex pairs of
    a 1-sphere).  Node 0 holds the region containing the lowest-id top simplex;
    node ``c + 1`` holds the region just inside cycle ``c``; tree edge ``c``
    joins node ``c + 1`` to its parent.  Pieces are regions with every border
    cycle coned off by a fresh apex.
    """
    d = K.dim
    if d not in (1, 2) or not is_cell_sphere(K).is_sphere:
        raise ConeNotSphere("K must be a cell sphere of dimension 1 or 2")
    cyc = [validate_cycle(K, c) for c in cycles]
    rt = ridge_tops(K)
    tops = K.by_rank[d + 1]
    t0 = min(tops)
    inside: list[frozenset[int]] = []
    for c in cyc:
        comps = sides(K, c, rt)
        if len(comps) != 2:
            raise NotACycle(f"cycle splits K into {len(comps)} parts")
        inside.append(frozenset(next(x for x in comps if t0 not in x)))
    for a in range(len(cyc)):
        for b in range(a + 1, len(cyc)):
            A, B = inside[a], inside[b]
            if not (A <= B or B <= A or not (A & B)):
                raise NotMutuallyOrdered(f"cycles {a} and {b} cross")
    order = sorted(range(len(cyc)), key=lambda c: (-len(inside[c]), c))
    parent_node: dict[int, int] = {}
    for pos, c in enumerate(order):
        par = 0
        for prev in order[:pos]:
            if inside[c] <= inside[prev]:
                par = prev + 1
        parent_node[c] = par
    nodes = [0] + [c + 1 for c in range(len(cyc))]
    edges = [(parent_node[c], c + 1) for c in range(len(cyc))]
    children: dict[int, list[int]] = {x: [] for x in nodes}
    for c in range(len(cyc)):
        children[parent_node[c]].append(c)
    region_tops: dict[int, set[int]] = {}
    for x in nodes:
        base = set(tops) if x == 0 else set(inside[x - 1])
        for c in children[x]:
            base -= inside[c]
        region_tops[x] = base

    pieces, fold, xi = {}, {}, {}
    piece_ids: dict[int, dict] = {}
    regions, cyc_sub, element_map = {}, {}, {}
    for x in nodes:
        inc = [c for c in range(len(cyc)) if x in edges[c]]
        elems = K.closure(region_tops[x])
        for c in inc:
            elems |= K.closure(cyc[c])
        items: dict = {}
        labels: dict = {}
        for i in sorted(elems, key=lambda i: (K.rank(i), i)):
            items[("k", i)] = {("k", v): ("k", K.face(i, v)) for v in K.verts[i]}
            if K.rank(i) == 1:
                labels[("k", i)] = K.label(i)
        for c in inc:
            apex = ("c", c, EMPTY)
            items[apex] = {apex: ("k", EMPTY)}
            labels[apex] = ("apex", c)
            for s in sorted(K.closure(cyc[c]) - {EMPTY}, key=lambda i: (K.rank(i), i)):
                dd = {("k", v): ("c", c, K.face(s, v)) for v in K.verts[s]}
                dd[apex] = ("k", s)
                items[("c", c, s)] = dd
        P = _assemble(items, labels=labels, keep_origin=True)
        ids = {k: j for j, k in enumerate(P.origin)}
        P = SimplicialPoset(P.verts, P.faces, P.labels, validate=True)
        rep = is_cell_sphere(P)
        if not rep.is_sphere:
            raise ConeNotSphere(f"piece {x} is not a sphere: {rep.reasons}")
        for c in inc:
            a = ids[("c", c, EMPTY)]
            if not is_admissible(P, a):
                raise ConeNotSphere(f"apex of cycle {c} in piece {x} is not admissible")
            fold[(x, c)] = a
        pieces[x] = P
        piece_ids[x] = ids
        regions[x] = SubPoset(K, frozenset(elems))
        for i in elems:
            element_map[(x, ids[("k", i)])] = i
    for c, (u, v) in enumerate(edges):
        cl = K.closure(cyc[c])
        xi[c] = {piece_ids[u][("k", s)]: piece_ids[v][("k", s)] for s in cl}
        cyc_sub[c] = SubPoset(K, frozenset(cl))
    return Slicing(nodes, edges, pieces, fold, xi, ambient=K, regions=regions, cycles=cyc_sub,
                   element_map=element_map)


# -- width ---------------------------------------------------------------------------

def width(sl: Slicing) -> WidthReport:
    if sl.regions is None:
        raise ValueError("slicing has no derived regions; run tree_connected_sum first")
    counts = {x: len(sl.regions[x].vertices) for x in sl.nodes}
    w = max(counts.values())
    deg = {x: (sl.degree(x), 2 * (w - 2)) for x in sl.nodes}
    return WidthReport(counts, w, deg)


def check_degree_bound(sl: Slicing, N: int) -> tuple[bool, list[tuple[int, int]]]:
    """Every node degree is at most 2(N - 2) when the width is at most N."""
    bad = [(x, sl.degree(x)) for x in sl.nodes if sl.degree(x) > 2 * (N - 2)]
    return (not bad, bad)


def trivial_slicing(K: SimplicialPoset) -> Slicing:
    return cut_along_cycles(K, [])
