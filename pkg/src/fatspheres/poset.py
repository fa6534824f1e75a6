"""Simplicial posets (simplicial cell complexes).

Every simplex carries a stable integer id; id 0 is the empty simplex.  A simplex
is stored through its sorted vertex ids and, aligned with them, the ids of its
codimension-one faces: ``faces[I][k]`` is the face of ``I`` opposite the vertex
``verts[I][k]``.  Vertex sets do not identify simplices, so repeated vertex
sets (the 2-gon, the dihedron) are ordinary objects here.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Hashable, Iterable, Mapping, Sequence

from .errors import InconsistentGluing, UnknownSimplex, UnsupportedDimension

EMPTY = 0


class SimplicialPoset:
    """Immutable simplicial poset.

    Parameters
    ----------
    verts, faces
        Per-element sorted vertex ids and aligned codimension-one faces.
    labels
        Optional user labels of vertices (``vertex id -> label``).
    origin
        Optional provenance, ``element id -> id in some parent poset``.
    """

    def __init__(
        self,
        verts: Sequence[Sequence[int]],
        faces: Sequence[Sequence[int]],
        labels: Mapping[int, Any] | None = None,
        origin: Sequence[int] | None = None,
        validate: bool = True,
    ):
        self.verts: tuple[tuple[int, ...], ...] = tuple(tuple(v) for v in verts)
        self.faces: tuple[tuple[int, ...], ...] = tuple(tuple(f) for f in faces)
        self.labels: dict[int, Any] = dict(labels or {})
        self.origin: tuple[int, ...] | None = tuple(origin) if origin is not None else None
        if validate:
            self._validate()

    # -- structure -------------------------------------------------------
    def _validate(self) -> None:
        n = len(self.verts)
        if n == 0 or self.verts[0] != () or self.faces[0] != ():
            raise InconsistentGluing("element 0 must be the empty simplex")
        if len(self.faces) != n:
            raise InconsistentGluing("verts/faces length mismatch")
        verts, faces = self.verts, self.faces
        for i in range(1, n):
            vs, fs = verts[i], faces[i]
            k = len(vs)
            if k == 0:
                raise InconsistentGluing(f"simplex {i}: second minimal element")
            if len(fs) != k or list(vs) != sorted(set(vs)):
                raise InconsistentGluing(f"simplex {i}: malformed vertex/face lists")
            if k == 1:
                if vs != (i,) or fs != (EMPTY,):
                    raise InconsistentGluing(f"vertex {i} malformed")
                continue
            for j, f in enumerate(fs):
                if not 0 < f < n or verts[f] != vs[:j] + vs[j + 1:]:
                    raise InconsistentGluing(f"simplex {i}: face {f} has the wrong vertex set")
            if k >= 3:
                for a in range(k):
                    for b in range(a + 1, k):
                        fa = self.face(fs[a], vs[b])
                        fb = self.face(fs[b], vs[a])
                        if fa != fb:
                            raise InconsistentGluing(
                                f"simplex {i}: lower interval is not a Boolean lattice")

    def __len__(self) -> int:
        return len(self.verts)

    def __repr__(self) -> str:
        return f"SimplicialPoset(dim={self.dim}, f={self.f_vector})"

    def rank(self, i: int) -> int:
        return len(self.verts[i])

    def check(self, i: int) -> None:
        if not (isinstance(i, int) and 0 <= i < len(self.verts)):
            raise UnknownSimplex(i)

    @cached_property
    def dim(self) -> int:
        return max(len(v) for v in self.verts) - 1

    @cached_property
    def by_rank(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.dim + 2)]
        for i, v in enumerate(self.verts):
            out[len(v)].append(i)
        return tuple(tuple(x) for x in out)

    @property
    def vertices(self) -> tuple[int, ...]:
        return self.by_rank[1] if self.dim >= 0 else ()

    @property
    def edges(self) -> tuple[int, ...]:
        return self.by_rank[2] if self.dim >= 1 else ()

    @cached_property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(x) for x in self.by_rank[1:])

    @cached_property
    def euler_characteristic(self) -> int:
        return sum((-1) ** k * f for k, f in enumerate(self.f_vector))

    @cached_property
    def cofaces(self) -> tuple[tuple[int, ...], ...]:
        up: list[list[int]] = [[] for _ in self.verts]
        for i, fs in enumerate(self.faces):
            for f in fs:
                up[f].append(i)
        return tuple(tuple(u) for u in up)

    @cached_property
    def maximal(self) -> tuple[int, ...]:
        return tuple(i for i, u in enumerate(self.cofaces) if not u)

    @cached_property
    def is_pure(self) -> bool:
        return all(len(self.verts[i]) == self.dim + 1 for i in self.maximal)

    def face(self, i: int, v: int) -> int:
        """The face of ``i`` opposite its vertex ``v``."""
        return self.faces[i][self.verts[i].index(v)]

    def subface(self, i: int, keep: Iterable[int]) -> int:
        """The unique face of ``i`` whose vertex set is ``keep``."""
        keep = set(keep)
        cur = i
        for v in self.verts[i]:
            if v not in keep:
                cur = self.face(cur, v)
        if set(self.verts[cur]) != keep:
            raise UnknownSimplex(f"{sorted(keep)} is not a vertex subset of simplex {i}")
        return cur

    def complement(self, j: int, i: int) -> int:
        """``J \\ I`` for ``I <= J``."""
        cur = j
        for v in self.verts[i]:
            cur = self.face(cur, v)
        return cur

    def is_face(self, i: int, j: int) -> bool:
        """Order relation ``i <= j``."""
        vi = self.verts[i]
        if not set(vi) <= set(self.verts[j]):
            return False
        return self.subface(j, vi) == i

    def upset(self, i: int) -> list[int]:
        """All ``J >= I`` in increasing rank, ``I`` first."""
        seen = {i}
        order = [i]
        queue = deque([i])
        while queue:
            x = queue.popleft()
            for y in self.cofaces[x]:
                if y not in seen:
                    seen.add(y)
                    order.append(y)
                    queue.append(y)
        return order

    def closure(self, ids: Iterable[int]) -> set[int]:
        """Downward closure of a set of simplices."""
        out: set[int] = set()
        stack = list(ids)
        while stack:
            x = stack.pop()
            if x in out:
                continue
            out.add(x)
            stack.extend(self.faces[x])
        out.add(EMPTY)
        return out

    @cached_property
    def adjacency(self) -> dict[int, set[int]]:
        """Vertex adjacency of the 1-skeleton (parallel edges collapse)."""
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for e in self.edges:
            a, b = self.verts[e]
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def edge_between(self, a: int, b: int) -> list[int]:
        return [e for e in self.cofaces[a] if len(self.verts[e]) == 2 and b in self.verts[e]]

    def restrict(self, ids: Iterable[int], labels: bool = True) -> "SimplicialPoset":
        """Standalone copy of a downward-closed subset; ``origin`` maps back."""
        keep = sorted(set(ids) | {EMPTY}, key=lambda x: (len(self.verts[x]), x))
        new = {old: k for k, old in enumerate(keep)}
        verts, faces = [], []
        try:
            for old in keep:
                verts.append(tuple(new[v] for v in self.verts[old]))
                faces.append(tuple(new[f] for f in self.faces[old]))
        except KeyError as exc:
            raise InconsistentGluing(f"subset is not downward closed at {exc}") from None
        # new ids preserve the relative order of old ids within a rank, so
        # sorted vertex tuples stay aligned with faces
        lab = {new[v]: self.labels[v] for v in keep if v in self.labels} if labels else {}
        return SimplicialPoset(verts, faces, lab, origin=keep, validate=False)

    def label(self, v: int) -> Any:
        return self.labels.get(v, v)

    def vertex_by_label(self, label: Any) -> int:
        for v, lab in self.labels.items():
            if lab == label:
                return v
        raise UnknownSimplex(label)

    def simplex_by_labels(self, labels: Iterable[Any]) -> list[int]:
        """All simplices whose vertex labels are exactly ``labels``."""
        want = {self.vertex_by_label(x) for x in labels}
        if not want:
            return [EMPTY]
        v0 = next(iter(want))
        return [j for j in self.upset(v0) if set(self.verts[j]) == want]

    # -- serialization ---------------------------------------------------
    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "simplices": [
                {"id": i, "rank": len(v), "faces": list(f)}
                for i, (v, f) in enumerate(zip(self.verts, self.faces))
            ],
            "labels": {str(k): _jsonable(v) for k, v in sorted(self.labels.items())},
        }

    @classmethod
    def from_json(cls, doc: Mapping) -> "SimplicialPoset":
        simplices = sorted(doc["simplices"], key=lambda s: (s["rank"], s["id"]))
        ids = [s["id"] for s in simplices]
        if len(set(ids)) != len(ids):
            raise InconsistentGluing("duplicate simplex ids")
        by_id = {s["id"]: s for s in simplices}
        vset: dict[Any, frozenset] = {}
        items: dict[Any, dict] = {}
        for s in simplices:
            sid, rank, fs = s["id"], s["rank"], list(s["faces"])
            if rank == 0:
                vset[sid] = frozenset()
                items[sid] = {}
                continue
            if rank == 1:
                vset[sid] = frozenset([sid])
                items[sid] = {sid: fs[0] if fs else None}
                continue
            try:
                fsets = [vset[f] for f in fs]
            except KeyError as exc:
                raise InconsistentGluing(f"simplex {sid}: unknown face {exc}") from None
            vs = frozenset().union(*fsets)
            if len(fs) != rank or len(vs) != rank:
                raise InconsistentGluing(f"simplex {sid}: faces do not form a simplex boundary")
            d = {}
            for f, fset in zip(fs, fsets):
                missing = vs - fset
                if len(missing) != 1 or by_id[f]["rank"] != rank - 1:
                    raise InconsistentGluing(f"simplex {sid}: bad face {f}")
                d[next(iter(missing))] = f
            vset[sid] = vs
            items[sid] = d
        empties = [s["id"] for s in simplices if s["rank"] == 0]
        if len(empties) != 1:
            raise InconsistentGluing("need exactly one empty simplex")
        for sid, d in items.items():
            if len(d) == 1:
                items[sid] = {sid: empties[0]}
        labels = {}
        for k, v in (doc.get("labels") or {}).items():
            labels[_int_or_str(k)] = _unjson(v)
        return _assemble(items, labels=labels)


def _jsonable(v):
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    return v


def _unjson(v):
    if isinstance(v, list):
        return tuple(_unjson(x) for x in v)
    return v


def _int_or_str(k):
    try:
        return int(k)
    except (TypeError, ValueError):
        return k


def _assemble(
    items: Mapping[Hashable, Mapping[Hashable, Hashable]],
    labels: Mapping[Hashable, Any] | None = None,
    validate: bool = True,
    keep_origin: bool = False,
) -> SimplicialPoset:
    """Build a poset from keyed elements.

    ``items[key]`` maps each vertex-key of the element to the key of the face
    opposite it.  The empty element has ``{}``; a vertex has ``{key: empty}``.
    Ids are assigned by rank, then insertion order.  ``labels`` is keyed by
    vertex-key.  With ``keep_origin`` the poset's ``origin`` holds the keys.
    """
    keys = sorted(items, key=lambda k, order={k: i for i, k in enumerate(items)}: (len(items[k]), order[k]))
    empties = [k for k in keys if not items[k]]
    if len(empties) != 1:
        raise InconsistentGluing(f"expected one empty simplex, found {len(empties)}")
    ident = {k: i for i, k in enumerate(keys)}
    verts, faces = [], []
    try:
        for k in keys:
            d = items[k]
            pairs = sorted((ident[v], ident[f]) for v, f in d.items())
            verts.append(tuple(p[0] for p in pairs))
            faces.append(tuple(p[1] for p in pairs))
    except KeyError as exc:
        raise InconsistentGluing(f"dangling reference {exc!r}") from None
    lab = {}
    if labels:
        for k, v in labels.items():
            if k in ident:
                lab[ident[k]] = v
    return SimplicialPoset(verts, faces, lab, origin=keys if keep_origin else None, validate=validate)


def from_facets(facets: Iterable[Sequence[Hashable]], validate: bool = False) -> SimplicialPoset:
    """Simplicial complex generated by facets given as vertex-label tuples."""
    items: dict[Hashable, dict] = {frozenset(): {}}
    order_labels: dict[Hashable, Any] = {}
    stack = []
    for f in facets:
        fs = frozenset(f)
        if len(fs) != len(f):
            raise InconsistentGluing(f"repeated vertex in {f!r}")
        stack.append(fs)
    # insert by rank so ids come out stable
    pending: dict[int, list[frozenset]] = {}
    seen = set()
    for fs in stack:
        todo = [fs]
        while todo:
            s = todo.pop()
            if s in seen:
                continue
            seen.add(s)
            pending.setdefault(len(s), []).append(s)
            if len(s) > 1:
                todo.extend(s - {v} for v in s)
    for r in sorted(pending):
        if r == 0:
            continue
        group = pending[r]
        if r == 1:
            group = sorted(group, key=lambda s: _sort_key(next(iter(s))))
        for s in group:
            if r == 1:
                (v,) = s
                items[s] = {s: frozenset()}
                order_labels[s] = v
            else:
                items[s] = {frozenset([v]): s - {v} for v in s}
    return _assemble(items, labels=order_labels, validate=validate)


def _sort_key(x):
    return (type(x).__name__, x)


def build_poset(
    maximal_simplices: Sequence[Sequence[Hashable]],
    identifications: Sequence[Sequence[tuple[int, Sequence[Hashable]]]] | None = None,
) -> SimplicialPoset:
    """Generate a simplicial poset from maximal simplices.

    ``maximal_simplices`` are vertex-label tuples; repeating a tuple gives
    distinct simplices on the same vertex set.  Without ``identifications``
    every proper face is glued to all faces with the same vertex set.  With
    ``identifications`` (groups of ``(simplex index, face labels)``) only the
    listed proper faces are glued, plus, recursively, their corresponding
    faces; vertices with equal labels are always the same vertex.
    """
    tops = [tuple(m) for m in maximal_simplices]
    if not tops or any(len(t) == 0 for t in tops):
        raise InconsistentGluing("maximal simplices must be nonempty vertex tuples")
    for t in tops:
        if len(set(t)) != len(t):
            raise InconsistentGluing(f"repeated vertex in {t!r}")
    multiplicity = Counter(frozenset(t) for t in tops)

    parent: dict[Hashable, Hashable] = {}

    def find(x):
        root = x
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(x, x) != root:
            parent[x], x = root, parent[x]
        return root

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb, key=repr)] = min(ra, rb, key=repr)

    # node = (top index, frozenset of labels)
    nodes = []
    for idx, t in enumerate(tops):
        full = frozenset(t)
        stack = [full]
        seen = set()
        while stack:
            s = stack.pop()
            if s in seen:
                continue
            seen.add(s)
            nodes.append((idx, s))
            stack.extend(s - {v} for v in s)

    def node_key(idx, s):
        if len(s) <= 1:
            return ("v", s)
        if s == frozenset(tops[idx]) and multiplicity[s] > 1:
            return ("top", idx)
        if identifications is None:
            return ("set", s)
        return ("own", idx, s)

    for idx, s in nodes:
        parent.setdefault(node_key(idx, s), node_key(idx, s))

    if identifications:
        for group in identifications:
            refs = [(int(i), frozenset(f)) for i, f in group]
            for i, f in refs:
                if not 0 <= i < len(tops) or not f <= frozenset(tops[i]):
                    raise InconsistentGluing(f"face {sorted(f, key=repr)} is not in simplex {i}")
            base_i, base_f = refs[0]
            for i, f in refs[1:]:
                if f != base_f:
                    raise InconsistentGluing(
                        f"cannot glue faces with different vertex sets {sorted(base_f, key=repr)} / {sorted(f, key=repr)}")
                for sub in _subsets(f):
                    union(node_key(base_i, sub), node_key(i, sub))

    items: dict[Hashable, dict] = {}
    vertex_labels: dict[Hashable, Any] = {}
    for idx, s in sorted(nodes, key=lambda n: (len(n[1]), n[0])):
        k = find(node_key(idx, s))
        d = {find(node_key(idx, frozenset([v]))): find(node_key(idx, s - {v})) for v in s}
        if k in items:
            if items[k] != d:
                raise InconsistentGluing(f"glued simplices disagree on faces: {sorted(s, key=repr)}")
            continue
        items[k] = d
        if len(s) == 1:
            vertex_labels[k] = next(iter(s))
    items = {k: items[k] for k in sorted(items, key=lambda k: (len(items[k]), _vertex_order(k, vertex_labels)))}
    return _assemble(items, labels=vertex_labels)


def _vertex_order(k, vertex_labels):
    if k in vertex_labels:
        return (0, _sort_key(vertex_labels[k]))
    return (1, 0)


def _subsets(s: frozenset):
    items = sorted(s, key=repr)
    for mask in range(1 << len(items)):
        yield frozenset(x for b, x in enumerate(items) if mask >> b & 1)


# -- sub-posets ------------------------------------------------------------

@dataclass(frozen=True)
class SubPoset:
    """A subset of a parent poset, flagged as downward- or upward-closed."""

    parent: SimplicialPoset = field(repr=False)
    members: frozenset
    upward: bool = False

    def __post_init__(self):
        p = self.parent
        for x in self.members:
            p.check(x)
            nbrs = p.cofaces[x] if self.upward else p.faces[x]
            if any(y not in self.members for y in nbrs):
                kind = "upward" if self.upward else "downward"
                raise InconsistentGluing(f"subset is not {kind} closed at {x}")

    def __len__(self):
        return len(self.members)

    def __contains__(self, x):
        return x in self.members

    @property
    def vertices(self) -> frozenset:
        return frozenset(x for x in self.members if self.parent.rank(x) == 1)

    def as_poset(self) -> SimplicialPoset:
        if self.upward:
            raise TypeError("an open star is not a simplicial poset")
        return self.parent.restrict(self.members)


# -- links, stars, admissibility -----------------------------------------

def open_star(S: SimplicialPoset, i: int) -> SubPoset:
    S.check(i)
    return SubPoset(S, frozenset(S.upset(i)), upward=True)


def link_elements(S: SimplicialPoset, i: int) -> dict[int, int]:
    """``J -> J \\ I`` over the open star of ``I`` (the map D_I)."""
    S.check(i)
    return {j: S.complement(j, i) for j in S.upset(i)}


def link(S: SimplicialPoset, i: int) -> SimplicialPoset:
    """Link of ``i`` as a standalone poset; ``origin`` maps to ids of ``S``."""
    members = set(link_elements(S, i).values())
    return S.restrict(members)


def upper_link(S: SimplicialPoset, i: int) -> SimplicialPoset:
    """The upper interval above ``i`` as a simplicial poset (ranks shifted).

    This is the topological link; it agrees with :func:`link` exactly when
    ``i`` is admissible.
    """
    S.check(i)
    base = set(S.verts[i])
    items: dict[int, dict] = {}
    for j in S.upset(i):
        items[j] = {S.subface(j, base | {v}): S.face(j, v) for v in S.verts[j] if v not in base}
    return _assemble(items, validate=False)


def is_admissible(S: SimplicialPoset, i: int) -> bool:
    d = link_elements(S, i)
    return len(set(d.values())) == len(d)


def is_simplicial_complex(S: SimplicialPoset) -> bool:
    seen = set()
    for v in S.verts:
        if v in seen:
            return False
        seen.add(v)
    return True


# -- sphere recognition (dim <= 2) ----------------------------------------

@dataclass
class SphereCheckReport:
    dim: int
    is_pure: bool
    euler_characteristic: int
    edge_triangle_degrees: dict[int, int]
    vertex_link_shapes: dict[int, str]
    connected: bool
    verdict: str | None  # "cell-sphere" / "complex-sphere" / "not-sphere"; None if withheld
    reasons: list[str]

    @property
    def is_sphere(self) -> bool:
        return self.verdict in ("cell-sphere", "complex-sphere")

    def __bool__(self) -> bool:
        return self.is_sphere


def is_connected(S: SimplicialPoset) -> bool:
    vs = S.vertices
    if not vs:
        return False
    adj = S.adjacency
    seen = {vs[0]}
    stack = [vs[0]]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(vs)


def _ridge_degrees(S: SimplicialPoset) -> dict[int, int]:
    d = S.dim
    return {r: sum(1 for c in S.cofaces[r] if S.rank(c) == d + 1) for r in S.by_rank[d]}


def _is_zero_sphere(L: SimplicialPoset) -> bool:
    return L.dim == 0 and len(L.vertices) == 2


def _is_one_sphere(L: SimplicialPoset) -> bool:
    if L.dim != 1 or not L.is_pure:
        return False
    if any(len(L.cofaces[v]) != 2 for v in L.vertices):
        return False
    return is_connected(L)


def is_cell_sphere(S: SimplicialPoset) -> SphereCheckReport:
    """Recognize simplicial cell spheres of dimension 1 and 2."""
    d = S.dim
    reasons: list[str] = []
    degs = _ridge_degrees(S) if d >= 1 else {}
    hist = dict(sorted(Counter(degs.values()).items()))
    shapes: dict[int, str] = {}
    connected = is_connected(S) if d >= 0 else False
    report = SphereCheckReport(d, S.is_pure, S.euler_characteristic, hist, shapes,
                               connected, None, reasons)
    if d not in (1, 2):
        if d >= 3:
            raise UnsupportedDimension(f"sphere recognition is limited to dim <= 2, got {d}", report)
        raise UnsupportedDimension(f"sphere recognition needs dim 1 or 2, got {d}", report)
    for v in S.vertices:
        L = upper_link(S, v)
        if d == 1:
            shapes[v] = "two-points" if _is_zero_sphere(L) else f"{len(L.vertices)}-points"
        else:
            shapes[v] = "circle" if _is_one_sphere(L) else "not-circle"
    if not S.is_pure:
        reasons.append("not pure")
    if not connected:
        reasons.append("not connected")
    bad = {r: k for r, k in degs.items() if k != 2}
    if bad:
        r, k = next(iter(bad.items()))
        what = "vertex" if d == 1 else "edge"
        reasons.append(f"{len(bad)} {what}(s) not in exactly 2 maximal simplices (e.g. {r}: {k})")
    if d == 2:
        nc = [v for v, s in shapes.items() if s != "circle"]
        if nc:
            reasons.append(f"{len(nc)} vertex link(s) are not circles")
        if S.euler_characteristic != 2:
            reasons.append(f"Euler characteristic {S.euler_characteristic} != 2")
    else:
        if S.euler_characteristic != 0:
            reasons.append(f"Euler characteristic {S.euler_characteristic} != 0")
    if reasons:
        report.verdict = "not-sphere"
    else:
        report.verdict = "complex-sphere" if is_simplicial_complex(S) else "cell-sphere"
    return report


# -- standard objects --------------------------------------------------------

def simplex_boundary(n_vertices: int = 4) -> SimplicialPoset:
    from itertools import combinations
    vs = range(1, n_vertices + 1)
    return from_facets(combinations(vs, n_vertices - 1))


def cycle(k: int) -> SimplicialPoset:
    """The k-gon C_k (k >= 2; C_2 is the 2-gon poset)."""
    if k == 2:
        return build_poset([(1, 2), (1, 2)])
    return from_facets([(i, i % k + 1) for i in range(1, k + 1)])


def octahedron() -> SimplicialPoset:
    # antipodal pairs (1,6), (2,4), (3,5)
    return from_facets([
        (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 2, 5),
        (6, 2, 3), (6, 3, 4), (6, 4, 5), (6, 2, 5),
    ])


def bipyramid(k: int = 3) -> SimplicialPoset:
    """Suspension of C_k with apexes 'N' and 'S'."""
    ring = list(range(1, k + 1))
    tri = []
    for i in range(k):
        a, b = ring[i], ring[(i + 1) % k]
        tri.append(("N", a, b))
        tri.append(("S", a, b))
    return from_facets(tri)
