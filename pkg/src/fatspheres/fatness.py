"""Exhaustive fatness oracle for small spheres of dimension 1 and 2.

A subproblem is a region: a set T of top simplices and a set B of border
cycles.  Either the region is left alone (its vertex count is the width of
that leaf) or it is split by one more cycle lying in it, laminar with B.
Every mutually ordered family arises from some sequence of such splits, so
the memoised minimum over this recursion is ft(K) once all cycles shorter
than the incumbent have been tried.  A cycle of length l forces width >= l,
hence cycles of length >= the incumbent never need to be enumerated.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

from .errors import BudgetExceeded
from .poset import SimplicialPoset, is_cell_sphere
from .surgery import Slicing, check_degree_bound, cut_along_cycles, ridge_tops, width

INF = math.inf


@dataclass
class FatnessResult:
    upper: int
    lower: int
    exhausted: bool
    best: Slicing | None
    cycles: list[frozenset[int]]
    stats: dict = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return self.exhausted and self.lower == self.upper

    @property
    def value(self) -> int:
        return self.upper


class _Search:
    def __init__(self, K: SimplicialPoset, max_len: int, deadline: float | None,
                 full_only: bool, small_side_A):
        self.K = K
        self.d = K.dim
        self.max_len = max_len
        self.deadline = deadline
        self.full_only = full_only
        self.small_side_A = small_side_A
        self.tops = frozenset(K.by_rank[self.d + 1])
        self.rt = ridge_tops(K)
        self.memo: dict = {}
        self.choice: dict = {}
        self.side_memo: dict = {}
        self.timed_out = False
        self.stats = {"subproblems": 0, "cycles_checked": 0, "leaves": 0,
                      "degree_violations": [], "small_side_violations": []}
        self._ridge_verts = {r: frozenset(K.verts[r]) for r in K.by_rank[self.d]}

    # -- geometry of one cycle --------------------------------------------------
    def sides(self, C: frozenset[int]):
        got = self.side_memo.get(C)
        if got is not None:
            return got
        K = self.K
        start = min(self.tops)
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for r in K.faces[x]:
                if r in C:
                    continue
                for y in self.rt[r]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
        a = frozenset(seen)
        b = self.tops - a
        if b:
            # the other side must be connected too, else C is not a separating cycle
            s0 = min(b)
            seen2 = {s0}
            stack = [s0]
            while stack:
                x = stack.pop()
                for r in K.faces[x]:
                    if r in C:
                        continue
                    for y in self.rt[r]:
                        if y not in seen2:
                            seen2.add(y)
                            stack.append(y)
            if len(seen2) != len(b):
                b = None
        out = (a, b)
        self.side_memo[C] = out
        return out

    def cycle_vertices(self, C) -> frozenset[int]:
        if self.d == 1:
            return frozenset(C)
        out = set()
        for r in C:
            out |= self._ridge_verts[r]
        return frozenset(out)

    def region_vertices(self, T, B) -> set[int]:
        K = self.K
        vs = set()
        for t in T:
            vs.update(K.verts[t])
        for C in B:
            vs |= self.cycle_vertices(C)
        return vs

    # -- candidate cycles ---------------------------------------------------------
    def candidates(self, T, limit):
        K = self.K
        if self.d == 1:
            vs = sorted(self.region_vertices(T, ()))
            if limit < 2:
                return []
            return [frozenset((a, b)) for i, a in enumerate(vs) for b in vs[i + 1:]]
        edges = set()
        for t in T:
            edges.update(K.faces[t])
        adj: dict[int, list[tuple[int, int]]] = {}
        for e in edges:
            a, b = K.verts[e]
            adj.setdefault(a, []).append((b, e))
            adj.setdefault(b, []).append((a, e))
        found = set()
        for s in sorted(adj):
            # simple cycles whose least vertex is s
            path_edges: list[int] = []
            on_path = {s}

            def dfs(x):
                for y, e in adj[x]:
                    if path_edges and e == path_edges[-1]:
                        continue
                    if y == s and len(path_edges) >= 1 and e not in path_edges:
                        if len(path_edges) + 1 >= 2:
                            found.add(frozenset(path_edges + [e]))
                        continue
                    if y <= s or y in on_path or len(path_edges) + 1 >= limit:
                        continue
                    on_path.add(y)
                    path_edges.append(e)
                    dfs(y)
                    path_edges.pop()
                    on_path.discard(y)

            dfs(s)
        out = sorted(found, key=lambda c: (len(c), sorted(c)))
        if self.full_only:
            out = [c for c in out if self.is_full(c)]
        return out

    def is_full(self, C) -> bool:
        vs = self.cycle_vertices(C)
        for e in self.K.by_rank[2]:
            if e not in C and set(self.K.verts[e]) <= vs:
                return False
        return True

    # -- leaves ----------------------------------------------------------------------
    def piece_ok(self, T, B) -> bool:
        K = self.K
        if self.d == 1:
            deg: dict[int, int] = {}
            parent: dict = {}

            def find(x):
                while parent.setdefault(x, x) != x:
                    x = parent[x]
                return x

            def union(a, b):
                parent[find(a)] = find(b)

            for t in T:
                a, b = K.verts[t]
                deg[a] = deg.get(a, 0) + 1
                deg[b] = deg.get(b, 0) + 1
                union(a, b)
            for n, C in enumerate(B):
                for v in C:
                    deg[v] = deg.get(v, 0) + 1
                    union(v, ("apex", n))
            if any(x != 2 for x in deg.values()):
                return False
            return len({find(x) for x in parent}) == 1
        edges = set()
        for t in T:
            edges.update(K.faces[t])
        for C in B:
            edges |= C
        vs = self.region_vertices(T, B)
        nV = len(vs) + len(B)
        nE = len(edges) + sum(len(self.cycle_vertices(C)) for C in B)
        nF = len(T) + sum(len(C) for C in B)
        if nV - nE + nF != 2:
            return False
        cnt = {e: 0 for e in edges}
        for t in T:
            for e in K.faces[t]:
                cnt[e] += 1
        for C in B:
            for e in C:
                cnt[e] += 1
        if any(c != 2 for c in cnt.values()):
            return False
        # vertex links are circles
        links: dict[int, list[tuple]] = {v: [] for v in vs}
        for t in T:
            for v in K.verts[t]:
                inc = [e for e in K.faces[t] if v in K.verts[e]]
                links[v].append((inc[0], inc[1]))
        for n, C in enumerate(B):
            for e in C:
                for v in K.verts[e]:
                    links[v].append((e, ("apex", n)))
        for v, ls in links.items():
            if not _is_circle(ls):
                return False
        parent: dict = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                x = parent[x]
            return x

        for e in edges:
            a, b = K.verts[e]
            parent[find(a)] = find(b)
        for v in vs:
            find(v)
        return len({find(v) for v in vs}) == 1

    # -- recursion -------------------------------------------------------------------
    def solve(self, T: frozenset, B: frozenset, floor: int):
        key = (T, B)
        if key in self.memo:
            return self.memo[key]
        if self.deadline is not None and time.monotonic() > self.deadline:
            self.timed_out = True
            raise _Timeout
        self.stats["subproblems"] += 1
        best = INF
        choice = None
        if self.piece_ok(T, B):
            self.stats["leaves"] += 1
            best = len(self.region_vertices(T, B))
            if self.d == 2 and len(B) > 2 * (best - 2):
                self.stats["degree_violations"].append((len(B), best))
        floor = max(floor, self.d + 1)
        if best > floor:
            limit = min(self.max_len, int(best) - 1 if best < INF else self.max_len)
            holes = {}
            for C in B:
                a, b = self.sides(C)
                holes[C] = b if a & T else a
            for C in self.candidates(T, limit):
                if C in B:
                    continue
                if len(self.cycle_vertices(C)) >= best:
                    continue
                self.stats["cycles_checked"] += 1
                sA, sB = self.sides(C)
                if sB is None or not sB:
                    continue
                T1, T2 = T & sA, T & sB
                if not T1 or not T2:
                    continue
                B1, B2 = [C], [C]
                laminar = True
                for b, h in holes.items():
                    if h <= sA:
                        B1.append(b)
                    elif h <= sB:
                        B2.append(b)
                    else:
                        laminar = False
                        break
                if not laminar:
                    continue
                self._small_side(C, sA, sB)
                v1 = self.solve(T1, frozenset(B1), floor)
                if v1 >= best:
                    continue
                v2 = self.solve(T2, frozenset(B2), floor)
                v = max(v1, v2)
                if v < best:
                    best, choice = v, C
                    if best <= floor:
                        break
        self.memo[key] = best
        self.choice[key] = choice
        return best

    def _small_side(self, C, sA, sB):
        if self.d != 2 or self.small_side_A is None:
            return
        K = self.K
        va = {v for t in sA for v in K.verts[t]}
        vb = {v for t in sB for v in K.verts[t]}
        n = len(self.cycle_vertices(C))
        bound = self.small_side_A(max(n, 3))
        if min(len(va), len(vb)) > bound:
            self.stats["small_side_violations"].append(tuple(sorted(C)))

    def family(self, T, B) -> list[frozenset[int]]:
        C = self.choice.get((T, B))
        if C is None:
            return []
        sA, sB = self.sides(C)
        holes = {}
        for b in B:
            a, bb = self.sides(b)
            holes[b] = bb if a & T else a
        B1 = frozenset([C] + [b for b, h in holes.items() if h <= sA])
        B2 = frozenset([C] + [b for b, h in holes.items() if h <= sB])
        return [C] + self.family(T & sA, B1) + self.family(T & sB, B2)


class _Timeout(Exception):
    pass


def _is_circle(pairs) -> bool:
    deg: dict = {}
    adj: dict = {}
    for a, b in pairs:
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    if not deg or any(x != 2 for x in deg.values()):
        return False
    start = next(iter(adj))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(deg)


def default_small_side_bound(n: int) -> float:
    """A(n, 3, 1/3) as a float, rounded up slightly."""
    return 4 * n * n * 9 * 3 / (math.sqrt(3) * math.pi) * (1 + 1e-12)


def fatness_bruteforce(K: SimplicialPoset, cycle_length_budget: int | None = None,
                       time_budget: float | None = None, full_cycles_only: bool = False,
                       audit_small_side: bool = True) -> FatnessResult:
    """Exact ft(K) for small spheres, or an interval when budgets bite.

    Raises BudgetExceeded (carrying the partial FatnessResult) on timeout.
    """
    if K.dim not in (1, 2) or not is_cell_sphere(K).is_sphere:
        raise ValueError("fatness is defined here for 1- and 2-dimensional cell spheres")
    nv = len(K.vertices)
    L = nv if cycle_length_budget is None else int(cycle_length_budget)
    deadline = None if time_budget is None else time.monotonic() + float(time_budget)
    s = _Search(K, L, deadline, full_cycles_only,
                default_small_side_bound if audit_small_side else None)
    root = (s.tops, frozenset())
    try:
        value = s.solve(root[0], root[1], 0)
        exhausted = True
    except _Timeout:
        exhausted = False
        value = min((v for (T, B), v in s.memo.items() if T == root[0] and not B), default=nv)
        value = min(value, nv)
    if value == INF:
        value = nv
    value = int(value)
    cycles = s.family(*root) if exhausted else []
    best = cut_along_cycles(K, cycles)
    w = width(best).width
    if exhausted and w != value:
        raise AssertionError(f"reconstructed width {w} != search value {value}")
    ok, bad = check_degree_bound(best, w)
    if not ok:
        s.stats["degree_violations"].append(("slicing", bad))
    if exhausted:
        lower = value if value <= L + 1 else L + 1
    else:
        lower = K.dim + 1
    s.stats["nonfull_in_best"] = (K.dim == 2 and any(not s.is_full(c) for c in cycles))
    res = FatnessResult(value, min(lower, value), exhausted, best, cycles, s.stats)
    if not exhausted:
        raise BudgetExceeded(f"time budget exhausted; ft(K) in [{res.lower}, {res.upper}]", res)
    return res
