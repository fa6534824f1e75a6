"""Proper vertex 4-coloring of 2-sphere 1-skeleta.

Greedy along a smallest-last order (every vertex sees at most five earlier
neighbours on a planar graph), Kempe-chain repair when a vertex sees all four
colors, exact backtracking as the last resort.
"""

from __future__ import annotations

import heapq
from itertools import combinations

from .errors import ColoringNotFound
from .poset import SimplicialPoset
from .weighted import Coloring

COLORS = (1, 2, 3, 4)


def _kempe_component(adj, color, start, a, b):
    comp = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in comp and color.get(y) in (a, b):
                comp.add(y)
                stack.append(y)
    return comp


def _try_kempe(adj, color, v) -> int | None:
    """Swap one Kempe chain so that some color becomes free at ``v``."""
    nbrs = sorted(adj[v])
    for a, b in combinations(COLORS, 2):
        for u in nbrs:
            if color.get(u) != a:
                continue
            comp = _kempe_component(adj, color, u, a, b)
            if any(color.get(w) == b for w in nbrs if w in comp):
                continue
            for w in comp:
                color[w] = b if color[w] == a else a
            free = set(COLORS) - {color[w] for w in nbrs if w in color}
            if free:
                return min(free)
            for w in comp:  # undo
                color[w] = b if color[w] == a else a
    return None


def _smallest_last(adj) -> list[int]:
    """Repeatedly remove a minimum-degree vertex (lowest id on ties); reversed."""
    deg = {v: len(ns) for v, ns in adj.items()}
    heap = [(d, v) for v, d in deg.items()]
    heapq.heapify(heap)
    removed: set[int] = set()
    out = []
    while heap:
        d, v = heapq.heappop(heap)
        if v in removed or d != deg[v]:
            continue
        removed.add(v)
        out.append(v)
        for w in adj[v]:
            if w not in removed:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return out[::-1]


def _backtrack(adj, order, color) -> bool:
    """Exact DSATUR search over the uncolored vertices; mutates ``color``."""
    rank = {v: k for k, v in enumerate(order)}
    seen = {v: {} for v in adj}  # neighbour colour -> multiplicity
    for v, c in color.items():
        for w in adj[v]:
            seen[w][c] = seen[w].get(c, 0) + 1
    uncolored = {v for v in adj if v not in color}

    def assign(v, c):
        color[v] = c
        uncolored.discard(v)
        for w in adj[v]:
            seen[w][c] = seen[w].get(c, 0) + 1

    def release(v):
        c = color.pop(v)
        uncolored.add(v)
        for w in adj[v]:
            seen[w][c] -= 1
            if not seen[w][c]:
                del seen[w][c]

    def step() -> bool:
        if not uncolored:
            return True
        v = max(uncolored, key=lambda x: (len(seen[x]), len(adj[x]), -rank[x]))
        for c in COLORS:
            if c in seen[v]:
                continue
            assign(v, c)
            if step():
                return True
            release(v)
        return False

    import sys
    if sys.getrecursionlimit() < len(uncolored) + 200:
        sys.setrecursionlimit(len(uncolored) + 200)
    return step()


def four_color(S: SimplicialPoset, exact_limit: int = 400) -> Coloring:
    adj = {v: set(n) for v, n in S.adjacency.items()}
    order = _smallest_last(adj)
    color: dict[int, int] = {}
    stuck = []
    for v in order:
        used = {color[w] for w in adj[v] if w in color}
        free = [c for c in COLORS if c not in used]
        if free:
            color[v] = free[0]
            continue
        c = _try_kempe(adj, color, v)
        if c is None:
            stuck.append(v)
            continue
        color[v] = c
    if stuck:
        if len(order) > exact_limit:
            # recolor the stuck vertices with their neighbourhoods released
            trial = dict(color)
            release = set(stuck)
            for v in stuck:
                release |= adj[v]
            for v in release:
                trial.pop(v, None)
            if _backtrack(adj, order, trial):
                return Coloring(trial)
        color.clear()
        if not _backtrack(adj, order, color):
            raise ColoringNotFound("no proper 4-coloring exists for this graph")
    return Coloring(color)
