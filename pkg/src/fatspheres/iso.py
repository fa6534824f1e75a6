"""Order isomorphisms of simplicial posets.

Colour refinement on the Hasse diagram (rank and optional vertex colours as the
initial partition), then individualisation with backtracking.  Instances are
small, so the worst case is tolerated.
"""

from __future__ import annotations

from typing import Hashable, Mapping

from .poset import SimplicialPoset


def _initial(S: SimplicialPoset, colors: Mapping[int, Hashable] | None):
    out = []
    for i, v in enumerate(S.verts):
        c = colors.get(i) if (colors is not None and len(v) == 1) else None
        out.append((len(v), repr(c)))
    return out


def _refine(SA, SB, ca: list, cb: list) -> tuple[list[int], list[int]] | None:
    """Joint colour refinement; returns integer colours or None if the
    colour-class sizes diverge."""
    def relabel(xa, xb):
        keys = sorted(set(xa) | set(xb))
        idx = {k: n for n, k in enumerate(keys)}
        return [idx[x] for x in xa], [idx[x] for x in xb], len(keys)

    a, b, ncls = relabel(ca, cb)
    while True:
        if sorted(a) != sorted(b):
            return None
        sa = [(a[i], tuple(sorted(a[f] for f in SA.faces[i])), tuple(sorted(a[u] for u in SA.cofaces[i])))
              for i in range(len(SA))]
        sb = [(b[i], tuple(sorted(b[f] for f in SB.faces[i])), tuple(sorted(b[u] for u in SB.cofaces[i])))
              for i in range(len(SB))]
        na, nb, n2 = relabel(sa, sb)
        if n2 == ncls:
            if sorted(na) != sorted(nb):
                return None
            return na, nb
        a, b, ncls = na, nb, n2


def isomorphic(
    A: SimplicialPoset,
    B: SimplicialPoset,
    colors_a: Mapping[int, Hashable] | None = None,
    colors_b: Mapping[int, Hashable] | None = None,
) -> dict[int, int] | None:
    """A rank- and order-preserving bijection ``A -> B`` or None.

    When vertex colours are given (e.g. characteristic-function values) the
    isomorphism must preserve them.
    """
    if len(A) != len(B) or A.f_vector != B.f_vector:
        return None
    if sum(map(len, A.faces)) != sum(map(len, B.faces)):
        return None
    start = _refine(A, B, _initial(A, colors_a), _initial(B, colors_b))
    if start is None:
        return None
    return _search(A, B, *start)


def _search(A, B, ca, cb):
    n = len(A)
    classes: dict[int, list[int]] = {}
    for i, c in enumerate(ca):
        classes.setdefault(c, []).append(i)
    target = None
    for c in sorted(classes):
        if len(classes[c]) > 1:
            target = c
            break
    if target is None:
        inv = {c: j for j, c in enumerate(cb)}
        m = {i: inv[ca[i]] for i in range(n)}
        for i in range(n):
            if sorted(m[f] for f in A.faces[i]) != sorted(B.faces[m[i]]):
                return None
        return m
    x = classes[target][0]
    fresh = max(max(ca), max(cb)) + 1
    for y in [j for j, c in enumerate(cb) if c == target]:
        na = list(ca)
        nb = list(cb)
        na[x] = fresh
        nb[y] = fresh
        r = _refine(A, B, na, nb)
        if r is None:
            continue
        m = _search(A, B, *r)
        if m is not None:
            return m
    return None


def automorphism_count(S: SimplicialPoset, limit: int = 10_000) -> int:
    """Number of automorphisms (brute force over the search tree)."""
    start = _refine(S, S, _initial(S, None), _initial(S, None))
    count = 0

    def rec(ca, cb):
        nonlocal count
        if count >= limit:
            return
        classes: dict[int, list[int]] = {}
        for i, c in enumerate(ca):
            classes.setdefault(c, []).append(i)
        target = next((c for c in sorted(classes) if len(classes[c]) > 1), None)
        if target is None:
            inv = {c: j for j, c in enumerate(cb)}
            m = {i: inv[ca[i]] for i in range(len(S))}
            if all(sorted(m[f] for f in S.faces[i]) == sorted(S.faces[m[i]]) for i in range(len(S))):
                count += 1
            return
        x = classes[target][0]
        fresh = max(max(ca), max(cb)) + 1
        for y in [j for j, c in enumerate(cb) if c == target]:
            na, nb = list(ca), list(cb)
            na[x] = nb[y] = fresh
            r = _refine(S, S, na, nb)
            if r is not None:
                rec(*r)

    if start is not None:
        rec(*start)
    return count
