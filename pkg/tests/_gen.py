"""Random instance generators shared by the tests."""

from __future__ import annotations

import random

from fatspheres.errors import NotACycle
from fatspheres.metric import random_cycles
from fatspheres.poset import from_facets
from fatspheres.surgery import ridge_tops, sides, validate_cycle


def random_sphere_facets(n_vertices: int, rng: random.Random, flips: int | None = None):
    """Triangles of a random simplicial 2-sphere: stacking plus edge flips."""
    tris = {frozenset(t) for t in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]}
    order = sorted(tris, key=sorted)
    nxt = 4
    while nxt < n_vertices:
        t = order.pop(rng.randrange(len(order)))
        a, b, c = sorted(t)
        tris.remove(t)
        new = [frozenset((a, b, nxt)), frozenset((a, c, nxt)), frozenset((b, c, nxt))]
        tris.update(new)
        order += new
        nxt += 1
    edges: dict[frozenset, set] = {}
    deg: dict[int, int] = {}
    for t in tris:
        for x in t:
            edges.setdefault(t - {x}, set()).add(t)
    for e in edges:
        for v in e:
            deg[v] = deg.get(v, 0) + 1
    elist = sorted(edges, key=sorted)
    for _ in range(flips if flips is not None else 2 * n_vertices):
        e = elist[rng.randrange(len(elist))]
        if e not in edges:
            continue
        t1, t2 = edges[e]
        (c,), (d,) = t1 - e, t2 - e
        f = frozenset((c, d))
        a, b = sorted(e)
        if f in edges or deg[a] <= 3 or deg[b] <= 3:
            continue
        n1, n2 = frozenset((a, c, d)), frozenset((b, c, d))
        for t in (t1, t2):
            tris.remove(t)
            for x in t:
                edges[t - {x}].discard(t)
        del edges[e]
        for t in (n1, n2):
            tris.add(t)
            for x in t:
                edges.setdefault(t - {x}, set()).add(t)
        deg[a] -= 1
        deg[b] -= 1
        deg[c] += 1
        deg[d] += 1
        elist.append(f)
    return [tuple(sorted(t)) for t in sorted(tris, key=sorted)]


def random_sphere(n_vertices: int, seed: int):
    return from_facets(random_sphere_facets(n_vertices, random.Random(seed)))


def random_laminar_family(K, rng: random.Random, max_len: int = 6, tries: int = 12):
    """A mutually ordered family of random cycles (as edge-id sets)."""
    cands = random_cycles(K, max_len, tries, seed=rng.randrange(10 ** 9))
    rng.shuffle(cands)
    rt = ridge_tops(K)
    t0 = min(K.by_rank[3])
    fam, insides = [], []
    for C in cands:
        try:
            C = validate_cycle(K, C)
        except NotACycle:
            continue
        comps = sides(K, C, rt)
        if len(comps) != 2:
            continue
        inside = frozenset(next(x for x in comps if t0 not in x))
        if all(inside <= B or B <= inside or not (inside & B) for B in insides):
            fam.append(C)
            insides.append(inside)
        if len(fam) >= rng.randint(1, 4):
            break
    return fam
