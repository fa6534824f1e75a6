"""Characteristic functions, the star condition and suspension."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import DimensionMismatch
from .lattice import int_det, smith_invariants, vector_gcd
from .poset import EMPTY, SimplicialPoset, _assemble


@dataclass(frozen=True, order=True)
class SignClass:
    """A primitive integer vector modulo sign, first nonzero entry positive."""

    rep: tuple[int, ...]

    def __post_init__(self):
        rep = tuple(int(x) for x in self.rep)
        if not rep:
            raise ValueError("empty vector")
        if vector_gcd(rep) != 1:
            raise ValueError(f"{rep} is not primitive")
        first = next(x for x in rep if x)
        if first < 0:
            rep = tuple(-x for x in rep)
        object.__setattr__(self, "rep", rep)

    @classmethod
    def of(cls, vec: Iterable[int]) -> "SignClass":
        return cls(tuple(vec))

    @property
    def n(self) -> int:
        return len(self.rep)

    def __repr__(self):
        return f"±{list(self.rep)}"


class CharacteristicFunction:
    """Assignment ``vertex -> SignClass`` in rank ``n``.

    Raw representatives are kept alongside the sign classes so that
    determinant audits can be run on the vectors exactly as supplied.
    """

    def __init__(self, n: int, values: Mapping[int, Sequence[int] | SignClass]):
        self.n = int(n)
        self.raw: dict[int, tuple[int, ...]] = {}
        self.assignment: dict[int, SignClass] = {}
        for v, x in values.items():
            vec = x.rep if isinstance(x, SignClass) else tuple(int(c) for c in x)
            if len(vec) != self.n:
                raise DimensionMismatch(f"vertex {v}: vector {vec} has length {len(vec)} != {self.n}")
            self.raw[v] = vec
            self.assignment[v] = SignClass(vec)

    def __getitem__(self, v) -> SignClass:
        return self.assignment[v]

    def __contains__(self, v) -> bool:
        return v in self.assignment

    def __len__(self):
        return len(self.assignment)

    def __eq__(self, other):
        return (isinstance(other, CharacteristicFunction) and self.n == other.n
                and self.assignment == other.assignment)

    def __repr__(self):
        return f"CharacteristicFunction(n={self.n}, r={value_count(self)}, |V|={len(self)})"

    def restricted(self, vertices: Iterable[int]) -> "CharacteristicFunction":
        return CharacteristicFunction(self.n, {v: self.raw[v] for v in vertices})

    def relabeled(self, mapping: Mapping[int, int]) -> "CharacteristicFunction":
        return CharacteristicFunction(self.n, {mapping[v]: x for v, x in self.raw.items() if v in mapping})

    def to_json(self) -> dict:
        return {"n": self.n, "values": {str(v): list(self.raw[v]) for v in sorted(self.raw)}}

    @classmethod
    def from_json(cls, doc: Mapping) -> "CharacteristicFunction":
        return cls(doc["n"], {int(k): tuple(v) for k, v in doc["values"].items()})


def value_count(lam: CharacteristicFunction) -> int:
    return len(set(lam.assignment.values()))


@dataclass
class StarReport:
    ok: bool
    simplex: int | None = None
    vertices: tuple[int, ...] = ()
    determinant: int | None = None
    invariants: list[int] = field(default_factory=list)
    checked: int = 0

    def __bool__(self):
        return self.ok


def check_star_condition(
    S: SimplicialPoset,
    lam: CharacteristicFunction | Mapping[int, Sequence[int]],
    strict: bool = False,
) -> StarReport:
    """Vectors on every maximal simplex span Z^n (``|det| = 1``).

    With ``strict`` every simplex is checked to span a direct summand.
    """
    raw = lam.raw if isinstance(lam, CharacteristicFunction) else {v: tuple(x) for v, x in lam.items()}
    n = lam.n if isinstance(lam, CharacteristicFunction) else len(next(iter(raw.values())))
    missing = [v for v in S.vertices if v not in raw]
    if missing:
        raise DimensionMismatch(f"characteristic function undefined on vertices {missing[:5]}")
    if S.dim + 1 != n or not S.is_pure:
        raise DimensionMismatch(f"poset rank {S.dim + 1} (pure={S.is_pure}) != n = {n}")
    targets = range(1, len(S)) if strict else S.maximal
    checked = 0
    for i in targets:
        rows = [raw[v] for v in S.verts[i]]
        checked += 1
        if len(rows) == n:
            d = int_det(rows)
            if abs(d) != 1:
                return StarReport(False, i, S.verts[i], d, smith_invariants(rows), checked)
        else:
            inv = smith_invariants(rows)
            if len(inv) != len(rows) or any(x != 1 for x in inv):
                return StarReport(False, i, S.verts[i], None, inv, checked)
    return StarReport(True, checked=checked)


@dataclass
class WeightedSphere:
    sphere: SimplicialPoset
    lam: CharacteristicFunction
    validate: bool = field(default=True, repr=False)

    def __post_init__(self):
        if self.validate:
            rep = check_star_condition(self.sphere, self.lam)
            if not rep.ok:
                raise DimensionMismatch(
                    f"star condition fails on simplex {rep.simplex} (det {rep.determinant})")

    @property
    def n(self) -> int:
        return self.lam.n

    def to_json(self) -> dict:
        return {"sphere": self.sphere.to_json(), "lambda": self.lam.to_json()}

    @classmethod
    def from_json(cls, doc: Mapping) -> "WeightedSphere":
        return cls(SimplicialPoset.from_json(doc["sphere"]), CharacteristicFunction.from_json(doc["lambda"]))


# -- colorings ----------------------------------------------------------------

COLOR_VECTORS = {
    1: (1, 0, 0),
    2: (0, 1, 0),
    3: (0, 0, 1),
    4: (1, 1, 1),
}


@dataclass
class Coloring:
    colors: dict[int, int]

    def __getitem__(self, v):
        return self.colors[v]

    def used(self) -> set[int]:
        return set(self.colors.values())

    def improper_edge(self, S: SimplicialPoset) -> tuple[int, int] | None:
        for e in S.edges:
            a, b = S.verts[e]
            if self.colors.get(a) == self.colors.get(b):
                return (a, b)
        return None

    def is_proper(self, S: SimplicialPoset) -> bool:
        return (all(v in self.colors and self.colors[v] in (1, 2, 3, 4) for v in S.vertices)
                and self.improper_edge(S) is None)

    def to_json(self) -> dict:
        return {str(v): c for v, c in sorted(self.colors.items())}

    @classmethod
    def from_json(cls, doc: Mapping) -> "Coloring":
        return cls({int(k): int(c) for k, c in doc.items()})


def coloring_to_characteristic(c: Coloring) -> CharacteristicFunction:
    return CharacteristicFunction(3, {v: COLOR_VECTORS[k] for v, k in c.colors.items()})


# -- suspension -----------------------------------------------------------------

def join_with_two_points(S: SimplicialPoset, plus: Hashable = "p+", minus: Hashable = "p-") -> SimplicialPoset:
    """Join of ``S`` with the 0-sphere {p+, p-}; labels of new vertices given."""
    items: dict = {}
    labels = {}
    apex = {("apex", plus): plus, ("apex", minus): minus}
    for i in range(len(S)):
        items[("s", i)] = {("s", v): ("s", S.face(i, v)) for v in S.verts[i]}
        if S.rank(i) == 1:
            labels[("s", i)] = S.label(i)
    for a in apex:
        items[a] = {a: ("s", EMPTY)}
        labels[a] = apex[a]
    for a in apex:
        for i in range(1, len(S)):
            d = {("s", v): (a, S.face(i, v)) if S.rank(i) > 1 else a for v in S.verts[i]}
            d[a] = ("s", i)
            items[(a, i)] = d
    # ("apex", x) with face ("s", 0) is the vertex; (a, 0) aliases it
    fixed = {}
    for k, d in items.items():
        fixed[k] = {vk: fk for vk, fk in d.items()}
    return _assemble(fixed, labels=labels, validate=False)


def suspend(W: WeightedSphere, tag: Hashable | None = None) -> WeightedSphere:
    """Join with two new vertices p+, p- weighted (0,...,0,1)."""
    n = W.n
    suffix = tag if tag is not None else n + 1
    S = W.sphere
    plus, minus = f"p{suffix}+", f"p{suffix}-"
    J = join_with_two_points(S, plus, minus)
    # vertices of J: first the old ones in order, then the two apexes
    old_vertices = S.vertices
    new_vertices = J.vertices
    values = {}
    for old, new in zip(old_vertices, new_vertices):
        values[new] = tuple(W.lam.raw[old]) + (0,)
    top = tuple([0] * n + [1])
    values[new_vertices[-2]] = top
    values[new_vertices[-1]] = top
    return WeightedSphere(J, CharacteristicFunction(n + 1, values), validate=W.validate)
