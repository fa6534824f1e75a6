"""Command line entry point: ``fatspheres <command> ...``.

Exit codes: 0 success or valid, 2 threshold not met, 3 validation failure,
1 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import certify as cert
from .errors import BudgetExceeded, FatSpheresError, ThresholdNotMet
from .fatness import fatness_bruteforce
from .metric import as_fraction, estimate_lipschitz, isoperimetric_constants, subdivided_tetrahedron
from .poset import SimplicialPoset, from_facets
from .template import OrigamiTemplate, render_svg, validate_template
from .weighted import CharacteristicFunction

EXIT_OK, EXIT_INPUT, EXIT_THRESHOLD, EXIT_INVALID = 0, 1, 2, 3


def _read_json(path: str):
    if path == "-":
        return json.load(sys.stdin)
    return json.loads(Path(path).read_text())


def _emit(doc, out: str | None = None) -> None:
    text = json.dumps(doc, sort_keys=True, indent=1)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def load_sphere(doc) -> SimplicialPoset:
    """Poset JSON, ``{"facets": [...]}`` or a bare facet list."""
    if isinstance(doc, list):
        return from_facets(doc, validate=True)
    if "simplices" in doc:
        return SimplicialPoset.from_json(doc)
    if "facets" in doc:
        return from_facets(doc["facets"], validate=True)
    if "sphere" in doc:
        return load_sphere(doc["sphere"])
    raise ValueError("unrecognised sphere JSON")


def load_lambda(doc, K: SimplicialPoset) -> CharacteristicFunction:
    """``{"n", "values": {vertex: vector}}``; keys are vertex ids or labels."""
    if "lambda" in doc:
        doc = doc["lambda"]
    vals = {}
    for k, vec in doc["values"].items():
        v = None
        if k.lstrip("-").isdigit() and int(k) in K.vertices:
            v = int(k)
        else:
            for cand in (k, int(k) if k.lstrip("-").isdigit() else None):
                if cand is None:
                    continue
                try:
                    v = K.vertex_by_label(cand)
                    break
                except (KeyError, FatSpheresError):
                    pass
        if v is None:
            raise ValueError(f"lambda key {k!r} is not a vertex")
        vals[v] = vec
    return CharacteristicFunction(doc["n"], vals)


# -- commands ----------------------------------------------------------------------

def cmd_fatness(a) -> int:
    K = load_sphere(_read_json(a.sphere))
    try:
        r = fatness_bruteforce(K, a.budget_len, a.budget_time)
    except BudgetExceeded as exc:
        r = exc.partial
    doc = {"upper": r.upper, "lower": r.lower, "exact": r.exact,
           "cycles": [sorted(c) for c in r.cycles],
           "stats": {k: (len(v) if isinstance(v, list) else v) for k, v in r.stats.items()}}
    if a.slicing and r.best is not None:
        _emit(r.best.to_json(), a.slicing)
    _emit(doc)
    if a.exact and not r.exact:
        print(f"ft(K) not decided: in [{r.lower}, {r.upper}]", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


def cmd_subdivide(a) -> int:
    T = subdivided_tetrahedron(a.q)
    S = T.sphere
    doc = {"q": a.q, "f_vector": list(S.f_vector), "euler": S.euler_characteristic,
           "facets": [list(t) for t in T.triangles]}
    if not a.full:
        doc.pop("facets")
    _emit(doc, a.out)
    return EXIT_OK


def cmd_lipschitz(a) -> int:
    est = estimate_lipschitz(subdivided_tetrahedron(a.q), a.depth)
    _emit(est.to_json())
    return EXIT_OK


def cmd_check_template(a) -> int:
    t = OrigamiTemplate.load(a.template)
    rep = validate_template(t)
    _emit(rep.to_json())
    return EXIT_OK if rep.valid else EXIT_INVALID


def cmd_render_template(a) -> int:
    t = OrigamiTemplate.load(a.template)
    Path(a.svg).write_text(render_svg(t))
    return EXIT_OK


def _constants(a):
    if a.default_constants:
        return 3, Fraction(1, 3), "stated"
    return as_fraction(a.c2), as_fraction(a.c3), a.provenance


def cmd_certify(a) -> int:
    c2, c3, prov = _constants(a)
    try:
        c = cert.certify_non_origami(a.N, a.q, c2, c3, provenance=prov, corroborate_depth=a.corroborate)
    except ThresholdNotMet as exc:
        print(f"threshold not met: {exc}", file=sys.stderr)
        return EXIT_THRESHOLD
    text = c.dumps()
    if a.out:
        Path(a.out).write_text(text + "\n")
    else:
        print(text)
    th = isoperimetric_constants(a.N, c2, c3).threshold
    print(f"L_({c.q}): {c.vertex_count} vertices > threshold {float(th):.2f}; "
          f"coloring uses r = {c.r} values, 2r = {2 * c.r} <= N = {c.N}.\n{c.verdict}.",
          file=sys.stderr)
    return EXIT_OK


def cmd_validate(a) -> int:
    try:
        rep = cert.validate_certificate(_read_json(a.certificate))
    except (KeyError, ValueError, TypeError) as exc:
        rep = cert.ValidationReport(False, [f"malformed certificate: {exc}"])
    _emit(rep.to_json())
    return EXIT_OK if rep.ok else EXIT_INVALID


def cmd_lift(a) -> int:
    c = cert.Certificate.from_json(_read_json(a.certificate))
    try:
        L = cert.lift_certificate(c, a.k)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INVALID
    doc = L.to_json()
    if a.out:
        _emit(L.sphere.to_json(), a.out)
    _emit(doc)
    return EXIT_OK if L.star_ok else EXIT_INVALID


def cmd_audit(a) -> int:
    K = load_sphere(_read_json(a.sphere))
    lam = load_lambda(_read_json(a.lam), K)
    try:
        rep = cert.lemma_consistency_audit(K, lam, a.budget_time)
    except BudgetExceeded as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INVALID
    _emit(rep.to_json())
    if a.exact and not rep.fatness_exact:
        return EXIT_INVALID
    return EXIT_OK if rep.consistent else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fatspheres")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("fatness", help="exact or bounded fatness of a small sphere")
    s.add_argument("sphere")
    s.add_argument("--budget-len", type=int, default=None)
    s.add_argument("--budget-time", type=float, default=None)
    s.add_argument("--exact", action="store_true", help="fail unless the value is decided")
    s.add_argument("--slicing", help="write the optimal slicing JSON here")
    s.set_defaults(func=cmd_fatness)

    s = sub.add_parser("subdivide", help="the subdivided tetrahedron L_(q)")
    s.add_argument("q", type=int)
    s.add_argument("--full", action="store_true", help="include the triangle list")
    s.add_argument("--out")
    s.set_defaults(func=cmd_subdivide)

    s = sub.add_parser("lipschitz", help="sampled Lipschitz extremes of the radial map")
    s.add_argument("--q", type=int, default=1)
    s.add_argument("--depth", type=int, default=16)
    s.set_defaults(func=cmd_lipschitz)

    s = sub.add_parser("check-template", help="validate an origami template")
    s.add_argument("template")
    s.set_defaults(func=cmd_check_template)

    s = sub.add_parser("render-template", help="SVG drawing of a 2-dimensional template")
    s.add_argument("template")
    s.add_argument("--svg", required=True)
    s.set_defaults(func=cmd_render_template)

    s = sub.add_parser("certify", help="emit a non-origami certificate for L_(q)")
    s.add_argument("--N", type=int, default=8)
    s.add_argument("--q", type=int, default=88)
    s.add_argument("--c2", default="3")
    s.add_argument("--c3", default="1/3")
    s.add_argument("--default-constants", "--paper-constants", dest="default_constants",
                   action="store_true", help="use c2 = 3, c3 = 1/3")
    s.add_argument("--provenance", default="user-supplied")
    s.add_argument("--corroborate", type=int, default=None, metavar="DEPTH",
                   help="attach a sampled Lipschitz estimate at this depth")
    s.add_argument("--out")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("validate", help="re-check a certificate from raw data")
    s.add_argument("certificate")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("lift", help="suspend a certificate k times")
    s.add_argument("certificate")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--out", help="write the lifted weighted sphere here")
    s.set_defaults(func=cmd_lift)

    s = sub.add_parser("audit", help="fatness versus value count on a small weighted sphere")
    s.add_argument("sphere")
    s.add_argument("lam", metavar="lambda")
    s.add_argument("--exact", action="store_true")
    s.add_argument("--budget-time", type=float, default=None)
    s.set_defaults(func=cmd_audit)
    return p


def main(argv=None) -> int:
    a = build_parser().parse_args(argv)
    try:
        return a.func(a)
    except (FatSpheresError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
