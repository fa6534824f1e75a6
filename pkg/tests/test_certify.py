import json
from fractions import Fraction

import pytest

from fatspheres.certify import (Certificate, certify_non_origami, lemma_consistency_audit,
                                lift_certificate, validate_certificate)
from fatspheres.coloring import four_color
from fatspheres.errors import ThresholdNotMet
from fatspheres.metric import subdivided_tetrahedron
from fatspheres.poset import cycle, octahedron, simplex_boundary
from fatspheres.weighted import CharacteristicFunction, coloring_to_characteristic, value_count

from _gen import random_sphere

SMALL = dict(c2=Fraction(1, 8), c3=1)  # threshold about 16.8, so q = 3 suffices


@pytest.fixture(scope="module")
def cert88():
    return certify_non_origami(8, 88, 3, Fraction(1, 3))


@pytest.fixture(scope="module")
def small():
    return certify_non_origami(8, 3, **SMALL)


def test_q87_fails_with_q_min():
    with pytest.raises(ThresholdNotMet) as ei:
        certify_non_origami(8, 87)
    assert ei.value.q_min == 88


def test_q88_certificate(cert88):
    assert cert88.vertex_count == 15490
    assert cert88.r <= 4 and 2 * cert88.r <= cert88.N
    assert abs(cert88.threshold["value"] - 15251.14) < 0.01
    assert validate_certificate(cert88).ok


def test_q100_certificate():
    c = certify_non_origami(8, 100)
    assert c.vertex_count == 20002
    assert validate_certificate(c).ok


def test_deterministic(small):
    again = certify_non_origami(8, 3, **SMALL)
    assert again.dumps() == small.dumps()


def test_json_roundtrip(small):
    doc = json.loads(small.dumps())
    assert Certificate.from_json(doc).dumps() == small.dumps()
    assert validate_certificate(doc).ok


def test_corrupted_coloring(cert88):
    doc = cert88.to_json()
    S = subdivided_tetrahedron(88).sphere
    idx = {v: k for k, v in enumerate(S.vertices)}
    v = S.vertices[0]
    u = min(S.adjacency[v])
    col = list(doc["coloring"])
    col[idx[v]] = col[idx[u]]
    doc["coloring"] = "".join(col)
    rep = validate_certificate(doc)
    assert not rep.ok
    assert any(r.startswith("improper coloring at edge") for r in rep.reasons)


def test_threshold_mismatch(cert88):
    doc = cert88.to_json()
    doc["c3"] = "1"
    rep = validate_certificate(doc)
    assert not rep.ok
    assert any("threshold mismatch" in r for r in rep.reasons)


def test_digest_and_count_mismatch(small):
    doc = small.to_json()
    doc["sphere_digest"] = "0" * 64
    assert "sphere digest mismatch" in validate_certificate(doc).reasons
    doc = small.to_json()
    doc["vertex_count"] = 21
    assert not validate_certificate(doc).ok


def test_custom_constants_threshold(small):
    assert small.q == 3 and small.vertex_count == 20
    with pytest.raises(ThresholdNotMet) as ei:
        certify_non_origami(8, 2, **SMALL)
    assert ei.value.q_min == 3


def test_provenance_corroborated(small):
    c = certify_non_origami(8, 3, corroborate_depth=4, provenance="stated", **SMALL)
    assert c.lipschitz is not None
    assert "sampled extremes" in c.provenance["c2"]


def test_lift_identity(small):
    L = lift_certificate(small, 0)
    assert L.rank == 3 and L.value_count == small.r and L.star_ok
    assert L.sphere.sphere.f_vector == subdivided_tetrahedron(3).sphere.f_vector


def test_lift_one_and_three(small):
    L1 = lift_certificate(small, 1)
    assert L1.rank == 4 and L1.sphere.n == 4 and L1.star_ok
    assert L1.value_count == small.r + 1
    L3 = lift_certificate(small, 3)
    assert L3.rank == 6 and L3.value_count == small.r + 3 and L3.star_ok


def test_lift_refuses_invalid_base(small):
    doc = small.to_json()
    doc["sphere_digest"] = "f" * 64
    with pytest.raises(ValueError):
        lift_certificate(Certificate.from_json(doc), 1)


def test_audit_tetrahedron():
    K = simplex_boundary()
    rep = lemma_consistency_audit(K, coloring_to_characteristic(four_color(K)))
    assert rep.fatness == 4 and rep.r == 4 and not rep.fires
    assert "inapplicable" in rep.message


def test_audit_octahedron():
    O = octahedron()
    lam = coloring_to_characteristic(four_color(O))
    rep = lemma_consistency_audit(O, lam)
    assert rep.fatness == 5 and rep.fatness_exact
    assert rep.fires == (5 > 2 * value_count(lam))
    assert rep.consistent


def test_audit_constant_lambda_fires():
    K = simplex_boundary()
    rep = lemma_consistency_audit(K, CharacteristicFunction(3, {v: (1, 0, 0) for v in K.vertices}))
    assert rep.fires and rep.counting_feasible is False and rep.consistent


@pytest.mark.parametrize("k", range(3, 9))
def test_audit_never_fires_on_circles(k):
    C = cycle(k)
    vals = [(1, 0), (0, 1), (1, 1)]
    lam = CharacteristicFunction(2, {v: vals[i % 2 if k % 2 == 0 else (i if i < 3 else 1 + i % 2)]
                                     for i, v in enumerate(C.vertices)})
    rep = lemma_consistency_audit(C, lam)
    assert value_count(lam) >= 2 and not rep.fires


@pytest.mark.parametrize("seed", range(2))
def test_audit_random_small_spheres(seed):
    K = random_sphere(7, seed)
    rep = lemma_consistency_audit(K, coloring_to_characteristic(four_color(K)))
    assert rep.consistent and rep.fatness_exact


def test_audit_size_limit():
    K = random_sphere(31, 0)
    with pytest.raises(ValueError):
        lemma_consistency_audit(K, coloring_to_characteristic(four_color(K)))
