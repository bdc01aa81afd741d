import math
from fractions import Fraction as F

import pytest

from hyperlift import linalg as la
from hyperlift.blocks import SYMMETRIC
from hyperlift.lattice import DualVector, build
from hyperlift.reflect import (FIXTURES, ReflectError, SingularTerm, certify, expand_orbit, extract_root_system,
                               fixture_data, fixture_frame, fixture_input, fixture_singular_terms, is_reflective)
from hyperlift.rootdata import SemisimpleAlgebra, orbit_size


def test_is_reflective_basic():
    A1 = build("A1")
    # q^-1 zeta^0: (l,l) - 2n = 2, t = 1
    assert is_reflective(A1, -1, (0,)) == (True, 1)
    # a root of A1 lies in A1, t = 1
    assert is_reflective(A1, 0, (1,)) == (True, 1)
    # the dual generator has norm 1/2: t = 4, 4 * (1/2) in A1
    assert is_reflective(A1, 0, (F(1, 2),)) == (True, 4)
    # not singular
    assert is_reflective(A1, 1, (F(1, 2),))[0] is False


def test_singular_term_needs_positive_norm():
    with pytest.raises(ReflectError):
        SingularTerm(F(1), DualVector([0]), 1, F(0))


@pytest.mark.parametrize("g", SYMMETRIC)
def test_symmetric_certificates(g):
    cert = certify(g)
    assert cert.valid, cert.to_json()
    rho = cert.weyl[1]
    assert cert.weyl[0] == cert.weyl[2] == -SemisimpleAlgebra.parse(g).C()
    assert any(rho)


@pytest.mark.parametrize("g", sorted(FIXTURES))
def test_fixture_certificates(g):
    cert = certify(g)
    assert cert.valid and cert.source == "fixture-backed"


def _labels(cert):
    return {t.label: (v, w) for t, v, w in cert.terms}


def test_witnesses():
    assert _labels(certify("B12,2"))["q^2*O_000000001000"] == (True, 4)
    terms = _labels(certify("C4,10"))
    assert terms["q^1*O_4002"] == (True, 5)
    assert terms["q^1*O_0040"] == (True, 5)


def test_corrupted_norm_is_caught():
    cert = certify("C4,10", corrupt={4: "13/5"})
    assert not cert.valid
    assert cert.failed_stage == "reflectivity"
    assert cert.failing_terms == ["q^1*O_0040"]


@pytest.mark.parametrize("g", sorted(FIXTURES))
def test_dominant_representative_suffices(g):
    # expand every singular orbit of moderate size and check each member
    g = SemisimpleAlgebra.parse(g)
    data = fixture_data(g)
    terms, L, cols = fixture_singular_terms(g, data)
    inv = la.inverse(cols)
    by_label = {t.label: t for t in terms}
    checked = 0
    for e in data["entries"]:
        labels = e["orbit"]["dominant_weight"]
        label = "q^{}*O_{}".format(e["q_power"], ",".join("".join(map(str, m)) for m in labels))
        if label not in by_label:
            continue
        size = math.prod(orbit_size(i.type, m) for i, m in zip(g.ideals, labels))
        if size > 1200:
            continue
        orbit = expand_orbit(g, labels)
        assert len(orbit) == size
        rep_verdict = is_reflective(L, by_label[label].n, by_label[label].ell)
        for v in orbit:
            assert is_reflective(L, by_label[label].n, la.matvec(inv, v)) == rep_verdict
        checked += 1
    assert checked > 0


@pytest.mark.parametrize("g", ["D24,1", "E8,1^3", "A1,1^24"])
def test_q0_level_certificates(g):
    cert = certify(g)
    assert cert.valid and cert.source == "q0-level"


def test_extract_root_system_from_fixture_input():
    g = SemisimpleAlgebra.parse("C4,10")
    L, _ = fixture_frame(g)
    alg, C = extract_root_system(fixture_input(g).q_slice(0), L, 1)
    assert alg == g and C == F(1, 2)


def test_extract_rejects_wrong_a():
    # the E8 q^0 slice with a = 0 contradicts C = (|R| + rk)/24 - a against the norm sum
    q0 = dict(fixture_input("E8,1").q_slice(0))
    with pytest.raises(ReflectError):
        extract_root_system(q0, SemisimpleAlgebra.parse("E8,1").Q, 0)
