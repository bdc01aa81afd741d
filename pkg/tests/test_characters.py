from fractions import Fraction as F

import pytest

from hyperlift.characters import (IDENTITIES, CharacterError, CharacterTerm, exotic_identity, ladder, macdonald,
                                  numerator, phi_in_q_frame, run_identity, theta_sum, verify_identity)
from hyperlift.rootdata import SemisimpleAlgebra, simple_data


@pytest.mark.parametrize("t", ["A1", "A2", "B2", "G2", "A3"])
def test_macdonald(t):
    assert macdonald(t, 5) == (True, 1)


def test_theta_sum_a1():
    s = simple_data("A1")
    th = theta_sum(s.coroot_lattice(), (F(1),), 2, 3)
    # w in 2Z + 1 with |w|^2 = 2 w^2: q^(w^2 / 2) zeta^w, only w = +-1 below q^3
    assert th.terms() == [(F(1, 2), (F(-1),), 1), (F(1, 2), (F(1),), 1)]


@pytest.mark.parametrize("t,k,lam", [("A1", 3, (1,)), ("A2", 2, (1, 0)), ("B2", 1, (0, 1)), ("G2", 1, (1, 0))])
def test_numerator_is_alternating(t, k, lam):
    # A_{lam+rho}(w z) = det(w) A_{lam+rho}(z)
    a = numerator(t, k, lam, 3)
    for w, sign in simple_data(t).weyl_group_coroot:
        assert a.map_zeta(w, a.lattice) == a.scale(sign)


def test_numerator_rejects_bad_weight():
    with pytest.raises(CharacterError):
        numerator("A1", 2, (-1,), 2)


def test_conformal_weight_labels_checked():
    g = SemisimpleAlgebra.parse("A1,16")
    with pytest.raises(CharacterError):
        CharacterTerm(((2,),), 1, F(1, 3)).check(g)
    assert CharacterTerm(((2,),), 1, F(1, 9)).check(g) == F(1, 9)


@pytest.mark.parametrize("name", IDENTITIES)
def test_identities(name):
    assert run_identity(name, 3)["ok"]


def test_theorem_constants():
    dims = sorted(exotic_identity(n, 3)[3] for n in ("th72-a116", "th72-a18sq", "th72-a29", "th72-a14p4"))
    assert dims == [3, 6, 8, 12]


def test_sign_flip_fails():
    g = SemisimpleAlgebra.parse("A1,16")
    terms = [CharacterTerm(((2,),), 1), CharacterTerm(((14,),), 1), CharacterTerm(((8,),), 1)]
    ok, diff = verify_identity(terms, phi_in_q_frame(g, 3), g, 3)
    assert not ok and diff is not None


def test_ladders():
    assert ladder("ch8-a2-ladder", 3)[0]
    assert ladder("ch8-a1-ladder", 3)[0]
