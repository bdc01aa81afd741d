from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from hyperlift import linalg as la
from hyperlift.rootdata import (SemisimpleAlgebra, SimpleType, central_charge, conformal_weight, dimension,
                                dual_coxeter, orbit_size, simple_data, weyl_orbit, weyl_order)

TYPES = ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "C4", "D4", "D5", "G2", "F4", "E6", "E7", "E8"]
WEYL_ORDERS = {"A1": 2, "A2": 6, "A3": 24, "A4": 120, "B2": 8, "B3": 48, "C3": 48, "C4": 384, "D4": 192,
               "D5": 1920, "G2": 12, "F4": 1152, "E6": 51840, "E7": 2903040, "E8": 696729600}


@pytest.mark.parametrize("t", TYPES)
def test_root_counts_and_dimension(t):
    s = simple_data(t)
    assert s.dim == dimension(SimpleType.parse(t))
    assert s.dim == s.rank + 2 * len(s.positive_roots)
    assert s.dual_coxeter == dual_coxeter(SimpleType.parse(t))


@pytest.mark.parametrize("t", TYPES)
def test_weyl_order(t):
    assert weyl_order(simple_data(t).cartan) == WEYL_ORDERS[t]


@pytest.mark.parametrize("t", TYPES)
def test_long_roots_norm_two(t):
    s = simple_data(t)
    assert max(s.root_norm(c) for c in s.positive_roots) == 2


small = st.sampled_from(["A1", "A2", "A3", "B2", "B3", "C3", "G2", "D4"])


@given(small, st.data())
def test_orbit_size_matches_enumeration(t, data):
    r = simple_data(t).rank
    lam = tuple(data.draw(st.lists(st.integers(0, 2), min_size=r, max_size=r)))
    assert orbit_size(t, lam) == len(weyl_orbit(t, lam))


@given(small, st.data())
def test_orbit_is_reflection_closed(t, data):
    s = simple_data(t)
    lam = tuple(data.draw(st.lists(st.integers(0, 2), min_size=s.rank, max_size=s.rank)))
    orbit = set(weyl_orbit(t, lam))
    for m in orbit:
        for i in range(s.rank):
            assert tuple(s.reflect_weight(m, i)) in orbit


def test_conformal_weights():
    assert conformal_weight(SimpleType.parse("A1"), 16, (2,)) == F(1, 9)
    assert conformal_weight(SimpleType.parse("A1"), 16, (14,)) == F(28, 9)
    assert conformal_weight(SimpleType.parse("A2"), 9, (1, 1)) == F(1, 4)


def test_algebra_constants():
    assert SemisimpleAlgebra.parse("D24,1").C() == 46
    assert SemisimpleAlgebra.parse("B12,2").C() == F(23, 2)
    g = SemisimpleAlgebra.parse("A1,16")
    assert g.C() == F(1, 8) and central_charge(g) == F(8, 3)


def test_parse_order_independent():
    assert SemisimpleAlgebra.parse("A2,2F4,6") == SemisimpleAlgebra.parse("F4,6A2,2")
    assert SemisimpleAlgebra.parse("A1,2^8").rank == 8


@pytest.mark.parametrize("g", ["A1,16", "A2,3^3", "A1,2B3,5", "B2,3G2,4"])
def test_q_frame_root_norms(g):
    # each root alpha of an ideal at level k has exponent norm (alpha, alpha) / k
    g = SemisimpleAlgebra.parse(g)
    for j, ideal in enumerate(g.ideals):
        s = g.simples[j]
        for c in s.positive_roots:
            assert g.exponent_lattice_norm(g.root_exponent(j, c)) == s.root_norm(c) / ideal.level


def test_q_inside_p():
    g = SemisimpleAlgebra.parse("A2,3^3")
    inv = la.inverse(g.P_basis)
    # Q_g has integral coordinates in the P_g basis
    assert all(x.denominator == 1 for row in inv for x in row)
