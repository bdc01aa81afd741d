import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from hyperlift import linalg as la
from hyperlift.blocks import orbit_lattice_data, phi_input
from hyperlift.fjseries import FJSeries
from hyperlift.lattice import build
from hyperlift.lift import (additive_fj, borcherds_fj, generalized_theta_block, kronecker_m4,
                            product_expansion_direct, random_small_input, theta_block_on_orbit_lattice,
                            to_frame_vec, weyl_vector)
from hyperlift.rootdata import SemisimpleAlgebra


@given(st.integers(0, 10 ** 6), st.sampled_from(["A1", "A1(2)", "A2", "A1+A1"]))
def test_borcherds_product_matches_direct_expansion(seed, spec):
    L = build(spec)
    phi = random_small_input(L, random.Random(seed), q_range=(-1, 4))
    b = borcherds_fj(phi, L, 2, 2)
    C, direct = product_expansion_direct(phi, L, 2, 2)
    assert C == b.xi_offset
    for j in range(3):
        assert b.coefficient(j) == direct[j]


def test_direct_expansion_detects_change():
    L = build("A1")
    phi = random_small_input(L, random.Random(7))
    bumped = phi + FJSeries.from_terms(L, [(1, (F(1, 2),), 1), (1, (F(-1, 2),), 1)])
    _, d1 = product_expansion_direct(phi, L, 2, 2)
    _, d2 = product_expansion_direct(bumped, L, 2, 2)
    assert any(d1[j] != d2[j] for j in range(3))


def test_weyl_vector_formulas():
    L = build("A1")
    phi = FJSeries.from_terms(L, [(0, (0,), 2), (0, (F(1, 2),), 3), (0, (F(-1, 2),), 3)])
    w = weyl_vector(phi, L)
    assert w.A == F(8, 24)
    assert w.B.coords == (F(3, 4),)
    assert w.Cc == F(3 * 2 * F(1, 2), 2)


@pytest.mark.parametrize("g", ["A1,16", "A2,9", "A1,4^4"])
def test_leading_coefficient_is_theta_block(g):
    g = SemisimpleAlgebra.parse(g)
    L, cols = orbit_lattice_data(g)
    rho = to_frame_vec(g.rho.coords, cols)
    func = la.matvec(la.to_fractions(L.gram), list(rho))
    phi = phi_input(g, 1)
    tb, _ = theta_block_on_orbit_lattice(g, 3)
    assert generalized_theta_block(phi.q_slice(0), L, 3, func) == tb


def test_kronecker():
    assert [kronecker_m4(m) for m in range(1, 9)] == [1, 0, -1, 0, 1, 0, -1, 0]


def test_trivial_lift_a1_16():
    g = SemisimpleAlgebra.parse("A1,16")
    L, cols = orbit_lattice_data(g)
    rho = to_frame_vec(g.rho.coords, cols)
    func = la.matvec(la.to_fractions(L.gram), list(rho))
    b = borcherds_fj(phi_input(g, 12), L, 2, 3, func)
    a = additive_fj(g, 2, 3)
    assert b.xi_offset == a.xi_offset == F(1, 8)
    for j in range(3):
        assert b.coefficient(j) == a.coefficient(j)
