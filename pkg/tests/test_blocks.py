import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from hyperlift.blocks import (A1, CycleShape, doubling_factor_identities, doubling_pullback_identities,
                              eta, eta_power, eta_quotient, euler_product, phi_input, theta_block,
                              theta_variant, weyl_alternating_sum)
from hyperlift.fjseries import FJSeries
from hyperlift.lattice import build, short_vectors
from hyperlift.rootdata import SemisimpleAlgebra

ORDER = F(6)


def _factor(q, z, sign=-1):
    """1 + sign q^q zeta^z over A1 (z in units of zeta = e(u))."""
    return FJSeries.from_terms(A1, [(0, (0,), 1), (q, (F(z, 2),), sign)])


def _theta_product(kind, order):
    """Triple-product form of the four thetas, multiplied out directly."""
    acc = FJSeries.one(A1)
    n = 1
    while n < order + 1:
        acc = (acc * _factor(n, 0)).truncate(order)
        if kind == "11":
            ps = [(n, 1, -1), (n, -1, -1)]
        elif kind == "10":
            ps = [(n, 1, 1), (n, -1, 1)]
        elif kind == "00":
            ps = [(n - F(1, 2), 1, 1), (n - F(1, 2), -1, 1)]
        else:
            ps = [(n - F(1, 2), 1, -1), (n - F(1, 2), -1, -1)]
        for q, z, s in ps:
            acc = (acc * _factor(q, z, s)).truncate(order)
        n += 1
    if kind in ("11", "10"):
        s = -1 if kind == "11" else 1
        lead = FJSeries.from_terms(A1, [(F(1, 8), (F(1, 4),), 1), (F(1, 8), (F(-1, 4),), s)])
        acc = lead * acc
    return acc.truncate(order)


@pytest.mark.parametrize("kind", ["11", "10", "00", "01"])
def test_theta_series_equals_product(kind):
    assert theta_variant(kind, 1, ORDER) == _theta_product(kind, ORDER)


def test_euler_product_pentagonal():
    acc = FJSeries.one(None)
    for n in range(1, 30):
        acc = (acc * FJSeries.q_series([1] + [0] * (n - 1) + [-1])).truncate(30)
    assert euler_product(30) == acc


@given(st.integers(-12, 12))
def test_eta_power(e):
    direct = eta(4) ** e if e >= 0 else eta(4).inverse() ** (-e)
    assert eta_power(e, 3).equal_to_order(direct.truncate(3), 3)


def test_eta_quotient_matches_factors():
    s = eta_quotient("1^8 2^8", 5)
    direct = (eta_power(8, 5) * eta_power(8, F(5, 2)).q_affine(2)).truncate(5)
    assert s == direct
    assert s.valuation == 1


def test_cycle_shape_parsing():
    assert CycleShape.parse("1^8 2^8").pairs == ((1, 8), (2, 8))
    assert CycleShape.parse("8^{-1}16^2").pairs == ((8, -1), (16, 2))
    assert CycleShape.parse("1^5 2^5 3^4 4^3 5^2 6 7").weight == F(21, 2)
    assert CycleShape.parse("1^{24}").eta_q_offset == 1
    # a bare exponent without whitespace is one digit
    assert CycleShape.parse("1^24").pairs == ((1, 2), (4, 1))


def test_theta_block_leading_term():
    tb = theta_block("A1,16", 3)
    q, v, c = tb.terms()[0]
    assert q == F(1, 8) and c in (1, -1)


@pytest.mark.parametrize("g", ["A1,16", "A2,9", "B2,3G2,4"])
def test_theta_block_leading_slice_is_weyl_sum(g):
    # the lowest q-slice of the theta block is the alternating Weyl sum of rho
    tb = theta_block(g, 2)
    v = tb.valuation
    assert {k: c for k, c in tb.q_slice(v).items()} == weyl_alternating_sum(g)


def test_doubling_identities_factorwise():
    assert doubling_factor_identities(4) == (True, True)


def test_doubling_identities_negative_control():
    # the same identity with theta10 in place of theta01 fails
    o = F(4)
    t11 = theta_variant("11", 1, o)
    lhs = (theta_variant("11", 1, 2 * o).q_affine(F(1, 2)) * eta_power(2, o)).truncate(o)
    rhs = (theta_variant("10", 1, o) * t11 * eta(2 * o).q_affine(F(1, 2))).truncate(o)
    assert not lhs.equal_to_order(rhs, o)


@pytest.mark.parametrize("spec,seed", [("A1", 3), ("A2", 4), ("A1+A1", 5)])
def test_doubling_identities_pullbacks(spec, seed):
    L = build(spec)
    rng = random.Random(seed)
    vecs = [v.coords for v in short_vectors(L, 2, in_dual=True)]
    coords = [rng.choice(vecs) for _ in range(12)]
    assert doubling_pullback_identities(coords, L, 4) == (True, True)


@pytest.mark.parametrize("g", ["A1,16", "A2,9", "A1,4^4", "A1,2^8"])
def test_phi_q0_is_rank_plus_roots(g):
    g = SemisimpleAlgebra.parse(g)
    phi = phi_input(g, 1)
    assert phi.valuation >= 0
    q0 = phi.q_slice(0)
    assert q0[(F(0),) * g.rank] == g.rank
    assert sum(q0.values()) == g.dim
