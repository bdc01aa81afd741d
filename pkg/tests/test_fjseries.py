from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from hyperlift.fjseries import FJSeries, SeriesError, pack, unpack, solve_quotient
from hyperlift.lattice import build

A1 = build("A1")
A2 = build("A2")

coeff = st.integers(-3, 3)
qexp = st.integers(0, 4)
zexp = st.integers(-4, 4).map(lambda x: F(x, 2))


@st.composite
def series(draw, order=F(5)):
    terms = draw(st.lists(st.tuples(qexp, st.tuples(zexp), coeff), max_size=6))
    return FJSeries.from_terms(A1, terms, order)


@given(st.lists(st.integers(-1000, 1000), min_size=1, max_size=5))
def test_pack_roundtrip(v):
    assert unpack(pack(v), len(v)) == v


def test_pack_range():
    with pytest.raises(SeriesError):
        pack([1 << 30])


@given(series(), series())
def test_commutative(a, b):
    assert a * b == b * a
    assert a + b == b + a


@given(series(), series(), series())
def test_associative_distributive(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(series())
def test_additive_inverse(a):
    assert (a - a).is_zero()


def test_truncation_is_strict():
    s = FJSeries.from_terms(A1, [(0, (0,), 1), (1, (0,), 2), (2, (0,), 3)])
    t = s.truncate(2)
    assert t.coefficient(1, (0,)) == 2
    assert t.coefficient(2, (0,)) == 0
    assert t.order == 2


def test_product_order():
    a = FJSeries.from_terms(A1, [(1, (0,), 1)], 3)
    b = FJSeries.from_terms(A1, [(0, (0,), 1)], 2)
    assert (a * b).order == min(3 + 0, 2 + 1)


@given(st.lists(st.tuples(st.integers(1, 4), st.tuples(zexp), coeff), max_size=5))
def test_inverse(tail):
    s = FJSeries.from_terms(A1, [(0, (F(1, 2),), 1)] + tail, 5)
    assert (s * s.inverse()).equal_to_order(FJSeries.one(A1), 5)


def test_q_affine_and_scale_zeta():
    s = FJSeries.from_terms(A1, [(1, (F(1, 2),), 1), (2, (0,), 5)], 3)
    d = s.q_affine(2)
    assert d.coefficient(2, (F(1, 2),)) == 1 and d.coefficient(4, (0,)) == 5 and d.order == 6
    z = s.scale_zeta(3)
    assert z.coefficient(1, (F(3, 2),)) == 1
    with pytest.raises(SeriesError):
        FJSeries.from_terms(A1, [(F(1, 3), (0,), 1)]).q_affine(1, F(1, 2))


@given(series(), series())
def test_map_zeta_is_ring_map(a, b):
    m = [[1], [1]]
    assert (a * b).map_zeta(m, A2) == a.map_zeta(m, A2) * b.map_zeta(m, A2)


def test_lattice_mismatch():
    with pytest.raises(SeriesError):
        FJSeries.one(A1) + FJSeries.one(A2)


def test_solve_quotient_recovers_factor():
    f = FJSeries.from_terms(A1, [(0, (F(1, 2),), 1), (0, (F(-1, 2),), -1), (1, (0,), 3)], 4)
    g = FJSeries.from_terms(A1, [(0, (F(1, 2),), 1), (1, (F(1),), -2)], 4)
    phi = solve_quotient(f * g, g, 10)
    assert phi.equal_to_order(f, phi.order)


def test_json_is_deterministic():
    s = FJSeries.from_terms(A2, [(1, (F(1, 3), F(2, 3)), 2), (0, (0, 0), -1)], 3)
    assert s.dumps() == FJSeries.from_terms(A2, list(reversed(s.terms())), 3).dumps()
