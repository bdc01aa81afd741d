from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from hyperlift.blocks import SYMMETRIC, load_fixture
from hyperlift.classify import (ClassifyError, check_bounds, is_hyperbolizable, orbit_lattice, orbit_lattice_spec,
                                pieces, solve)
from hyperlift.rootdata import SemisimpleAlgebra, dimension, dual_coxeter


def test_counts():
    anti, sym = solve(1), solve(0)
    assert len(anti) == 221 and len(sym) == 17
    assert sum(s.hyperbolizable for s in anti) == 69
    assert sum(s.hyperbolizable for s in sym) == 12


@pytest.mark.parametrize("a,case", [(1, "anti"), (0, "sym")])
def test_full_multiset_matches_table(a, case):
    rows = load_fixture("classification.json")[case]
    want = sorted((str(SemisimpleAlgebra.parse(r["algebra"])), F(r["C"]), r["hyperbolizable"]) for r in rows)
    got = sorted((str(s.algebra), s.C, s.hyperbolizable) for s in solve(a))
    assert got == want


@pytest.mark.parametrize("a", [0, 1])
def test_defining_equations(a):
    for s in solve(a):
        g = s.algebra
        assert g.dim == 24 * (s.C + a)
        assert all(F(dual_coxeter(i.type), i.level) == s.C for i in g.ideals)
        if a == 0:
            assert min(g.levels) > 1


def test_sorted_and_unique():
    sols = solve(1)
    keys = [(s.C, s.algebra.key) for s in sols]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)


@given(st.sampled_from([0, 1]))
def test_pieces_constraints(a):
    for t, k in pieces(a):
        h = dual_coxeter(t)
        assert (24 * h) % k == 0
        assert dimension(t) <= 24 * (F(h, k) + a)
        assert a or k > 1


def test_symmetric_rule():
    for s in solve(0):
        assert s.hyperbolizable == ((1 / s.C).denominator == 1)
        assert is_hyperbolizable(s) == s.hyperbolizable


def test_known_members():
    names = {str(s.algebra) for s in solve(1)}
    assert "D24,1" in names and "E8,1^3" in names
    assert str(SemisimpleAlgebra.parse("B12,2")) in names


def test_orbit_lattices():
    assert orbit_lattice_spec("A1,16")
    with pytest.raises(ClassifyError):
        orbit_lattice_spec("A1,48^3A2,72^2")


@pytest.mark.parametrize("g", SYMMETRIC)
def test_bounds_symmetric(g):
    assert check_bounds(g)


def test_bad_a():
    with pytest.raises(ClassifyError):
        solve(2)


def test_genus_only_rows():
    L = orbit_lattice("D24,1")
    assert isinstance(L, str) and L.startswith("II_")
