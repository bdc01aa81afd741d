from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from hyperlift import linalg as la
from hyperlift.lattice import (LatticeError, build, coset_min_brute, coset_representatives, delta,
                               discriminant_group, find_embedding, find_embeddings, short_vectors)


def test_build_and_det():
    assert build("A2").det == 3
    assert build("D4").det == 4
    assert build("E8").det == 1
    assert build("A1(16)").gram == ((32,),)
    assert build("2A1(3)+A2").rank == 4
    assert build("A3'(8)").det == F(8 ** 3, 4)


def test_rejects_odd_and_indefinite():
    with pytest.raises(LatticeError):
        build("Z")
    with pytest.raises(LatticeError):
        build("A2(1/2)")


@pytest.mark.parametrize("spec", ["A2", "D4", "A1(3)+A2(2)", "A4'(5)"])
def test_discriminant_order(spec):
    L = build(spec)
    assert discriminant_group(L).order == L.det
    assert len(coset_representatives(L)) == L.det


@pytest.mark.parametrize("spec", ["A2", "D4", "A1+A1(3)", "A2(2)", "D4(3)", "A3"])
def test_delta_against_brute_force(spec):
    L = build(spec)
    brute = max(coset_min_brute(L, v) for v in coset_representatives(L))
    d, dhat = delta(L)
    assert d == brute
    assert dhat == -(-d // 2) - 1


@given(st.integers(2, 5))
def test_delta_rescaling(a):
    L = build("A2")
    assert delta(L.rescale(a))[0] >= delta(L)[0]


def test_short_vectors_counts():
    assert len(short_vectors(build("E8"), 2)) == 240
    assert len(short_vectors(build("D4"), 2)) == 24
    assert len(short_vectors(build("A2"), F(2, 3), in_dual=True)) == 6


@pytest.mark.parametrize("a,b", [("A2(4)", "A1+A1(3)"), ("4A1", "D4"), ("A1(4)", "A1")])
def test_embedding_is_isometric(a, b):
    L1, L2 = build(a), build(b)
    m = find_embedding(L1, L2)
    assert la.matmul(la.matmul(la.transpose(m), [list(r) for r in L2.gram]), m) == \
        [[F(x) for x in r] for r in L1.gram]


def test_embedding_absent():
    assert find_embedding(build("A1"), build("A1(2)")) is None
    assert find_embeddings(build("A1"), build("A1(2)")) == []


def test_find_embeddings_counts_automorphisms():
    # Aut(A2) has order 12
    assert len(find_embeddings(build("A2"), build("A2"))) == 12
