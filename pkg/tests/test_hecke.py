import math
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from hyperlift.fjseries import FJSeries
from hyperlift.hecke import (HeckeError, S, T, bezout, eta_multiplier, eta_multiplier_dedekind, hecke_T)
from hyperlift.lattice import build


def _mul(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)) for i in range(2))


words = st.lists(st.tuples(st.sampled_from(["T", "S", "Ti"]), st.integers(1, 3)), min_size=1, max_size=8)


def _matrix(word):
    m = ((1, 0), (0, 1))
    gens = {"T": T, "S": S, "Ti": ((1, -1), (0, 1))}
    for g, k in word:
        for _ in range(k):
            m = _mul(m, gens[g])
    return m


@given(words)
def test_multiplier_word_vs_dedekind(word):
    m = _matrix(word)
    assert eta_multiplier(m) == eta_multiplier_dedekind(m)


def test_multiplier_generators():
    assert eta_multiplier(T) == 1
    assert eta_multiplier(S) == 21
    with pytest.raises(HeckeError):
        eta_multiplier(((2, 0), (0, 1)))


@given(st.integers(1, 50), st.sampled_from([1, 2, 3, 4, 6, 8, 12, 24]))
def test_bezout(m, q):
    if math.gcd(m, q) != 1:
        with pytest.raises(HeckeError):
            bezout(m, q)
    else:
        x, y = bezout(m, q)
        assert m * x + q * y == 1


A1 = build("A1")


def _phi():
    terms = [(-1, (0,), 1), (0, (0,), 10), (0, (F(1, 2),), 3), (0, (F(-1, 2),), 3), (1, (F(1),), -2),
             (1, (F(-1),), -2), (1, (0,), 5), (2, (F(1, 2),), 7), (2, (F(-1, 2),), 7)]
    return FJSeries.from_terms(A1, terms, 5)


def test_hecke_identity():
    assert hecke_T(_phi(), 0, 1) == _phi()


@pytest.mark.parametrize("m", [2, 3, 4])
def test_hecke_weight_zero_formula(m):
    # f_m(n, l) = sum_{a | (n, l, m)} a^-1 f(nm / a^2, l / a), evaluated term by term
    phi = _phi()
    out = hecke_T(phi, 0, m)
    f = phi.as_dict()
    for (n, l), c in out.as_dict().items():
        want = F(0)
        for a in range(1, m + 1):
            if m % a == 0 and (n / a).denominator == 1:
                want += F(1, a) * f.get((n * m / (a * a), tuple(x / a for x in l)), 0)
        assert c == want
