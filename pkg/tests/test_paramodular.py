import re
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from hyperlift.blocks import load_fixture
from hyperlift.paramodular import FORMS, ParamodularError, block_spec, expand, is_squarefree, search, verify_table

# second, independently typed copy of the 21 arguments
WRITTEN = """a1 a2 a3 a4 a5 a1+a2 a1+a2+a3 a1+a2+a3+a4 a2+a3 a2+a3+a4 a3+a4 a1+a2+a3+a5 a2+a3+a5 a3+a5
a1+2a2+2a3+a4+a5 a1+a2+2a3+a4+a5 a1+a2+a3+a4+a5 a2+2a3+a4+a5 a2+a3+a4+a5 a3+a4+a5 2a6"""


def _parse(form):
    v = [0] * 6
    for c, i in re.findall(r"(\d*)a(\d)", form):
        v[int(i) - 1] += int(c or 1)
    return tuple(v)


def test_forms_transcription():
    assert tuple(_parse(f) for f in WRITTEN.split()) == FORMS


def test_first_row():
    spec = block_spec((1, 1, 1, 1, 1, 1))
    assert spec.N == 122 and spec.weight == 3
    s = expand(spec.a, 5)
    assert not s.is_zero() and s.valuation == 2


@given(st.tuples(*[st.integers(-3, 3)] * 6))
def test_index_is_half_sum_of_squares(a):
    spec = block_spec(a)
    assert 2 * spec.N == sum(b * b for b in spec.arguments)
    assert sum(spec.multiset().values()) == 21


@given(st.tuples(*[st.integers(1, 2)] * 6))
def test_expansion_integral_and_starts_at_q2(a):
    s = expand(a, 3)
    assert s.valuation == 2
    assert all(F(c).denominator == 1 for _, _, c in s.terms())


def test_zero_argument():
    assert expand((1, -1, 0, 1, 1, 1), 3).is_zero()


def test_bad_input():
    with pytest.raises(ParamodularError):
        block_spec((1, 2, 3))


def test_table():
    rep = verify_table(order=5)
    assert len(rep) == 64 and all(r["ok"] for r in rep)
    rows = load_fixture("table8.json")["rows"]
    assert {r["N"] for r in rows} >= {122, 138, 167, 293}


def test_squarefree_and_search():
    assert is_squarefree(122) and not is_squarefree(12)
    found = search(height=1)
    assert 122 in found and found[122] and min(found) > 0
