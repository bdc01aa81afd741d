from fractions import Fraction as F

from hypothesis import given, strategies as st

from hyperlift import linalg as la

small = st.integers(-6, 6)
rat = st.builds(F, st.integers(-9, 9), st.integers(1, 6))


def square(n, elems=small):
    return st.lists(st.lists(elems, min_size=n, max_size=n), min_size=n, max_size=n)


@given(st.integers(1, 4).flatmap(lambda n: square(n)))
def test_snf(m):
    diag, p, q = la.snf(m)
    d = la.matmul(la.matmul(p, m), q)
    n = len(m)
    assert all(d[i][j] == (diag[i] if i == j else 0) for i in range(n) for j in range(n))
    assert abs(la.det(p)) == 1 and abs(la.det(q)) == 1
    nz = [x for x in diag if x]
    assert all(x > 0 for x in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


@given(st.integers(1, 4).flatmap(lambda n: square(n)))
def test_lattice_index_is_abs_det(m):
    assert la.lattice_index(m, len(m)) == abs(la.det(m))


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(square(n), st.lists(rat, min_size=n, max_size=n))))
def test_matvec_and_quad_fast_paths(data):
    m, v = data
    naive = [sum((F(a) * b for a, b in zip(row, v)), F(0)) for row in m]
    assert la.matvec(m, v) == naive
    sym = [[m[i][j] + m[j][i] for j in range(len(m))] for i in range(len(m))]
    assert la.quad(sym, v) == sum((F(x) * y for x, y in zip(v, la.matvec(sym, v))), F(0))


@given(st.integers(1, 4).flatmap(lambda n: square(n)))
def test_inverse(m):
    if la.det(m) != 0:
        inv = la.inverse(m)
        assert la.matmul(m, inv) == la.identity(len(m))


@given(st.lists(small, min_size=1, max_size=5))
def test_even_kernel(w):
    basis = la.integer_kernel_mod2(w)
    assert all(sum(a * b for a, b in zip(w, v)) % 2 == 0 for v in basis)
    expected = 2 if any(x % 2 for x in w) else 1
    assert la.lattice_index(basis, len(w)) == expected
