"""Exact integer and rational matrix helpers."""

from fractions import Fraction
from math import gcd, lcm


def to_fractions(m):
    return [[Fraction(x) for x in row] for row in m]


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m):
    return [list(col) for col in zip(*m)] if m else []


def matmul(a, b):
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def _scaled(values):
    """(integers, den) with values = integers / den."""
    den = lcm(1, *(x.denominator for x in values if isinstance(x, Fraction)))
    if den == 1:
        return [int(x) for x in values], 1
    return [int(x * den) for x in values], den


def _ints(values):
    return all(isinstance(x, int) or (isinstance(x, Fraction) and x.denominator == 1) for x in values)


def matvec(a, v):
    if a and _ints(a[0]) and all(_ints(r) for r in a):
        w, den = _scaled(v)
        return [Fraction(sum(int(x) * y for x, y in zip(row, w)), den) for row in a]
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def quad(gram, v):
    if all(_ints(r) for r in gram):
        w, den = _scaled(v)
        return Fraction(sum(w[i] * int(x) * w[j] for i, row in enumerate(gram) if w[i]
                            for j, x in enumerate(row) if x and w[j]), den * den)
    return dot(v, matvec(gram, v))


def det(m):
    """Determinant by fraction-free elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = to_fractions(m)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    d = sign * a[n - 1][n - 1]
    return int(d) if d.denominator == 1 else d


def inverse(m):
    n = len(m)
    a = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(to_fractions(m))]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def solve(m, b):
    inv = inverse(m)
    return matvec(inv, [Fraction(x) for x in b])


def leading_minors_positive(m):
    return all(det([row[:k] for row in m[:k]]) > 0 for k in range(1, len(m) + 1))


def common_denominator(values):
    d = 1
    for x in values:
        d = lcm(d, Fraction(x).denominator)
    return d


def is_integral(values):
    return all(Fraction(x).denominator == 1 for x in values)


def snf(m):
    """Smith normal form: returns (diag, P, Q) with P*m*Q diagonal.

    P and Q are unimodular; diag lists the diagonal (length min(rows, cols)),
    nonnegative with d_i | d_{i+1} among the nonzero entries.
    """
    rows, cols = len(m), len(m[0]) if m else 0
    a = [list(map(int, r)) for r in m]
    p = identity(rows)
    q = identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        p[i], p[j] = p[j], p[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in q:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, f):
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        p[dst] = [x + f * y for x, y in zip(p[dst], p[src])]

    def add_col(src, dst, f):
        for r in a:
            r[dst] += f * r[src]
        for r in q:
            r[dst] += f * r[src]

    for t in range(min(rows, cols)):
        while True:
            nz = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
            if not nz:
                break
            _, i, j = min(nz)
            swap_rows(t, i)
            swap_cols(t, j)
            done = True
            for i in range(t + 1, rows):
                f = a[i][t] // a[t][t]
                if f:
                    add_row(t, i, -f)
                if a[i][t]:
                    done = False
            for j in range(t + 1, cols):
                f = a[t][j] // a[t][t]
                if f:
                    add_col(t, j, -f)
                if a[t][j]:
                    done = False
            if not done:
                continue
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if t < rows and t < cols and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            p[t] = [-x for x in p[t]]
    diag = [a[i][i] for i in range(min(rows, cols))]
    return diag, p, q


def lattice_index(generators, rank):
    """Index of the span of integer generators in Z^rank (0 if not full rank)."""
    if not generators:
        return 0
    diag, _, _ = snf([list(map(int, g)) for g in generators])
    nonzero = [d for d in diag if d]
    if len(nonzero) < rank:
        return 0
    out = 1
    for d in nonzero:
        out *= d
    return out


def integer_kernel_mod2(weights):
    """Basis of {x in Z^n : sum w_i x_i even}."""
    n = len(weights)
    odd = [i for i, w in enumerate(weights) if w % 2]
    if not odd:
        return identity(n)
    i0 = odd[0]
    basis = []
    for i in range(n):
        v = [0] * n
        if i == i0:
            v[i] = 2
        else:
            v[i] = 1
            if weights[i] % 2:
                v[i0] = 1
        basis.append(v)
    return basis


def gcd_list(values):
    g = 0
    for v in values:
        g = gcd(g, int(v))
    return g
