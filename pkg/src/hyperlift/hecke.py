"""Eta multiplier system and the Hecke-type operators T_-^(Q)(m) on Fourier coefficients."""

import math
from fractions import Fraction

from .fjseries import FJSeries, unpack

T = ((1, 1), (0, 1))
S = ((0, -1), (1, 0))
I2 = ((1, 0), (0, 1))
MINUS_I = ((-1, 0), (0, -1))

# exponents of e(1/24)
_GENERATOR_VALUES = {T: 1, S: -3 % 24, MINUS_I: -6 % 24, I2: 0}


class HeckeError(ValueError):
    pass


def _mul(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)) for i in range(2))


def _det(m):
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


# exact Gaussian rationals as (re, im) pairs

def _cmul(u, v):
    return (u[0] * v[0] - u[1] * v[1], u[0] * v[1] + u[1] * v[0])


def _cdiv(u, v):
    n = v[0] * v[0] + v[1] * v[1]
    return ((u[0] * v[0] + u[1] * v[1]) / n, (u[1] * v[0] - u[0] * v[1]) / n)


def _act(m, tau):
    num = (m[0][0] * tau[0] + m[0][1], m[0][0] * tau[1])
    den = (m[1][0] * tau[0] + m[1][1], m[1][0] * tau[1])
    return _cdiv(num, den)


def _automorphy(m, tau):
    return (m[1][0] * tau[0] + m[1][1], m[1][0] * tau[1])


def _arg_positive(u):
    return u[1] > 0 or (u[1] == 0 and u[0] < 0)


def _arg_negative(u):
    return u[1] < 0


def _branch_sign(u, v):
    """sqrt(u) sqrt(v) = sign * sqrt(u v) for principal square roots; returns 0 or 12 (exponent of e(1/24))."""
    w = _cmul(u, v)
    if _arg_positive(u) and _arg_positive(v) and (w[1] < 0 or (w[1] == 0 and w[0] > 0)):
        return 12
    if _arg_negative(u) and _arg_negative(v) and (w[1] > 0 or (w[1] == 0 and w[0] < 0)):
        return 12
    return 0


def _cocycle(a, b):
    """Exponent c with v(AB) = v(A) v(B) e(c/24) for a multiplier of weight 1/2."""
    tau = (Fraction(0), Fraction(1))
    return _branch_sign(_automorphy(a, _act(b, tau)), _automorphy(b, tau))


def _word(m):
    """Factor m into generators T^k, S and -I (left to right)."""
    a, b, c, d = m[0][0], m[0][1], m[1][0], m[1][1]
    word = []
    while c != 0:
        q = a // c
        if q:
            word.append((T, q))
        a, b = a - q * c, b - q * d
        # [[a,b],[c,d]] = S * [[c,d],[-a,-b]]
        word.append((S, 1))
        a, b, c, d = c, d, -a, -b
    if a == -1:
        word.append((MINUS_I, 1))
        a, b, d = 1, -b, 1
    if b:
        word.append((T, b))
    return word


def eta_multiplier(m):
    """Exponent u in Z/24 with eta(M tau) = e(u/24) (c tau + d)^(1/2) eta(tau)."""
    m = tuple(tuple(int(x) for x in row) for row in m)
    if _det(m) != 1:
        raise HeckeError("matrix must have determinant 1")
    acc, val = I2, 0
    for g, k in _word(m):
        steps = abs(k)
        if g == T:
            gen = T if k > 0 else ((1, -1), (0, 1))
            gval = 1 if k > 0 else -1
        else:
            gen, gval = g, _GENERATOR_VALUES[g]
        for _ in range(steps):
            val = (val + gval + _cocycle(acc, gen)) % 24
            acc = _mul(acc, gen)
    if acc != m:
        raise AssertionError("generator word does not reproduce the matrix")
    return val


def dedekind_sum(d, c):
    """s(d, c) for c > 0."""
    return sum((_saw(Fraction(i, c)) * _saw(Fraction(d * i, c)) for i in range(1, c)), Fraction(0))


def _saw(x):
    if x.denominator == 1:
        return Fraction(0)
    return x - math.floor(x) - Fraction(1, 2)


def eta_multiplier_dedekind(m):
    """Reference value via the Dedekind-sum formula (independent route)."""
    a, b, c, d = m[0][0], m[0][1], m[1][0], m[1][1]
    if c < 0:
        return (eta_multiplier_dedekind(((-a, -b), (-c, -d))) + 6) % 24
    if c == 0:
        # M = T^b or -T^(-b)
        if d == 1:
            return b % 24
        return (-b - 6) % 24
    e = Fraction(a + d, 24 * c) - dedekind_sum(d, c) / 2 - Fraction(1, 8)
    e24 = e * 24
    if e24.denominator != 1:
        raise AssertionError("multiplier exponent not in Z/24")
    return int(e24) % 24


def bezout(m, q):
    """Some (x, y) with m x + q y = 1."""
    g, x, y = _egcd(m, q)
    if g != 1:
        raise HeckeError(f"m={m} is not coprime to Q={q}")
    return x, y


def _egcd(a, b):
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


def sigma(a, m, q, x, y):
    d = m // a
    return ((d * x + q * d * x * y, -q * y), (q * y, a))


def character_value(D, mat):
    """v_eta^D(mat) as an exponent of e(1/24)."""
    if D % 24 == 0:
        return 0
    return (D * eta_multiplier(mat)) % 24


def hecke_T(phi, k, m, D=0, t=1, bezout_pair=None, lattice=None):
    """phi |_{k,t} T_-^(Q)(m), computed on Fourier coefficients.

    f_m(n, l) = sum over a | m, a | nQ, l/a in (1/2)L' of a^(k-1) v^D(sigma_a) f(nm/a^2, l/a).
    D = 0 means the trivial character (Q = 1)."""
    if m < 1:
        raise HeckeError("m must be positive")
    if D and (D % 2 or 24 % D):
        raise HeckeError("D must be an even divisor of 24")
    q = 24 // D if D else 1
    if math.gcd(m, q) != 1:
        raise HeckeError("m must be coprime to Q")
    if q % 2 and Fraction(t).denominator != 1:
        raise HeckeError("odd Q needs an integral index multiplier")
    x, y = bezout_pair if bezout_pair else bezout(m, q)
    if m * x + q * y != 1:
        raise HeckeError("invalid Bezout pair")
    lat = lattice or phi.lattice
    two_gram = None
    if lat is not None and lat.rank:
        two_gram = [[int(2 * v) for v in row] for row in lat.gram]
    order = phi.order / m if phi.order != math.inf else math.inf
    qden = phi.qden * m
    bound = None if order == math.inf else order * qden
    zden = phi.zden
    half_dual = {}

    def in_half_dual(key):
        # l in (1/2)L'  <=>  2 G l integral
        ok = half_dual.get(key)
        if ok is None:
            v = unpack(key, phi.rank)
            ok = all(sum(g * x for g, x in zip(row, v)) % zden == 0 for row in two_gram)
            half_dual[key] = ok
        return ok

    data = {}
    for a in (a for a in range(1, m + 1) if m % a == 0):
        chi = character_value(D, sigma(a, m, q, x, y)) if D else 0
        if chi == 0:
            unit = 1
        elif chi == 12:
            unit = -1
        else:
            raise HeckeError("character value is not real on sigma_a")
        w = unit * Fraction(a) ** (k - 1)
        w = int(w) if w.denominator == 1 else w
        for qn_src, sl in phi.data.items():
            qn = qn_src * a * a  # over qden = phi.qden * m
            if bound is not None and qn >= bound:
                continue
            # a | n Q with n = qn / qden
            if (qn * q) % (a * qden):
                continue
            d = data.setdefault(qn, {})
            for key, c in sl.items():
                if two_gram is not None and not in_half_dual(key):
                    continue
                nk = a * key
                d[nk] = d.get(nk, 0) + w * c
    return FJSeries(phi.lattice, qden, zden, data, order)._clean()._as_int()
