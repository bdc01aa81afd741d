"""Borcherds products and additive lifts as Fourier-Jacobi expansions."""

import math
from dataclasses import dataclass
from fractions import Fraction

from . import linalg as la
from .blocks import (CycleShape, along, eta_power, is_symmetric_input, load_fixture, orbit_lattice_data,
                     theta_block, theta_variant, to_frame)
from .fjseries import FJSeries
from .hecke import hecke_T
from .lattice import DualVector, short_vectors
from .rootdata import SemisimpleAlgebra


class LiftError(ValueError):
    pass


@dataclass(frozen=True)
class WeylVector:
    A: Fraction
    B: DualVector
    Cc: Fraction

    def norm(self, lattice):
        return lattice.norm(self.B.coords) - 2 * self.A * self.Cc

    def as_tuple(self):
        return (-self.A, self.B.coords, -self.Cc)


@dataclass
class FJExpansion:
    leading: FJSeries
    coefficients: list
    xi_order: int
    weyl: WeylVector = None
    q_order: Fraction = None
    xi_offset: Fraction = Fraction(0)

    def coefficient(self, j):
        """Series at xi^(offset + j); j = 0 is the leading coefficient."""
        return self.leading if j == 0 else self.coefficients[j - 1]

    def to_json(self):
        return {"xi_offset": str(self.xi_offset), "xi_order": self.xi_order,
                "q_order": None if self.q_order is None else str(self.q_order),
                "coefficients": [self.leading.to_json()] + [c.to_json() for c in self.coefficients]}


def _positive(ell, functional):
    """l > 0: sign of (functional . l), ties broken lexicographically."""
    if functional is not None:
        s = la.dot(functional, ell)
        if s:
            return s > 0
    for x in ell:
        if x:
            return x > 0
    return False


def weyl_vector(phi, L, functional=None):
    """(A, B, C) from the q^0 slice: A = sum f/24, B = (1/2) sum_{l>0} f l, C = sum f (l,l) / (2 rk)."""
    q0 = phi.q_slice(0)
    A = Fraction(sum(q0.values()), 24)
    B = [Fraction(0)] * L.rank
    Cc = Fraction(0)
    for ell, c in q0.items():
        Cc += c * L.norm(ell)
        if any(ell) and _positive(ell, functional):
            B = [b + Fraction(c, 2) * x for b, x in zip(B, ell)]
    return WeylVector(A, DualVector(B), Cc / (2 * L.rank))


def generalized_theta_block(q0, L, order, functional=None):
    """eta^f(0,0) prod_{l>0} (theta(tau, (l, z))/eta)^f(0,l) below q^order."""
    order = Fraction(order)
    f00 = q0.get(tuple([Fraction(0)] * L.rank), 0)
    factors = []
    for ell, c in sorted(q0.items()):
        if any(ell) and _positive(ell, functional):
            if c < 0 or Fraction(c).denominator != 1:
                raise LiftError("theta block exponents must be non-negative integers")
            factors.extend([ell] * int(c))
    eta_exp = f00 - len(factors)
    lead = Fraction(len(factors), 8)
    theta_order = order - Fraction(eta_exp, 24)
    acc = FJSeries.one(L)
    if theta_order > lead:
        base = theta_variant("11", 1, theta_order - lead + Fraction(1, 8))
        for ell in factors:
            acc = (acc * along(base, ell, L)).truncate(theta_order)
    else:
        return FJSeries.zero(L, order)
    return (acc * eta_power(eta_exp, order - lead)).truncate(order)


def input_order_needed(q_order, xi_order, A, valuation):
    """q-order of phi that makes every xi-coefficient valid below q^q_order."""
    v0 = max(Fraction(0), -Fraction(valuation))
    need = Fraction(0)
    for j in range(1, xi_order + 1):
        for i in range(1, j + 1):
            need = max(need, i * (Fraction(q_order) - A + (j - i) * v0 + v0 * (xi_order - j)))
    return need


def borcherds_fj(phi, L, xi_order, q_order, functional=None):
    """Theta_{f(0,*)} xi^C exp(-sum_m (phi|T_-(m)) xi^m), coefficients up to xi^(C + xi_order)."""
    q_order = Fraction(q_order)
    weyl = weyl_vector(phi, L, functional)
    q0 = phi.q_slice(0)
    for (n, ell, c) in phi.terms():
        if 2 * n < L.norm(ell) and Fraction(c).denominator != 1:
            raise LiftError("singular coefficients must be integral")
    v0 = max(Fraction(0), -phi.valuation) if not phi.is_zero() else Fraction(0)
    lead = generalized_theta_block(q0, L, q_order + xi_order * v0, functional)
    psi = [None] + [hecke_T(phi, 0, m, lattice=L) for m in range(1, xi_order + 1)]
    target = q_order - weyl.A
    E = [FJSeries.one(L)]
    for j in range(1, xi_order + 1):
        acc = FJSeries.zero(L)
        for i in range(1, j + 1):
            acc = acc + (psi[i] * E[j - i]).scale(i)
        E.append(acc.scale(Fraction(-1, j)).truncate(target + (xi_order - j) * v0)._as_int())
    coeffs = []
    for j in range(1, xi_order + 1):
        c = (lead * E[j]).truncate(q_order)._as_int()
        if c.order < q_order:
            raise LiftError(f"input expansion too short: xi^{j} coefficient valid only below q^{c.order}")
        coeffs.append(c)
    return FJExpansion(lead.truncate(q_order), coeffs, xi_order, weyl, q_order, weyl.Cc)


def kronecker_m4(m):
    """(-4/m)."""
    if m % 2 == 0:
        return 0
    return 1 if m % 4 == 1 else -1


def _algebra(g):
    return SemisimpleAlgebra.parse(g) if isinstance(g, str) else g


def theta_block_on_orbit_lattice(g, order):
    g = _algebra(g)
    lat, cols = orbit_lattice_data(g)
    return to_frame(theta_block(g, order), cols, lat), lat


def additive_fj(g, xi_order, q_order):
    """FJ coefficients of the additive lift G(theta_g) at xi^(C + j), j = 0..xi_order."""
    g = _algebra(g)
    q_order = Fraction(q_order)
    if not is_symmetric_input(g):
        raise LiftError(f"{g}: additive lift needs a symmetric algebra")
    C = g.C()
    lat, cols = orbit_lattice_data(g)
    if str(g) == "A1,16":
        # trivial lift: sum_m (-4/m) theta(tau, m z) xi^(m^2/8)
        alpha = to_frame_vec(g.positive_root_exponents[0], cols)
        coeffs = []
        for j in range(0, xi_order + 1):
            m2 = 1 + 8 * j
            m = math.isqrt(m2)
            if m * m != m2:
                coeffs.append(FJSeries.zero(lat, q_order))
                continue
            th = along(theta_variant("11", m, q_order), alpha, lat)
            coeffs.append(th.scale(kronecker_m4(m)))
        return FJExpansion(coeffs[0], coeffs[1:], xi_order, None, q_order, C)
    Q = 1 / C
    if Q.denominator != 1:
        raise LiftError(f"{g}: 1/C must be an integer")
    Q = int(Q)
    D = 24 // Q
    k = Fraction(g.rank, 2)
    if k.denominator != 1:
        raise LiftError(f"{g}: odd rank gives half-integral weight")
    k = int(k)
    mmax = 1 + xi_order * Q
    tb, _ = theta_block_on_orbit_lattice(g, q_order * mmax)
    coeffs = []
    for j in range(0, xi_order + 1):
        m = 1 + j * Q
        s = hecke_T(tb, k, m, D=0 if Q == 1 else D, lattice=lat)
        coeffs.append(s.truncate(q_order))
    return FJExpansion(coeffs[0], coeffs[1:], xi_order, None, q_order, C)


def to_frame_vec(v, cols):
    return tuple(la.matvec(la.inverse(cols), list(v)))


def cusp_delta(g):
    """(cycle shape, c) of the cusp eta quotient attached to a hyperbolizable algebra."""
    g = _algebra(g)
    table = load_fixture("cusp_shapes.json")
    row = table.get(str(g))
    if row is None:
        raise LiftError(f"{g}: no cusp data (not hyperbolizable or not tabulated)")
    shape = CycleShape.parse(row["shape"])
    c = Fraction(row["c"])
    # singular-weight bookkeeping: weight rk/2 and an eta offset of one
    if shape.eta_q_offset != 1:
        raise LiftError(f"{g}: eta quotient offset {shape.eta_q_offset} != 1")
    return shape, c


def _binomial_series(e, kmax):
    """Coefficients of (1 - X)^e up to X^kmax."""
    out = [Fraction(1)]
    for k in range(kmax):
        out.append(out[-1] * (k - e) / (k + 1))
    return [int(c) if c.denominator == 1 else c for c in out]


def _power_factor(L, n, ell, e, kmax):
    """(1 - q^n zeta^ell)^e as a series, terms up to X^kmax."""
    cs = _binomial_series(e, kmax)
    return FJSeries.from_terms(L, [(n * k, tuple(k * x for x in ell), c) for k, c in enumerate(cs) if c])


def product_expansion_direct(phi, L, xi_order, q_order, functional=None):
    """q^A zeta^B xi^C prod_{(n,l,m) > 0} (1 - q^n zeta^l xi^m)^f(nm, l), multiplied out factor by factor.

    (n, l, m) > 0 means m > 0, or m = 0 and n > 0, or m = n = 0 and l < 0.
    Returns the xi^(C + j) coefficients for j = 0..xi_order, each below q^q_order."""
    q_order = Fraction(q_order)
    terms = [(Fraction(n), ell, c) for n, ell, c in phi.terms()]
    if any(n.denominator != 1 for n, _, _ in terms):
        raise LiftError("q-exponents of the input must be integral")
    q0 = [(ell, c) for n, ell, c in terms if n == 0]
    A = Fraction(sum(c for _, c in q0), 24)
    B = [Fraction(0)] * L.rank
    Cc = Fraction(0)
    for ell, c in q0:
        Cc += c * L.norm(ell)
        if any(ell) and _positive(ell, functional):
            B = [b + Fraction(c, 2) * x for b, x in zip(B, ell)]
    Cc /= 2 * L.rank
    v0 = max(Fraction(0), -min((n for n, _, _ in terms), default=Fraction(0)))
    top = q_order + xi_order * v0
    if phi.order != math.inf and phi.order < xi_order * (top - A) + 1:
        raise LiftError("input expansion too short for the direct product")

    # xi^0 part: theta-block style factors
    lead = FJSeries.from_terms(L, [(A, B, 1)])
    budget = top - A
    for ell, c in q0:
        nonzero = any(ell)
        if nonzero and not _positive(ell, functional):
            if c < 0 or Fraction(c).denominator != 1:
                raise LiftError("theta block exponents must be non-negative integers")
            lead = lead * _power_factor(L, 0, ell, c, int(c))
        for n in range(1, math.ceil(budget)):
            lead = (lead * _power_factor(L, n, ell, c, math.ceil(budget / n))).truncate(top)
    lead = lead.truncate(top)

    # xi^m parts, m >= 1, as a polynomial in xi truncated at xi^xi_order
    target = q_order - A
    P = [FJSeries.one(L)] + [FJSeries.zero(L) for _ in range(xi_order)]
    for m in range(1, xi_order + 1):
        for N, ell, c in terms:
            if N % m:
                continue
            n = N // m
            kmax = xi_order // m
            if n >= target + (xi_order - m) * v0:
                continue  # can only reach q-exponents beyond the truncation
            cs = _binomial_series(c, kmax)
            new = []
            for j in range(xi_order + 1):
                acc = FJSeries.zero(L)
                for k in range(0, j // m + 1):
                    if cs[k] == 0 or P[j - m * k].is_zero():
                        continue
                    mono = FJSeries.from_terms(L, [(n * k, tuple(k * x for x in ell), cs[k])])
                    acc = acc + mono * P[j - m * k]
                new.append(acc.truncate(target + (xi_order - j) * v0))
            P = new
    out = []
    for j in range(xi_order + 1):
        out.append((lead * P[j]).truncate(q_order)._as_int())
    return Cc, out


def random_small_input(L, rng, q_range=(-1, 6), max_norm=2, max_coeff=2):
    """Symmetric integral f(n, l) = f(n, -l) on short dual vectors, with f(0, l) >= 0 for l != 0."""
    vecs = [v.coords for v in short_vectors(L, max_norm, in_dual=True) if _positive(v.coords, None)]
    zero = (Fraction(0),) * L.rank
    terms = []
    for n in range(q_range[0], q_range[1] + 1):
        terms.append((n, zero, rng.randint(-max_coeff - 1, max_coeff + 1)))
        for v in vecs:
            c = rng.randint(0, max_coeff) if n == 0 else rng.randint(-max_coeff, max_coeff)
            terms += [(n, v, c), (n, tuple(-x for x in v), c)]
    return FJSeries.from_terms(L, terms)
