"""Eta quotients, theta functions, theta blocks and the pullback inputs phi_g."""

import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from . import linalg as la
from .fjseries import FJSeries
from .lattice import build
from .rootdata import SemisimpleAlgebra, sublattice_from_basis

A1 = build("A1")


class BlocksError(ValueError):
    pass


@dataclass(frozen=True)
class CycleShape:
    pairs: tuple  # ((k, b_k), ...) sorted by k, b_k != 0

    def __post_init__(self):
        if any(k < 1 for k, _ in self.pairs):
            raise BlocksError("cycle shape entries need k >= 1")

    @classmethod
    def of(cls, mapping):
        items = sorted((int(k), int(b)) for k, b in dict(mapping).items() if b)
        return cls(tuple(items))

    @classmethod
    def parse(cls, text):
        """'1^8 2^8', '8^{-1}16^2', '1^{-2}2^35^210^1'.

        Without whitespace a bare exponent is a single digit; with whitespace each
        token is one factor."""
        token = re.compile(r"\s*(\d+)(?:\^(?:\{\(?(-?\d+)\)?\}|\((-?\d+)\)|(-?\d)))?")
        text = text.strip()
        acc = {}
        if re.search(r"\s", text):
            # whitespace-separated tokens carry exponents of any length
            for tok in text.split():
                m = re.fullmatch(r"\(?(\d+)\)?(?:\^\{?\(?(-?\d+)\)?\}?)?", tok)
                if not m:
                    raise BlocksError(f"cannot parse cycle shape {text!r}")
                k = int(m.group(1))
                acc[k] = acc.get(k, 0) + int(m.group(2) or 1)
            return cls.of(acc)
        pos = 0
        while pos < len(text):
            m = token.match(text, pos)
            if not m or m.end() == pos:
                raise BlocksError(f"cannot parse cycle shape {text!r}")
            exp = next((e for e in m.groups()[1:] if e is not None), "1")
            k = int(m.group(1))
            acc[k] = acc.get(k, 0) + int(exp)
            pos = m.end()
        return cls.of(acc)

    @property
    def weight(self):
        return Fraction(sum(b for _, b in self.pairs), 2)

    @property
    def eta_q_offset(self):
        return Fraction(sum(k * b for k, b in self.pairs), 24)

    @property
    def level(self):
        return math.lcm(*(k for k, _ in self.pairs)) if self.pairs else 1

    def __str__(self):
        def factor(k, b):
            if b == 1:
                return f"{k}"
            return f"{k}^{b}" if 0 < b < 10 else f"{k}^{{{b}}}"
        return " ".join(factor(k, b) for k, b in self.pairs)


@lru_cache(maxsize=None)
def _euler(order):
    """prod (1 - q^n) below q^order via the pentagonal number theorem."""
    coeffs = [0] * order
    k = 0
    while True:
        hit = False
        for kk in ((k,) if k == 0 else (k, -k)):
            e = kk * (3 * kk - 1) // 2
            if e < order:
                coeffs[e] += -1 if kk % 2 else 1
                hit = True
        if not hit and k > 0:
            break
        k += 1
    return tuple(coeffs)


def euler_product(order):
    n = math.ceil(order)
    return FJSeries.q_series(list(_euler(max(n, 1))), order=Fraction(order))


def eta(order):
    """eta(tau) = q^(1/24) prod (1 - q^n) below q^order."""
    order = Fraction(order)
    return euler_product(order - Fraction(1, 24)).shift(Fraction(1, 24))


def eta_power(e, order):
    """eta(tau)^e below q^order for any integer e."""
    order = Fraction(order)
    off = Fraction(e, 24)
    base = euler_product(max(order - off, Fraction(0)) or Fraction(0))
    if order - off <= 0:
        return FJSeries.zero(None, order)
    return (base ** e).truncate(order - off).shift(off)


def eta_quotient(shape, order):
    """prod eta(k tau)^b_k below q^order."""
    if isinstance(shape, str):
        shape = CycleShape.parse(shape)
    order = Fraction(order)
    off = shape.eta_q_offset
    budget = order - off
    if budget <= 0:
        return FJSeries.zero(None, order)
    acc = FJSeries.one(None)
    for k, b in shape.pairs:
        p = euler_product(budget / k).q_affine(k) if budget / k > 0 else FJSeries.one(None)
        acc = (acc * p ** b).truncate(budget)
    return acc.truncate(budget).shift(off)


# univariate thetas in the A1 frame: zeta^s = e(s u) is stored at coordinate s/2

def _theta_terms(kind, order):
    order = Fraction(order)
    terms = []
    if kind in ("11", "10"):
        n = 1
        while Fraction(n * n, 8) < order:
            for m in (n, -n):
                sign = 1 if kind == "10" else (1 if m % 4 == 1 else -1)
                terms.append((Fraction(n * n, 8), (Fraction(m, 4),), sign))
            n += 2
    elif kind in ("00", "01"):
        n = 0
        while Fraction(n * n, 2) < order:
            for m in ((0,) if n == 0 else (n, -n)):
                sign = -1 if (kind == "01" and n % 2) else 1
                terms.append((Fraction(n * n, 2), (Fraction(m, 2),), sign))
            n += 1
    else:
        raise BlocksError(f"unknown theta kind {kind!r}")
    return terms


def theta_variant(kind, mult=1, order=3):
    """theta_kind(tau, mult*u) over A1, below q^order."""
    if mult == 0:
        raise BlocksError("mult must be nonzero")
    s = FJSeries.from_terms(A1, _theta_terms(str(kind), order), order)
    return s.scale_zeta(mult) if mult != 1 else s


def theta_at_zero(kind, order):
    """theta_kind(tau, 0) as a q-series."""
    return theta_variant(kind, 1, order).zeta_one()


def along(s, vec, lattice):
    """Univariate series f(tau, u) over A1 into f(tau, (vec, z)) over `lattice`.

    vec is the zeta exponent (lattice frame) of e((vec, z)); an A1 coordinate x
    carries e(2x u)."""
    if not any(vec):
        return s.zeta_one()
    col = [[2 * Fraction(x)] for x in vec]
    return s.map_zeta(col, lattice)


def theta_block(g, order):
    """eta^r prod_{alpha > 0} theta(tau, <alpha, z>)/eta over Q_g, below q^order."""
    if isinstance(g, str):
        g = SemisimpleAlgebra.parse(g)
    order = Fraction(order)
    roots = g.positive_root_exponents
    eta_exp = g.rank - len(roots)
    lead = Fraction(len(roots), 8)
    need = order - Fraction(eta_exp, 24)  # budget for the theta product
    acc = FJSeries.one(g.Q)
    for v in roots:
        f = along(theta_variant("11", 1, need - lead + Fraction(1, 8)), v, g.Q)
        acc = (acc * f).truncate(need)
    acc = acc * eta_power(eta_exp, order - lead)
    return acc.truncate(order)


# phi_g for the symmetric algebras: the D12 products pulled back along iota_g

def iota(g):
    """The 12 coordinate functionals of iota_g as zeta exponents in Q_g coordinates."""
    if isinstance(g, str):
        g = SemisimpleAlgebra.parse(g)
    c = g.C()
    copies = 1 / c
    if copies.denominator != 1:
        raise BlocksError(f"{g}: 1/C is not an integer")
    coords = [v for v in g.positive_root_exponents for _ in range(int(copies))]
    if len(coords) > 12:
        raise BlocksError(f"{g}: iota needs {len(coords)} > 12 coordinates")
    coords += [(Fraction(0),) * g.rank] * (12 - len(coords))
    # isometry: sum_j (v_j, z)^2 must equal (z, z) on Q_g
    gram = la.to_fractions(g.Q.gram)
    gv = [la.matvec(gram, v) for v in coords]
    outer = [[sum(w[i] * w[j] for w in gv) for j in range(g.rank)] for i in range(g.rank)]
    if outer != gram:
        raise BlocksError(f"{g}: iota is not isometric")
    return coords


def orbit_lattice_data(g):
    """(L_g, basis columns in Q_g coordinates) for the symmetric algebras."""
    if isinstance(g, str):
        g = SemisimpleAlgebra.parse(g)
    pb = g.P_basis
    pg = la.matmul(la.matmul(la.transpose(pb), la.to_fractions(g.Q.gram)), pb)
    if any(x.denominator != 1 for row in pg for x in row):
        raise BlocksError(f"{g}: P_g is not integral")
    ev = la.transpose(la.integer_kernel_mod2([int(pg[i][i]) for i in range(g.rank)]))
    cols = la.matmul(pb, ev)
    return sublattice_from_basis(g.Q.gram, cols, f"L({g})"), cols


def to_frame(s, cols, lattice):
    """Re-express a Q_g-frame series in the basis `cols` (columns in Q_g coordinates)."""
    return s.map_zeta(la.inverse(cols), lattice)


def phi_factor_product(g, kind, order):
    """phi_kind(tau, iota_g(z)) over Q_g, below q^order (kind in 00, 01, 10, 11)."""
    if isinstance(g, str):
        g = SemisimpleAlgebra.parse(g)
    order = Fraction(order)
    coords = iota(g)
    need = order + Fraction(1, 2)  # eta^-12 starts at q^(-1/2)
    lead = Fraction(12, 8) if kind in ("10", "11") else Fraction(0)
    budget = need - lead
    if budget <= 0:
        return FJSeries.zero(g.Q, order)
    shift = Fraction(1, 8) if kind in ("10", "11") else Fraction(0)
    acc = FJSeries.one(g.Q)
    base = theta_variant(kind, 1, budget + shift)
    zero_part = base.zeta_one()
    for v in coords:
        f = along(base, v, g.Q) if any(v) else zero_part
        acc = (acc * f).truncate(need)
    acc = acc * eta_power(-12, order - lead)
    return acc.truncate(order)


def phi_pullback(g, kind, order):
    """phi_kind pulled back along iota_g, expressed over L_g (C * phi_D12 for kind D12)."""
    if isinstance(g, str):
        g = SemisimpleAlgebra.parse(g)
    order = Fraction(order)
    if kind == "D12":
        parts = [phi_factor_product(g, k, order) for k in ("00", "01", "10")]
        s = (parts[0] - parts[1] - parts[2]).scale(Fraction(1, 2) * g.C())
    else:
        s = phi_factor_product(g, kind, order)
    lat, cols = orbit_lattice_data(g)
    return to_frame(s._as_int(), cols, lat)


# fixtures for the anti-symmetric inputs

def fixture_path(name):
    import os
    base = os.environ.get("HYPERLIFT_FIXTURES")
    if base:
        return os.path.join(base, name)
    return str(resources.files("hyperlift").joinpath("fixtures", name))


def load_fixture(name):
    with open(fixture_path(name)) as fh:
        return json.load(fh)


SYMMETRIC = ("A4,5", "A1,2B3,5", "A1,2C3,4", "B2,3G2,4", "A2,3^3", "A1,2^3A3,4",
             "A1,2^2A2,3B2,3", "A1,2^8", "A1,16", "A1,8^2", "A1,4^4", "A2,9")


def is_symmetric_input(g):
    return str(g) in {str(SemisimpleAlgebra.parse(s)) for s in SYMMETRIC}


def phi_input(g, order):
    """Borcherds input phi_g: computed for the 12 symmetric algebras, fixture data otherwise."""
    if isinstance(g, str):
        g = SemisimpleAlgebra.parse(g)
    if is_symmetric_input(g):
        return phi_pullback(g, "D12", order)
    from .reflect import fixture_input  # local import: fixture inputs live with the certificates
    return fixture_input(g, order)


def weyl_alternating_sum(g):
    """sum_w det(w) zeta^{w(rho_g)} in Q_g coordinates."""
    if isinstance(g, str):
        g = SemisimpleAlgebra.parse(g)
    terms = [((), 1)]
    for j, s in enumerate(g.simples):
        rho = g.weight_exponent(j, s.weyl_vector)
        off = g.offsets[j]
        local = [Fraction(x) for x in rho[off:off + s.rank]]
        new = []
        for w, sign in s.weyl_group_coroot:
            img = tuple(la.matvec(w, local))
            for base, c in terms:
                new.append((base + img, c * sign))
        terms = new
    return {v: c for v, c in terms}


# the doubling and halving identities of the D12 products, in cleared form

def _theta_u(kind, order, mult=1):
    return theta_variant(kind, mult, order)


def doubling_factor_identities(order):
    """(theta11(2tau, 2u) eta^2 == theta10 theta11 eta(2tau), theta11(tau/2, u) eta^2 == theta01 theta11 eta(tau/2))."""
    order = Fraction(order)
    e2 = eta_power(2, order)
    t11 = _theta_u("11", order)
    lhs1 = (_theta_u("11", order / 2, 2).q_affine(2) * e2).truncate(order)
    rhs1 = (_theta_u("10", order) * t11 * eta(order / 2).q_affine(2)).truncate(order)
    lhs2 = (_theta_u("11", 2 * order).q_affine(Fraction(1, 2)) * e2).truncate(order)
    rhs2 = (_theta_u("01", order) * t11 * eta(2 * order).q_affine(Fraction(1, 2))).truncate(order)
    return lhs1.equal_to_order(rhs1, order), lhs2.equal_to_order(rhs2, order)


def doubling_pullback_identities(coords, lattice, order):
    """The 12-factor identities phi11(2tau,2z) = phi10 phi11 and phi11(tau/2,z) = phi01 phi11,
    cleared of eta powers, pulled back along z_j = (coords_j, w) over `lattice`."""
    order = Fraction(order)
    if len(coords) != 12:
        raise BlocksError("need 12 coordinate functionals")

    def prod(kind, o, mult=1):
        base = theta_variant(kind, mult, o)
        acc = FJSeries.one(lattice)
        for v in coords:
            acc = (acc * (along(base, v, lattice) if any(v) else base.zeta_one())).truncate(o)
        return acc

    e24 = eta_power(24, order)
    lhs1 = (prod("11", order / 2, 2).q_affine(2) * e24).truncate(order)
    rhs1 = (prod("10", order) * prod("11", order) * eta_power(12, order / 2).q_affine(2)).truncate(order)
    lhs2 = (prod("11", 2 * order).q_affine(Fraction(1, 2)) * e24).truncate(order)
    rhs2 = (prod("01", order) * prod("11", order) * eta_power(12, 2 * order).q_affine(Fraction(1, 2))).truncate(order)
    return lhs1.equal_to_order(rhs1, order), lhs2.equal_to_order(rhs2, order)
