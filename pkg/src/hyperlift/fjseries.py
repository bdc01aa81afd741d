"""Truncated Fourier-Jacobi expansions with exact coefficients.

Terms are stored per q-slice: q exponents are integers over a fixed `qden`, zeta
exponents are integer vectors over a fixed `zden`, packed into one Python int as
signed base-2^BITS digits so that exponent addition is integer addition.
"""

import json
import math
from collections import defaultdict
from fractions import Fraction

from . import linalg as la

BITS = 24
BASE = 1 << BITS
HALF = BASE >> 1
INF = math.inf


class SeriesError(ValueError):
    pass


def pack(v):
    key = 0
    for c in reversed(v):
        if not -HALF < c < HALF:
            raise SeriesError("zeta exponent out of packing range")
        key = key * BASE + c
    return key


def unpack(key, rank):
    out = []
    for _ in range(rank):
        d = key % BASE
        if d >= HALF:
            d -= BASE
        out.append(d)
        key = (key - d) >> BITS
    return out


def _norm_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def _min_order(*xs):
    return min(xs)


class FJSeries:
    __slots__ = ("lattice", "rank", "qden", "zden", "data", "order")

    def __init__(self, lattice, qden, zden, data, order):
        self.lattice = lattice
        self.rank = lattice.rank if lattice is not None else 0
        self.qden = qden
        self.zden = zden
        self.order = order
        self.data = data  # {qnum: {zkey: coeff}}, no zero coefficients

    # construction

    @classmethod
    def zero(cls, lattice=None, order=INF):
        return cls(lattice, 1, 1, {}, order)

    @classmethod
    def one(cls, lattice=None, order=INF):
        return cls.from_terms(lattice, [(0, (0,) * (lattice.rank if lattice else 0), 1)], order)

    @classmethod
    def from_terms(cls, lattice, terms, order=INF):
        terms = [(Fraction(q), tuple(Fraction(x) for x in v), c) for q, v, c in terms]
        order = order if order == INF else Fraction(order)
        qden = math.lcm(1, *(q.denominator for q, _, _ in terms))
        zden = math.lcm(1, *(x.denominator for _, v, _ in terms for x in v))
        if order != INF:
            qden = math.lcm(qden, order.denominator)
        data = {}
        rank = lattice.rank if lattice is not None else 0
        for q, v, c in terms:
            if len(v) != rank:
                raise SeriesError("exponent length does not match the index lattice")
            if order != INF and q >= order:
                continue
            qn = int(q * qden)
            key = pack([int(x * zden) for x in v])
            sl = data.setdefault(qn, {})
            sl[key] = sl.get(key, 0) + c
        s = cls(lattice, qden, zden, data, order)
        s._clean()
        return s

    @classmethod
    def q_series(cls, coeffs, order=INF, shift=0, qden=1):
        """Rank-0 series sum coeffs[i] q^{shift + i/qden}."""
        shift = Fraction(shift)
        return cls.from_terms(None, [(shift + Fraction(i, qden), (), c) for i, c in enumerate(coeffs) if c], order)

    def _clean(self):
        for qn in list(self.data):
            sl = self.data[qn]
            for k in [k for k, c in sl.items() if c == 0]:
                del sl[k]
            if not sl:
                del self.data[qn]
        return self

    def copy(self):
        return FJSeries(self.lattice, self.qden, self.zden, {q: dict(s) for q, s in self.data.items()}, self.order)

    # views

    def terms(self):
        """Sorted list of (q, zeta vector, coeff) with exact rationals."""
        out = []
        for qn in sorted(self.data):
            q = Fraction(qn, self.qden)
            for key, c in self.data[qn].items():
                v = tuple(Fraction(x, self.zden) for x in unpack(key, self.rank))
                out.append((q, v, _norm_coeff(c)))
        out.sort(key=lambda t: (t[0], t[1]))
        return out

    def as_dict(self):
        return {(q, v): c for q, v, c in self.terms()}

    def coefficient(self, q, v):
        q, v = Fraction(q), [Fraction(x) for x in v]
        if (q * self.qden).denominator != 1 or any((x * self.zden).denominator != 1 for x in v):
            return 0
        sl = self.data.get(int(q * self.qden), {})
        return _norm_coeff(sl.get(pack([int(x * self.zden) for x in v]), 0))

    def q_slice(self, q):
        """{zeta vector: coeff} at q^q."""
        q = Fraction(q)
        if (q * self.qden).denominator != 1:
            return {}
        sl = self.data.get(int(q * self.qden), {})
        return {tuple(Fraction(x, self.zden) for x in unpack(k, self.rank)): _norm_coeff(c) for k, c in sl.items()}

    def q_exponents(self):
        return [Fraction(qn, self.qden) for qn in sorted(self.data)]

    @property
    def valuation(self):
        return Fraction(min(self.data), self.qden) if self.data else INF

    def is_zero(self):
        return not self.data

    def num_terms(self):
        return sum(len(s) for s in self.data.values())

    def zeta_one(self):
        """Rank-0 series obtained by setting zeta = 1."""
        terms = [(Fraction(qn, self.qden), (), sum(sl.values())) for qn, sl in self.data.items()]
        return FJSeries.from_terms(None, terms, self.order)

    def norm(self, v):
        if self.lattice is None:
            return Fraction(0)
        return self.lattice.norm(v)

    # frame changes

    def _rescaled(self, qden, zden):
        if qden == self.qden and zden == self.zden:
            return self.data
        fq, fz = qden // self.qden, zden // self.zden
        return {qn * fq: {k * fz: c for k, c in sl.items()} for qn, sl in self.data.items()}

    def _common(self, other):
        if self.rank and other.rank and self.lattice.gram != other.lattice.gram:
            raise SeriesError("index lattice mismatch")
        if self.rank != other.rank and self.rank and other.rank:
            raise SeriesError("index lattice mismatch")
        lattice = self.lattice if self.rank else other.lattice
        qden = math.lcm(self.qden, other.qden)
        zden = math.lcm(self.zden, other.zden)
        return lattice, qden, zden, self._rescaled(qden, zden), other._rescaled(qden, zden)

    def truncate(self, order):
        order = min(self.order, order if order == INF else Fraction(order))
        if order == INF:
            return self.copy()
        qden = math.lcm(self.qden, Fraction(order).denominator)
        data = {q: dict(s) for q, s in self._rescaled(qden, self.zden).items() if Fraction(q, qden) < order}
        return FJSeries(self.lattice, qden, self.zden, data, order)

    # ring operations

    def __add__(self, other):
        if not isinstance(other, FJSeries):
            other = FJSeries.one(self.lattice).scale(other)
        lattice, qden, zden, a, b = self._common(other)
        order = min(self.order, other.order)
        data = {q: dict(s) for q, s in a.items()}
        for q, sl in b.items():
            d = data.setdefault(q, {})
            for k, c in sl.items():
                d[k] = d.get(k, 0) + c
        out = FJSeries(lattice, qden, zden, data, order)
        return out.truncate(order)._clean() if order != INF else out._clean()

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if not isinstance(other, FJSeries):
            other = FJSeries.one(self.lattice).scale(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s):
        if s == 0:
            return FJSeries(self.lattice, self.qden, self.zden, {}, self.order)
        data = {q: {k: c * s for k, c in sl.items()} for q, sl in self.data.items()}
        return FJSeries(self.lattice, self.qden, self.zden, data, self.order)

    def product_order(self, other):
        return min(self.order + other.valuation, other.order + self.valuation)

    def __mul__(self, other):
        if not isinstance(other, FJSeries):
            return self.scale(other)
        lattice, qden, zden, a, b = self._common(other)
        order = self.product_order(other)
        bound = None if order == INF else order * qden
        if len(a) > len(b):
            a, b = b, a
        out = {}
        b_keys = sorted(b)
        for qa, sla in a.items():
            for qb in b_keys:
                q = qa + qb
                if bound is not None and q >= bound:
                    break
                slb = b[qb]
                d = out.setdefault(q, defaultdict(int))
                if len(sla) > len(slb):
                    s1, s2 = slb, sla
                else:
                    s1, s2 = sla, slb
                items2 = list(s2.items())
                for k1, c1 in s1.items():
                    for k2, c2 in items2:
                        d[k1 + k2] += c1 * c2
        data = {q: dict(d) for q, d in out.items()}
        if order != INF:
            qden2 = math.lcm(qden, Fraction(order).denominator)
            if qden2 != qden:
                data = {q * (qden2 // qden): d for q, d in data.items()}
                qden = qden2
        return FJSeries(lattice, qden, zden, data, order)._clean()

    __rmul__ = __mul__

    def leading_monomial(self):
        if not self.data:
            raise SeriesError("zero series has no leading term")
        qn = min(self.data)
        sl = self.data[qn]
        if len(sl) != 1:
            raise SeriesError("leading q-slice is not a monomial")
        (k, c), = sl.items()
        return qn, k, c

    def inverse(self):
        """Inverse of a series whose lowest q-slice is a single monomial."""
        qn, k, c = self.leading_monomial()
        lead_inv = FJSeries(self.lattice, self.qden, self.zden, {-qn: {-k: Fraction(1) / c}}, INF)
        h = self * lead_inv - 1  # positive q-valuation
        order = self.order - 2 * Fraction(qn, self.qden) if self.order != INF else INF
        if order == INF:
            if h.is_zero():
                return lead_inv._as_int()
            raise SeriesError("cannot invert an exact non-monomial series without a truncation order")
        h = h.truncate(order + Fraction(qn, self.qden))
        # 1/(1+h) = sum (-h)^j, valid below order of h
        acc = FJSeries.one(self.lattice, h.order)
        term = FJSeries.one(self.lattice, h.order)
        while True:
            term = (term * (-h)).truncate(h.order)
            if term.is_zero():
                break
            acc = acc + term
        return (acc * lead_inv)._as_int()

    def _as_int(self):
        for sl in self.data.values():
            for k, c in sl.items():
                sl[k] = _norm_coeff(c)
        return self

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = FJSeries.one(self.lattice)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, FJSeries):
            return NotImplemented
        return self.equal_to_order(other)

    __hash__ = None

    def equal_to_order(self, other, order=None):
        order = min(self.order, other.order) if order is None else order
        diff = self.truncate(order) - other.truncate(order)
        return diff.is_zero()

    def first_difference(self, other, order=None):
        order = min(self.order, other.order) if order is None else order
        diff = self.truncate(order) - other.truncate(order)
        t = diff.terms()
        return t[0] if t else None

    # exponent maps

    def q_affine(self, scale=1, shift=0):
        """q^n -> e(n*shift) q^(n*scale); e(n*shift) must be real."""
        scale, shift = Fraction(scale), Fraction(shift)
        terms = []
        for qn, sl in self.data.items():
            n = Fraction(qn, self.qden)
            ph = (n * shift) % 1
            if ph == 0:
                sign = 1
            elif ph == Fraction(1, 2):
                sign = -1
            else:
                raise SeriesError("q substitution produces a non-real root of unity")
            for k, c in sl.items():
                terms.append((n * scale, k, sign * c))
        qden = math.lcm(self.qden, *(t[0].denominator for t in terms)) if terms else self.qden
        order = self.order * scale if self.order != INF else INF
        if order != INF:
            qden = math.lcm(qden, order.denominator)
        data = {}
        for q, k, c in terms:
            data.setdefault(int(q * qden), {})[k] = c
        return FJSeries(self.lattice, qden, self.zden, data, order)._clean()

    def map_zeta(self, matrix, lattice):
        """zeta^l -> zeta^(M l) into a new index lattice; coefficients add on collisions."""
        rank_out = lattice.rank if lattice is not None else 0
        m = [[Fraction(x) for x in row] for row in matrix] if rank_out else []
        den = math.lcm(*(x.denominator for row in m for x in row)) if m else 1
        # packing is linear, so the image of a key is sum_i digit_i * key(column i)
        col_keys = [pack([int(m[r][i] * den) for r in range(rank_out)]) if rank_out else 0
                    for i in range(self.rank)]
        row_bound = max((sum(abs(x) for x in row) * den for row in m), default=0)
        imgs = {}
        data = {}
        for qn, sl in self.data.items():
            d = data.setdefault(qn, {})
            for k, c in sl.items():
                nk = imgs.get(k)
                if nk is None:
                    digits = unpack(k, self.rank)
                    if max(map(abs, digits), default=0) * row_bound >= HALF:
                        raise SeriesError("zeta exponent out of packing range")
                    nk = sum(x * ck for x, ck in zip(digits, col_keys) if x)
                    imgs[k] = nk
                d[nk] = d.get(nk, 0) + c
        return FJSeries(lattice, self.qden, self.zden * den, data, self.order)._clean()

    def negate_zeta(self):
        return FJSeries(self.lattice, self.qden, self.zden,
                        {q: {-k: c for k, c in sl.items()} for q, sl in self.data.items()}, self.order)

    def scale_zeta(self, s):
        s = Fraction(s)
        zden = self.zden * s.denominator
        return FJSeries(self.lattice, self.qden, zden,
                        {q: {k * s.numerator: c for k, c in sl.items()} for q, sl in self.data.items()}, self.order)

    def shift(self, q=0, v=None):
        """Multiply by q^q zeta^v."""
        v = v or (0,) * self.rank
        mono = FJSeries.from_terms(self.lattice, [(q, v, 1)])
        return self * mono

    def pullback(self, adjoint, target):
        return self.map_zeta(adjoint, target)

    # serialization

    def to_json(self):
        rows = []
        for q, v, c in self.terms():
            c = Fraction(c)
            rows.append([q.numerator, q.denominator, [str(x) for x in v], c.numerator, c.denominator])
        order = None if self.order == INF else str(self.order)
        label = self.lattice.label if self.lattice is not None else ""
        gram = [list(r) for r in self.lattice.gram] if self.lattice is not None else []
        return {"index_spec": label, "gram": gram, "order": order, "terms": rows}

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)

    def __repr__(self):
        t = self.terms()
        head = ", ".join(f"{c}*q^{q}*z^{list(map(str, v))}" for q, v, c in t[:6])
        more = "" if len(t) <= 6 else f", ... ({len(t)} terms)"
        return f"FJSeries[{head}{more}; order {self.order}]"


def pullback(s, embedding, source_gram, target):
    """Transport zeta^l -> zeta^(iota^dagger l) along an isometric embedding A: target -> source."""
    a = [[Fraction(x) for x in row] for row in embedding]
    gt = [list(r) for r in target.gram]
    gn = [list(r) for r in source_gram]
    if la.matmul(la.matmul(la.transpose(a), gn), a) != la.to_fractions(gt):
        raise SeriesError("pullback map is not isometric")
    adj = la.matmul(la.matmul(la.inverse(gt), la.transpose(a)), gn)
    return s.map_zeta(adj, target)


def solve_quotient(f, g, support_bound):
    """phi with phi*g = f, solved q-slice by q-slice via exact Laurent division."""
    if g.is_zero():
        raise SeriesError("division by zero series")
    lattice, qden, zden, _, _ = f._common(g)
    a = g.valuation
    vf = f.valuation if not f.is_zero() else a
    order = min(f.order, g.order + (vf - a)) - a
    g0 = {tuple(v): c for v, c in g.q_slice(a).items()}
    lead_v = max(g0)
    lead_c = g0[lead_v]
    phi = FJSeries.zero(lattice, order)
    resid = f
    step = Fraction(1, math.lcm(qden, g.qden, f.qden))
    n = vf - a
    while n < order:
        r = resid.q_slice(n + a)
        quotient = {}
        r = {tuple(v): Fraction(c) for v, c in r.items() if c}
        while r:
            top = max(r)
            mv = tuple(x - y for x, y in zip(top, lead_v))
            if lattice is not None and lattice.norm(mv) > 2 * n + support_bound:
                raise SeriesError("quotient leaves the support model (not divisible)")
            c = r[top] / lead_c
            quotient[mv] = quotient.get(mv, 0) + c
            for v, gc in g0.items():
                w = tuple(x + y for x, y in zip(mv, v))
                r[w] = r.get(w, 0) - c * gc
                if r[w] == 0:
                    del r[w]
        if quotient:
            piece = FJSeries.from_terms(lattice, [(n, v, c) for v, c in quotient.items()], INF)
            phi = phi + piece.truncate(order)
            resid = resid - (piece * g)
        n += step
    phi.order = order
    return phi._as_int()
