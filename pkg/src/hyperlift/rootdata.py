"""Simple Lie algebra data (Bourbaki numbering) and semisimple frames."""

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from . import linalg as la
from .lattice import DualVector, LatticeError, from_rational_gram


class RootDataError(ValueError):
    pass


MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4}

# Comarks a_i^vee in Bourbaki numbering; cross-checked against the highest root.
COMARKS = {
    "E6": (1, 2, 2, 3, 2, 1),
    "E7": (2, 2, 3, 4, 3, 2, 1),
    "E8": (2, 3, 4, 6, 5, 4, 3, 2),
    "F4": (2, 3, 2, 1),
    "G2": (1, 2),
}


def tabulated_comarks(family, n):
    key = f"{family}{n}"
    if key in COMARKS:
        return COMARKS[key]
    if family == "A":
        return (1,) * n
    if family == "B":
        return (1,) + (2,) * (n - 2) + (1,)
    if family == "C":
        return (1,) * n
    if family == "D":
        return (1,) + (2,) * (n - 3) + (1, 1)
    raise RootDataError(key)


@dataclass(frozen=True, order=True)
class SimpleType:
    family: str
    rank: int

    def __post_init__(self):
        f, n = self.family, self.rank
        ok = (f in MIN_RANK and n >= MIN_RANK[f]) or (f == "E" and n in (6, 7, 8)) \
            or (f == "F" and n == 4) or (f == "G" and n == 2)
        if not ok:
            raise RootDataError(f"invalid simple type {f}{n}")

    def __str__(self):
        return f"{self.family}{self.rank}"

    @classmethod
    def parse(cls, text):
        m = re.fullmatch(r"\s*([A-G])\s*(\d+)\s*", text)
        if not m:
            raise RootDataError(f"cannot parse simple type {text!r}")
        return cls(m.group(1), int(m.group(2)))


def dimension(t):
    """dim from closed formulas (used by the classification without building roots)."""
    f, n = t.family, t.rank
    return {"A": n * (n + 2), "B": n * (2 * n + 1), "C": n * (2 * n + 1), "D": n * (2 * n - 1)}.get(
        f, {"E6": 78, "E7": 133, "E8": 248, "F4": 52, "G2": 14}.get(str(t)))


def dual_coxeter(t):
    f, n = t.family, t.rank
    return {"A": n + 1, "B": 2 * n - 1, "C": n + 1, "D": 2 * n - 2}.get(
        f, {"E6": 12, "E7": 18, "E8": 30, "F4": 9, "G2": 4}.get(str(t)))


def _simple_roots_e(t):
    """Simple roots in an orthogonal frame and the scalar s with <e_i,e_j> = s*delta_ij."""
    f, n = t.family, t.rank
    half = Fraction(1, 2)

    def e(i, dim):
        v = [Fraction(0)] * dim
        v[i] = Fraction(1)
        return v

    def sub(a, b):
        return [x - y for x, y in zip(a, b)]

    if f == "A":
        return [sub(e(i, n + 1), e(i + 1, n + 1)) for i in range(n)], Fraction(1)
    if f == "B":
        return [sub(e(i, n), e(i + 1, n)) for i in range(n - 1)] + [e(n - 1, n)], Fraction(1)
    if f == "C":
        last = [2 * x for x in e(n - 1, n)]
        return [sub(e(i, n), e(i + 1, n)) for i in range(n - 1)] + [last], half
    if f == "D":
        roots = [sub(e(i, n), e(i + 1, n)) for i in range(n - 1)]
        roots.append([x + y for x, y in zip(e(n - 2, n), e(n - 1, n))])
        return roots, Fraction(1)
    if f == "E":
        a1 = [half, -half, -half, -half, -half, -half, -half, half]
        a2 = [x + y for x, y in zip(e(0, 8), e(1, 8))]
        rest = [sub(e(i, 8), e(i - 1, 8)) for i in range(1, 7)]
        return ([a1, a2] + rest)[:n], Fraction(1)
    if f == "F":
        return [sub(e(1, 4), e(2, 4)), sub(e(2, 4), e(3, 4)), e(3, 4),
                [half, -half, -half, -half]], Fraction(1)
    if f == "G":
        # alpha1 short, alpha2 long, inside the plane sum x_i = 0 of R^3
        return [[Fraction(1), Fraction(-1), Fraction(0)], [Fraction(-2), Fraction(1), Fraction(1)]], Fraction(1, 3)
    raise RootDataError(str(t))


class SimpleLie:
    """Root data of a simple Lie algebra, long roots of norm 2.

    Frames: simple-root coordinates c (alpha = sum c_i alpha_i), fundamental-weight
    coordinates m (lambda = sum m_i w_i) and coroot coordinates y (x = sum y_i alpha_i^vee).
    """

    def __init__(self, t):
        self.type = t
        self.rank = t.rank
        self.simple_e, self.e_scale = _simple_roots_e(t)
        n = self.rank
        b = [[la.dot(u, v) * self.e_scale for v in self.simple_e] for u in self.simple_e]
        self.B = b  # inner products of simple roots
        self.d = [b[i][i] / 2 for i in range(n)]
        self.cartan = [[2 * b[i][j] / b[i][i] for j in range(n)] for i in range(n)]
        self.coroot_gram = [[b[i][j] / (self.d[i] * self.d[j]) for j in range(n)] for i in range(n)]
        binv = la.inverse(b)
        self.fund_gram = [[self.d[i] * binv[i][j] * self.d[j] for j in range(n)] for i in range(n)]
        self.coweight_gram = binv

    def __repr__(self):
        return f"SimpleLie({self.type})"

    @cached_property
    def positive_roots(self):
        """Positive roots in simple-root coordinates, sorted by height then lexicographically."""
        n = self.rank
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        seen = set(simple)
        frontier = list(simple)
        while frontier:
            new = []
            for c in frontier:
                for i in range(n):
                    # <c, alpha_i^vee> = sum_j c_j * 2 B_ji / B_ii
                    p = sum(c[j] * self.cartan[i][j] for j in range(n))
                    r = list(c)
                    r[i] -= int(p)
                    r = tuple(r)
                    if any(x < 0 for x in r) or r in seen or not any(r):
                        continue
                    seen.add(r)
                    new.append(r)
            frontier = new
        return sorted(seen, key=lambda c: (sum(c), c))

    @property
    def num_roots(self):
        return 2 * len(self.positive_roots)

    @property
    def dim(self):
        return self.rank + self.num_roots

    @cached_property
    def highest_root(self):
        return self.positive_roots[-1]

    @cached_property
    def comarks(self):
        got = tuple(int(c * d) for c, d in zip(self.highest_root, self.d))
        if got != tabulated_comarks(self.type.family, self.rank):
            raise AssertionError(f"comark mismatch for {self.type}: {got}")
        return got

    @property
    def dual_coxeter(self):
        return 1 + sum(self.comarks)

    @property
    def weyl_vector(self):
        """rho in fundamental-weight coordinates."""
        return tuple([1] * self.rank)

    def root_norm(self, c):
        return la.quad(self.B, c)

    def weight_norm(self, m):
        return la.quad(self.fund_gram, m)

    def weight_inner(self, m1, m2):
        return la.dot(m1, la.matvec(self.fund_gram, m2))

    def root_to_weight(self, c):
        """Simple-root coordinates to fundamental-weight coordinates."""
        return tuple(sum(c[i] * self.cartan[j][i] for i in range(self.rank)) for j in range(self.rank))

    def weight_to_root(self, m):
        """Fundamental-weight coordinates to (rational) simple-root coordinates."""
        inv = la.inverse(self.cartan)
        return tuple(sum(inv[i][j] * m[j] for j in range(self.rank)) for i in range(self.rank))

    def weight_to_coroot(self, m):
        """lambda (fund. coords) to coroot coordinates y with lambda = sum y_i alpha_i^vee."""
        return tuple(la.solve(self.coroot_gram, m))

    def root_to_coroot(self, c):
        return tuple(Fraction(ci) * di for ci, di in zip(c, self.d))

    def weight_to_e(self, m):
        c = self.weight_to_root(m)
        dim = len(self.simple_e[0])
        return tuple(sum(c[i] * self.simple_e[i][k] for i in range(self.rank)) for k in range(dim))

    def reflect_weight(self, m, i):
        mi = m[i]
        return tuple(mj - mi * self.cartan[j][i] for j, mj in enumerate(m))

    def coroot_lattice(self, k=1):
        return from_rational_gram([[k * x for x in row] for row in self.coroot_gram], f"Q^v({self.type})({k})")

    def coweight_lattice(self, k=1):
        return from_rational_gram([[k * x for x in row] for row in self.coweight_gram], f"P^v({self.type})({k})")

    @cached_property
    def weyl_group_coroot(self):
        """Weyl group as integer matrices acting on coroot coordinates (column vectors)."""
        n = self.rank
        gens = []
        for i in range(n):
            # s_i(x) = x - <x, alpha_i> alpha_i^vee, <x, alpha_i> = d_i (G^vee x)_i
            m = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
            for c in range(n):
                m[i][c] -= self.d[i] * self.coroot_gram[i][c]
            gens.append(tuple(tuple(int(x) for x in row) for row in m))
        ident = tuple(tuple(int(r == c) for c in range(n)) for r in range(n))
        seen = {ident: 1}
        frontier = [ident]
        while frontier:
            new = []
            for w in frontier:
                for g in gens:
                    p = tuple(map(tuple, la.matmul(g, w)))
                    if p not in seen:
                        seen[p] = -seen[w]
                        new.append(p)
            frontier = new
        return sorted(seen.items())


@lru_cache(maxsize=None)
def simple_data(t):
    if isinstance(t, str):
        t = SimpleType.parse(t)
    return SimpleLie(t)


def weyl_orbit(t, lam):
    """Full orbit of a dominant weight (fundamental-weight coordinates)."""
    g = simple_data(t)
    lam = tuple(Fraction(x) for x in lam)
    if len(lam) != g.rank:
        raise RootDataError("weight has wrong length")
    if any(x < 0 for x in lam):
        raise RootDataError("weight is not dominant")
    seen = {lam}
    frontier = [lam]
    while frontier:
        new = []
        for m in frontier:
            for i in range(g.rank):
                if m[i] > 0:
                    r = g.reflect_weight(m, i)
                    if r not in seen:
                        seen.add(r)
                        new.append(r)
        frontier = new
    return sorted(tuple(int(x) if x.denominator == 1 else x for x in m) for m in seen)


def _cartan_orbit_size(cartan, nodes, i):
    """Size of the orbit of the fundamental weight w_i under the reflections in `nodes`."""
    start = tuple(int(j == i) for j in nodes)
    seen = {start}
    frontier = [start]
    while frontier:
        new = []
        for m in frontier:
            for a, j in enumerate(nodes):
                if m[a] > 0:
                    r = tuple(m[b] - m[a] * cartan[k][j] for b, k in enumerate(nodes))
                    if r not in seen:
                        seen.add(r)
                        new.append(r)
        frontier = new
    return len(seen)


def weyl_order(cartan, nodes=None):
    """|W| of the root subsystem on `nodes`: |W| = |W w_i| |W_(nodes - i)| for a leaf i."""
    nodes = tuple(range(len(cartan))) if nodes is None else tuple(nodes)
    if not nodes:
        return 1
    degree = {j: sum(1 for k in nodes if k != j and cartan[j][k]) for j in nodes}
    leaf = min(nodes, key=lambda j: (degree[j] > 1, j))
    size = _cartan_orbit_size(cartan, nodes, leaf)
    return size * weyl_order(cartan, [j for j in nodes if j != leaf])


def orbit_size(t, lam):
    """|W lam| for a dominant weight via the parabolic stabilizer."""
    g = simple_data(t)
    if len(lam) != g.rank or any(x < 0 for x in lam):
        raise RootDataError("need a dominant weight of the right length")
    zero = [i for i, x in enumerate(lam) if x == 0]
    return weyl_order(g.cartan) // weyl_order(g.cartan, zero)


def conformal_weight(t, k, lam):
    g = simple_data(t)
    lam = tuple(lam)
    if any(x < 0 for x in lam):
        raise RootDataError("weight is not dominant")
    if la.dot(lam, g.comarks) > k:
        raise RootDataError("level constraint violated")
    rho2 = tuple(2 * x + y for x, y in zip(g.weyl_vector, lam))
    return Fraction(g.weight_inner(lam, rho2)) / (2 * (k + g.dual_coxeter))


@dataclass(frozen=True)
class Ideal:
    type: SimpleType
    level: int

    def __str__(self):
        return f"{self.type.family}{self.type.rank},{self.level}"


class SemisimpleAlgebra:
    """Direct sum of simple ideals with levels.

    Frame: Q_g coordinates, the concatenated coroot coordinates of each ideal with
    Gram blockdiag(k_j G^vee_j). An element x of the Cartan subalgebra (coroot
    coordinates y_j per ideal) enters a zeta exponent as y_j / k_j.
    """

    def __init__(self, ideals):
        ideals = [i if isinstance(i, Ideal) else Ideal(*i) for i in ideals]
        if not ideals:
            raise RootDataError("empty algebra")
        self.ideals = tuple(sorted(ideals, key=lambda i: (i.type.family, i.type.rank, i.level)))
        self.order_given = tuple(ideals)

    @classmethod
    def parse(cls, text):
        """'A1,16', 'A1,2^8', 'A2,2+F4,6', 'A1,2B3,5'."""
        text = text.replace(" ", "")
        parts = re.findall(r"([A-G])(\d+),(\d+)(?:\^(\d+))?\+?", text)
        if not parts or "".join(re.findall(r"[A-G]\d+,\d+(?:\^\d+)?\+?", text)) != text:
            raise RootDataError(f"cannot parse algebra {text!r}")
        ideals = []
        for fam, n, k, m in parts:
            ideals.extend([Ideal(SimpleType(fam, int(n)), int(k))] * int(m or 1))
        return cls(ideals)

    @property
    def key(self):
        return tuple((i.type.family, i.type.rank, i.level) for i in self.ideals)

    def __eq__(self, other):
        return isinstance(other, SemisimpleAlgebra) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __str__(self):
        out, prev, count = [], None, 0
        for i in list(self.ideals) + [None]:
            if i == prev:
                count += 1
                continue
            if prev is not None:
                out.append(str(prev) + (f"^{count}" if count > 1 else ""))
            prev, count = i, 1
        return "".join(out)

    def __repr__(self):
        return f"SemisimpleAlgebra({self})"

    @cached_property
    def simples(self):
        return [simple_data(i.type) for i in self.ideals]

    @property
    def levels(self):
        return [i.level for i in self.ideals]

    @property
    def rank(self):
        return sum(i.type.rank for i in self.ideals)

    @property
    def dim(self):
        return sum(dimension(i.type) for i in self.ideals)

    def c_values(self):
        return [Fraction(dual_coxeter(i.type), i.level) for i in self.ideals]

    def C(self, strict=True):
        vals = set(self.c_values())
        if strict and len(vals) != 1:
            raise RootDataError(f"inconsistent h/k ratios in {self}")
        return self.c_values()[0]

    def central_charge(self):
        return sum(Fraction(i.level * dimension(i.type), i.level + dual_coxeter(i.type)) for i in self.ideals)

    @cached_property
    def offsets(self):
        out, off = [], 0
        for s in self.simples:
            out.append(off)
            off += s.rank
        return out

    def _block(self, mats):
        return la.to_fractions(_block(mats))

    @cached_property
    def Q(self):
        g = _block([[[k * x for x in row] for row in s.coroot_gram] for s, k in zip(self.simples, self.levels)])
        return from_rational_gram(g, f"Q({self})")

    @cached_property
    def P_basis(self):
        """Coweight basis of P_g as columns in Q_g coordinates."""
        mats = []
        for s in self.simples:
            ginv = la.inverse(s.coroot_gram)
            mats.append([[ginv[r][c] / s.d[c] for c in range(s.rank)] for r in range(s.rank)])
        return _block(mats)

    @cached_property
    def P(self):
        g = _block([[[k * x for x in row] for row in s.coweight_gram] for s, k in zip(self.simples, self.levels)])
        return from_rational_gram(g, f"P({self})")

    def embed(self, j, y):
        """Coroot coordinates y of ideal j to a zeta exponent in Q_g coordinates."""
        v = [Fraction(0)] * self.rank
        k = self.levels[j]
        for a, c in enumerate(y):
            v[self.offsets[j] + a] = Fraction(c) / k
        return tuple(v)

    def weight_exponent(self, j, m):
        return self.embed(j, self.simples[j].weight_to_coroot(m))

    def root_exponent(self, j, c):
        return self.embed(j, self.simples[j].root_to_coroot(c))

    @cached_property
    def positive_root_exponents(self):
        out = []
        for j, s in enumerate(self.simples):
            out.extend(self.root_exponent(j, c) for c in s.positive_roots)
        return out

    @cached_property
    def rho(self):
        v = [Fraction(0)] * self.rank
        for j, s in enumerate(self.simples):
            for a, x in enumerate(self.weight_exponent(j, s.weyl_vector)):
                v[a] += x
        return DualVector(v)

    def exponent_lattice_norm(self, v):
        return self.Q.norm(v)


def _block(mats):
    n = sum(len(m) for m in mats)
    g = [[Fraction(0)] * n for _ in range(n)]
    off = 0
    for m in mats:
        for i, row in enumerate(m):
            for j, x in enumerate(row):
                g[off + i][off + j] = Fraction(x)
        off += len(m)
    return g


def semisimple_lattices(g, strict=True):
    """(Q_g, P_g, rho_g, C); P_g is None when it is not an integral lattice."""
    if isinstance(g, str):
        g = SemisimpleAlgebra.parse(g)
    try:
        p = g.P
    except LatticeError:
        p = None
    return g.Q, p, g.rho, g.C(strict)


def central_charge(g):
    if isinstance(g, str):
        g = SemisimpleAlgebra.parse(g)
    return g.central_charge()


def maximal_even_sublattice_basis(L):
    """Basis (columns, in L coordinates) of the even vectors of an integral lattice."""
    ker = la.integer_kernel_mod2([L.gram[i][i] for i in range(L.rank)])
    return la.transpose(ker)


def sublattice_from_basis(gram, basis_cols, label=""):
    bt = la.transpose(basis_cols)
    g = la.matmul(la.matmul(bt, [list(r) for r in gram]), basis_cols)
    return from_rational_gram(g, label)

