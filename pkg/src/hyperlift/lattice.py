"""Even positive-definite lattices given by Gram matrices."""

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product

import numpy as np

from . import linalg as la


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class Lattice:
    gram: tuple
    label: str = ""

    def __post_init__(self):
        g = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        if any(len(row) != n for row in g):
            raise LatticeError("gram must be square")
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(n)):
            raise LatticeError("gram must be symmetric")
        if any(g[i][i] % 2 for i in range(n)):
            raise LatticeError(f"{self.label or 'lattice'} is not even")
        if not la.leading_minors_positive([list(r) for r in g]):
            raise LatticeError(f"{self.label or 'lattice'} is not positive definite")

    @property
    def rank(self):
        return len(self.gram)

    @cached_property
    def det(self):
        return la.det([list(r) for r in self.gram])

    @cached_property
    def gram_inverse(self):
        return la.inverse([list(r) for r in self.gram])

    @cached_property
    def np_gram(self):
        return np.array(self.gram, dtype=np.int64).reshape(self.rank, self.rank)

    def norm(self, v):
        return la.quad(self.gram, v)

    def inner(self, u, v):
        return la.dot(u, la.matvec(self.gram, v))

    def rescale(self, a):
        return from_rational_gram([[a * x for x in row] for row in self.gram], f"{self.label}({a})")

    def __add__(self, other):
        return direct_sum([self, other])

    def __repr__(self):
        return f"Lattice({self.label or self.gram})"


@dataclass(frozen=True)
class DualVector:
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __neg__(self):
        return DualVector(-c for c in self.coords)

    def __add__(self, other):
        return DualVector(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other):
        return DualVector(a - b for a, b in zip(self.coords, other.coords))

    def scale(self, s):
        return DualVector(s * c for c in self.coords)


@dataclass(frozen=True)
class DualNorm:
    norm: Fraction
    in_lattice: bool
    in_dual: bool
    in_half_dual: bool


@dataclass(frozen=True)
class DiscriminantData:
    elementary_divisors: tuple
    order: int
    exponent: int


def from_rational_gram(m, label=""):
    fm = la.to_fractions(m)
    if not la.is_integral(x for row in fm for x in row):
        raise LatticeError(f"{label or 'lattice'} is not integral")
    return Lattice(tuple(tuple(int(x) for x in row) for row in fm), label)


def direct_sum(lattices, label=None):
    n = sum(L.rank for L in lattices)
    g = [[0] * n for _ in range(n)]
    off = 0
    for L in lattices:
        for i in range(L.rank):
            for j in range(L.rank):
                g[off + i][off + j] = L.gram[i][j]
        off += L.rank
    return Lattice(tuple(map(tuple, g)), label if label is not None else "+".join(L.label for L in lattices))


# Root lattice Gram matrices (Bourbaki numbering, roots of norm 2).

def _cartan_a(n):
    return [[2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(n)] for i in range(n)]


def _cartan_d(n):
    g = _cartan_a(n)
    g[n - 2][n - 1] = g[n - 1][n - 2] = 0
    g[n - 3][n - 1] = g[n - 1][n - 3] = -1
    return g


def _cartan_e(n):
    edges = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]
    g = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for a, b in edges:
        if a <= n and b <= n:
            g[a - 1][b - 1] = g[b - 1][a - 1] = -1
    return g


NAMED = {
    "L1": [[4, 2, 2, 2], [2, 6, 1, 1], [2, 1, 6, 1], [2, 1, 1, 6]],
    "L2": [[2, 0, 1, 1, 1, 0], [0, 2, 1, 1, 1, 0], [1, 1, 4, 2, 2, 3],
           [1, 1, 2, 4, 0, 1], [1, 1, 2, 0, 4, 1], [0, 0, 3, 1, 1, 4]],
    "L3": [[4, 2, 0, 0, -2, 0], [2, 4, 0, 0, -1, 0], [0, 0, 2, -1, 0, 0],
           [0, 0, -1, 2, 0, 0], [-2, -1, 0, 0, 2, 1], [0, 0, 0, 0, 1, 4]],
}


def atom_gram(name):
    m = re.fullmatch(r"([ADEZ])(\d*)", name)
    if name in NAMED:
        return la.to_fractions(NAMED[name])
    if not m:
        raise LatticeError(f"unknown lattice atom {name!r}")
    fam, n = m.group(1), int(m.group(2) or 1)
    if fam == "A" and n >= 1:
        g = _cartan_a(n)
    elif fam == "D" and n >= 4:
        g = _cartan_d(n)
    elif fam == "E" and n in (6, 7, 8):
        g = _cartan_e(n)
    elif fam == "Z" and n >= 1:
        g = la.identity(n)
    else:
        raise LatticeError(f"invalid lattice atom {name!r}")
    return la.to_fractions(g)


def _block_sum(blocks):
    n = sum(len(b) for b in blocks)
    g = [[Fraction(0)] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                g[off + i][off + j] = x
        off += len(b)
    return g


class _Parser:
    token_re = re.compile(r"\s*(L[123]|[ADEZ]\d*|\d+/\d+|\d+|[+()'^⊕])")

    def __init__(self, text):
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = self.token_re.match(text, pos)
            if not m:
                raise LatticeError(f"cannot parse lattice spec {text!r} at {pos}")
            self.tokens.append(m.group(1))
            pos = m.end()
            while pos < len(text) and text[pos].isspace():
                pos += 1
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise LatticeError(f"expected {expected!r}, got {tok!r}")
        self.i += 1
        return tok

    def parse(self):
        g = self.expr()
        if self.peek() is not None:
            raise LatticeError(f"trailing input at {self.peek()!r}")
        return g

    def expr(self):
        blocks = [self.term()]
        while self.peek() in ("+", "⊕"):
            self.take()
            blocks.append(self.term())
        return _block_sum(blocks)

    def term(self):
        mult = 1
        if self.peek() is not None and self.peek().isdigit():
            mult = int(self.take())
        g = self.factor()
        return _block_sum([g] * mult)

    def factor(self):
        tok = self.peek()
        if tok == "(":
            self.take("(")
            g = self.expr()
            self.take(")")
        elif tok is not None and re.fullmatch(r"L[123]|[ADEZ]\d*", tok):
            g = atom_gram(self.take())
        else:
            raise LatticeError(f"unexpected token {tok!r}")
        while self.peek() in ("'", "(", "^"):
            op = self.take()
            if op == "'":
                g = la.inverse(g)
            elif op == "(":
                a = Fraction(self.take())
                self.take(")")
                g = [[a * x for x in row] for row in g]
            else:
                g = _block_sum([g] * int(self.take()))
        return g


def build(spec):
    """Lattice from a spec such as 'A1(16)', "A3'(8)", '2A1(3)+A2(4)', 'Z^4(20)'."""
    g = _Parser(spec).parse()
    if not g:
        raise LatticeError("empty lattice")
    return from_rational_gram(g, spec)


def dual_norm(L, v):
    c = list(DualVector(v).coords)
    if len(c) != L.rank:
        raise LatticeError("dimension mismatch")
    gv = la.matvec(L.gram, c)
    return DualNorm(la.dot(c, gv), la.is_integral(c), la.is_integral(gv),
                    la.is_integral(2 * x for x in gv))


def discriminant_group(L):
    diag, _, _ = la.snf([list(r) for r in L.gram])
    divs = tuple(sorted(d for d in diag if d != 1))
    order = math.prod(divs) if divs else 1
    return DiscriminantData(divs, order, max(divs) if divs else 1)


def order_of(L, v):
    info = dual_norm(L, v)
    if not info.in_dual:
        raise LatticeError("vector is not in the dual lattice")
    return la.common_denominator(DualVector(v).coords)


# Short vectors.

def _enumerate(gram_f, bound, center=None):
    """Integer x with (x - c)^T G (x - c) <= bound (float pruning, small slack)."""
    n = len(gram_f)
    g = np.array(gram_f, dtype=float)
    r = np.linalg.cholesky(g).T
    c = np.zeros(n) if center is None else np.asarray(center, dtype=float)
    out = []
    x = [0] * n
    eps = 1e-7 * max(1.0, bound)

    def rec(k, remaining):
        # coordinate k given k+1..n-1 fixed
        s = sum(r[k, j] * (x[j] - c[j]) for j in range(k + 1, n))
        mid = c[k] - s / r[k, k]
        span = math.sqrt(max(remaining, 0.0)) / r[k, k]
        lo, hi = math.ceil(mid - span - 1e-9), math.floor(mid + span + 1e-9)
        for xi in range(lo, hi + 1):
            x[k] = xi
            t = r[k, k] * (xi - mid)
            rem = remaining - t * t
            if rem < -eps:
                continue
            if k == 0:
                out.append(tuple(x))
            else:
                rec(k - 1, rem)
        x[k] = 0

    rec(n - 1, float(bound) + eps)
    return out


def short_vectors(L, max_norm, in_dual=False):
    """Nonzero vectors of L (or L') of norm <= max_norm, in L coordinates."""
    max_norm = Fraction(max_norm)
    if max_norm < 0:
        raise LatticeError("max_norm must be nonnegative")
    if in_dual:
        ginv = L.gram_inverse
        cands = _enumerate([[float(x) for x in row] for row in ginv], float(max_norm))
        out = []
        for y in cands:
            v = la.matvec(ginv, y)
            nv = la.dot(y, v)
            if 0 < nv <= max_norm:
                out.append(DualVector(v))
        return sorted(out, key=lambda d: d.coords)
    cands = _enumerate([list(r) for r in L.gram], float(max_norm))
    out = [DualVector(x) for x in cands if 0 < L.norm(x) <= max_norm]
    return sorted(out, key=lambda d: d.coords)


def _short_int(L, max_norm):
    cands = _enumerate([list(r) for r in L.gram], float(max_norm))
    return [x for x in cands if 0 < L.norm(x) <= max_norm]


# Embeddings.

def find_embedding(L1, L2):
    """Integer M with M^T G2 M = G1, or None when the search is exhausted."""
    if L1.rank != L2.rank:
        raise LatticeError("rank mismatch")
    r = L1.rank
    ratio = Fraction(L1.det, L2.det)
    num, den = ratio.numerator, ratio.denominator
    if den != 1 or math.isqrt(num) ** 2 != num:
        return None
    g1 = L1.gram
    by_norm = {}
    for x in _short_int(L2, max(g1[i][i] for i in range(r))):
        by_norm.setdefault(L2.norm(x), []).append(x)
    for lst in by_norm.values():
        lst.sort()
    g2 = L2.gram
    images = []

    def rec(i):
        if i == r:
            return True
        for c in by_norm.get(g1[i][i], []):
            gc = la.matvec(g2, c)
            if all(la.dot(images[j], gc) == g1[j][i] for j in range(i)):
                images.append(c)
                if rec(i + 1):
                    return True
                images.pop()
        return False

    if not rec(0):
        return None
    m = la.transpose(images)
    check = la.matmul(la.matmul(la.transpose(m), [list(x) for x in g2]), m)
    if check != [list(x) for x in g1]:
        raise AssertionError("embedding failed verification")
    return tuple(tuple(row) for row in m)


def find_embeddings(L1, L2, limit=None):
    """All embeddings (up to limit), in deterministic order."""
    r = L1.rank
    g1, g2 = L1.gram, L2.gram
    by_norm = {}
    for x in _short_int(L2, max(g1[i][i] for i in range(r))):
        by_norm.setdefault(L2.norm(x), []).append(x)
    for lst in by_norm.values():
        lst.sort()
    images = []
    found = []

    def rec(i):
        if limit is not None and len(found) >= limit:
            return
        if i == r:
            found.append(tuple(tuple(row) for row in la.transpose(images)))
            return
        for c in by_norm.get(g1[i][i], []):
            gc = la.matvec(g2, c)
            if all(la.dot(images[j], gc) == g1[j][i] for j in range(i)):
                images.append(c)
                rec(i + 1)
                images.pop()

    rec(0)
    return found


# Coset minima.

def orthogonal_blocks(L):
    n = L.rank
    seen = [False] * n
    blocks = []
    for s in range(n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if not seen[j] and L.gram[i][j]:
                    seen[j] = True
                    stack.append(j)
        blocks.append(sorted(comp))
    return blocks


def sublattice(L, idx):
    return Lattice(tuple(tuple(L.gram[i][j] for j in idx) for i in idx), f"{L.label}[{idx}]")


def _coset_grid(L):
    """Integer matrix X and denominator den: rows X/den represent L'/L."""
    diag, _, q = la.snf([list(r) for r in L.gram])
    den = math.lcm(*diag)
    axes = [np.arange(d, dtype=np.int64) * (den // d) for d in diag]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, L.rank)
    return grid @ np.array(q, dtype=np.int64).T, den


def coset_representatives(L):
    """One vector of L' per class of L'/L, in L coordinates."""
    x, den = _coset_grid(L)
    return [[Fraction(int(c), den) for c in row] for row in x]


def _is_scaled_root_lattice(L, minimal):
    if not minimal:
        return False
    m = L.norm(minimal[0])
    allowed = {0, m // 2, -(m // 2)}
    if m % 2:
        return False
    vs = [np.array(v, dtype=np.int64) for v in minimal]
    mat = np.array(vs)
    ip = mat @ L.np_gram @ mat.T
    off = ip[~np.eye(len(vs), dtype=bool)]
    if not set(np.unique(off).tolist()) <= allowed | {m, -m}:
        return False
    return la.lattice_index([list(v) for v in minimal], L.rank) == 1


def voronoi_relevant(L):
    """Voronoi-relevant vectors of L (integer coordinates)."""
    g = [list(r) for r in L.gram]
    mins = {}
    for x in _short_int(L, min(L.gram[i][i] for i in range(L.rank))):
        mins.setdefault(L.norm(x), []).append(x)
    m = min(mins)
    minimal = mins[m]
    if _is_scaled_root_lattice(L, minimal):
        return minimal
    # generic: classes of L/2L whose shortest vectors are a single pair
    need = 2 ** L.rank - 1
    bound = max(L.gram[i][i] for i in range(L.rank))
    while True:
        classes = {}
        for x in _short_int(L, bound):
            key = tuple(c % 2 for c in x)
            if any(key):
                classes.setdefault(key, []).append(x)
        if len(classes) == need:
            break
        bound *= 2
    out = []
    for vecs in classes.values():
        nmin = min(la.quad(g, v) for v in vecs)
        best = [v for v in vecs if la.quad(g, v) == nmin]
        if len(best) == 2:
            out.extend(best)
    return out


def _block_delta(L):
    x, den = _coset_grid(L)
    rel = np.array(voronoi_relevant(L), dtype=np.int64).reshape(-1, L.rank)
    g = L.np_gram
    rr = np.einsum("ij,jk,ik->i", rel, g, rel)
    relden = rel * den
    while True:
        ip = (x @ g) @ rel.T
        gain = 2 * ip - den * rr[None, :]
        best = gain.argmax(axis=1)
        improve = gain[np.arange(len(x)), best] > 0
        if not improve.any():
            break
        x[improve] -= relden[best[improve]]
    norms = np.einsum("ij,jk,ik->i", x, g, x)
    return Fraction(int(norms.max()), den * den)


def delta(L):
    """(delta_L, delta_hat): max over L'/L of the coset minimum, and the largest integer below half of it."""
    if L.rank > 16:
        raise LatticeError("rank too large for exhaustive coset search")
    d = Fraction(0)
    for idx in orthogonal_blocks(L):
        d += _block_delta(sublattice(L, idx))
    return d, math.ceil(d / 2) - 1


def coset_min_brute(L, v, radius=2):
    """Minimum norm of L + v by box search (independent check for tests)."""
    best = None
    v = [Fraction(c) for c in v]
    base = [c - (c.numerator // c.denominator) for c in v]
    for shift in product(range(-radius, radius + 1), repeat=L.rank):
        w = [b + s for b, s in zip(base, shift)]
        n = L.norm(w)
        if best is None or n < best:
            best = n
    return best
