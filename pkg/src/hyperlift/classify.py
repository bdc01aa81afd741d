"""Solutions of the dimension equations, hyperbolizability flags and orbit lattices.

A solution with a = f(-1, 0) in {0, 1} is a multiset of simple ideals X_{k}
with a common ratio h_X / k = C and total dimension 24 (C + a); for a = 0 every
level exceeds 1.

Rank cutoffs: a single ideal satisfies dim X <= 24 (C + a) <= 24 (h_X + a) since
k >= 1, so A_n, D_n need n <= 24, B_n needs n <= 23 and C_n needs n <= 13.
Since 24 C = dim - 24 a is an integer, the level k divides 24 h_X.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg as la
from .blocks import load_fixture
from .lattice import LatticeError, build, find_embedding
from .rootdata import Ideal, SemisimpleAlgebra, SimpleType, dimension, dual_coxeter, sublattice_from_basis


class ClassifyError(ValueError):
    pass


RANK_CUTOFF = {"A": 24, "B": 23, "C": 13, "D": 24}


@dataclass(frozen=True)
class Solution:
    algebra: SemisimpleAlgebra
    a: int
    C: Fraction
    hyperbolizable: bool = False
    orbit_lattice: str = None

    def to_json(self):
        return {"algebra": str(self.algebra), "a": self.a, "C": str(self.C), "dim": self.algebra.dim,
                "hyperbolizable": self.hyperbolizable, "orbit_lattice": self.orbit_lattice}


def simple_types():
    out = []
    for fam, top in RANK_CUTOFF.items():
        lo = {"A": 1, "B": 2, "C": 3, "D": 4}[fam]
        out.extend(SimpleType(fam, n) for n in range(lo, top + 1))
    out += [SimpleType("E", 6), SimpleType("E", 7), SimpleType("E", 8), SimpleType("F", 4), SimpleType("G", 2)]
    return out


def pieces(a):
    """Candidate ideals (type, level) with dim X <= 24 (h/k + a), k | 24 h, and k > 1 when a = 0."""
    out = []
    for t in simple_types():
        h, d = dual_coxeter(t), dimension(t)
        for k in range(1 if a else 2, 24 * h + 1):
            if (24 * h) % k == 0 and d <= 24 * (Fraction(h, k) + a):
                out.append((t, k))
    return out


def _multisets(items, target):
    """Multisets of (key, weight) items with total weight `target`, items used in non-decreasing order."""
    out = []

    def rec(start, remaining, chosen):
        if remaining == 0:
            out.append(list(chosen))
            return
        for i in range(start, len(items)):
            w = items[i][1]
            if w <= remaining:
                chosen.append(items[i][0])
                rec(i, remaining - w, chosen)
                chosen.pop()

    rec(0, target, [])
    return out


def _sort_key(sol):
    return (sol.C, sol.algebra.key)


@lru_cache(maxsize=None)
def _solve(a):
    by_c = {}
    for t, k in pieces(a):
        by_c.setdefault(Fraction(dual_coxeter(t), k), []).append((t, k))
    sols = []
    for C, group in by_c.items():
        target = 24 * (C + a)
        if target.denominator != 1:
            continue
        items = [((t, k), dimension(t)) for t, k in sorted(group, key=lambda p: (str(p[0]), p[1]))]
        for combo in _multisets(items, int(target)):
            g = SemisimpleAlgebra([Ideal(t, k) for t, k in combo])
            sols.append(Solution(g, a, C))
    # post-hoc verification of the defining equations
    seen = set()
    for s in sols:
        if s.algebra.dim != 24 * (s.C + a) or set(s.algebra.c_values()) != {s.C}:
            raise AssertionError(f"{s.algebra} violates the dimension equations")
        if a == 0 and min(s.algebra.levels) <= 1:
            raise AssertionError(f"{s.algebra} has a level-1 ideal")
        if s.algebra in seen:
            raise AssertionError(f"duplicate solution {s.algebra}")
        seen.add(s.algebra)
    table = _hyperbolizable_table()
    out = []
    for s in sorted(sols, key=_sort_key):
        flag = table.get((a, s.algebra))
        if flag is None:
            raise ClassifyError(f"{s.algebra} is missing from the shipped classification table")
        lat = orbit_lattice_spec(s.algebra) if flag else None
        out.append(Solution(s.algebra, a, s.C, flag, lat))
    return tuple(out)


def solve(a):
    """All solutions for a in {0, 1}, sorted by (C, algebra key)."""
    if a not in (0, 1):
        raise ClassifyError("a must be 0 or 1")
    return list(_solve(a))


@lru_cache(maxsize=None)
def _hyperbolizable_table():
    data = load_fixture("classification.json")
    out = {}
    for a, name in ((1, "anti"), (0, "sym")):
        for row in data[name]:
            out[(a, SemisimpleAlgebra.parse(row["algebra"]))] = bool(row["hyperbolizable"])
    return out


def is_hyperbolizable(s):
    """Shipped-table flag; for symmetric solutions it must agree with 1/C being an integer."""
    g = s.algebra if isinstance(s, Solution) else SemisimpleAlgebra.parse(str(s))
    a = s.a if isinstance(s, Solution) else None
    table = _hyperbolizable_table()
    keys = [(a, g)] if a is not None else [(1, g), (0, g)]
    for key in keys:
        if key in table:
            flag = table[key]
            if key[0] == 0 and flag != ((1 / g.C()).denominator == 1):
                raise AssertionError(f"{g}: table flag disagrees with the 1/C rule")
            return flag
    raise ClassifyError(f"{g} is not a solution")


@lru_cache(maxsize=None)
def _orbit_specs():
    out = {}
    hohn = load_fixture("hohn.json")
    for row in hohn["equal_order_level"]:
        if row["algebra"]:
            out[SemisimpleAlgebra.parse(row["algebra"])] = row["genus"]
    for row in hohn["distinct_order_level"]:
        out[SemisimpleAlgebra.parse(row["algebra"])] = row["orbit_lattice"]
    sym = load_fixture("symmetric.json")
    for row in sym["c_one"] + sym["exotic"]:
        out[SemisimpleAlgebra.parse(row["algebra"])] = row["orbit_lattice"]
    return out


def orbit_lattice_spec(g):
    """Spec string of L_g (a lattice spec, or a genus symbol when only the genus is tabulated)."""
    g = SemisimpleAlgebra.parse(g) if isinstance(g, str) else g
    spec = _orbit_specs().get(g)
    if spec is None:
        raise ClassifyError(f"{g} is not hyperbolizable")
    return spec


def orbit_lattice(g):
    """L_g as a Lattice when it is tabulated explicitly, otherwise its genus symbol."""
    spec = orbit_lattice_spec(g)
    if spec.startswith("II_"):
        return spec
    try:
        return build(spec)
    except LatticeError as exc:
        raise ClassifyError(f"cannot build {spec}: {exc}") from exc


def check_bounds(g):
    """Q_g embeds in L_g and L_g embeds in P_g (as lattices, via explicit embeddings)."""
    g = SemisimpleAlgebra.parse(g) if isinstance(g, str) else g
    L = orbit_lattice(g)
    if isinstance(L, str):
        raise ClassifyError(f"{g}: L_g is only known by its genus")
    # L_g is even, so L_g <= P_g iff L_g <= the even vectors of P_g (P_g itself may be odd)
    pb = g.P_basis
    pg = la.matmul(la.matmul(la.transpose(pb), la.to_fractions(g.Q.gram)), pb)
    if any(x.denominator != 1 for row in pg for x in row):
        raise ClassifyError(f"{g}: P_g is not integral")
    ev = la.transpose(la.integer_kernel_mod2([int(pg[i][i]) for i in range(g.rank)]))
    p_even = sublattice_from_basis(g.Q.gram, la.matmul(pb, ev), f"P({g})_even")
    return find_embedding(g.Q, L) is not None and find_embedding(L, p_even) is not None
