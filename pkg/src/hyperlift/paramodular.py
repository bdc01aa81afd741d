"""Weight-3 theta blocks of 21 theta factors over eta^15 and the table of paramodular levels."""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .blocks import A1, CycleShape, eta_power, load_fixture, theta_variant
from .fjseries import FJSeries


class ParamodularError(ValueError):
    pass


# coefficient vectors of the 21 linear forms in a1..a6, in printed order
FORMS = (
    (1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0), (0, 0, 0, 1, 0, 0), (0, 0, 0, 0, 1, 0),
    (1, 1, 0, 0, 0, 0), (1, 1, 1, 0, 0, 0), (1, 1, 1, 1, 0, 0), (0, 1, 1, 0, 0, 0),
    (0, 1, 1, 1, 0, 0), (0, 0, 1, 1, 0, 0), (1, 1, 1, 0, 1, 0), (0, 1, 1, 0, 1, 0), (0, 0, 1, 0, 1, 0),
    (1, 2, 2, 1, 1, 0), (1, 1, 2, 1, 1, 0), (1, 1, 1, 1, 1, 0),
    (0, 1, 2, 1, 1, 0), (0, 1, 1, 1, 1, 0), (0, 0, 1, 1, 1, 0), (0, 0, 0, 0, 0, 2),
)
THETAS, ETAS = 21, 15
WEIGHT = Fraction(THETAS - ETAS, 2)


@dataclass(frozen=True)
class ThetaBlockSpec:
    a: tuple
    arguments: tuple
    N: int

    @property
    def weight(self):
        return WEIGHT

    @property
    def has_zero(self):
        return 0 in self.arguments

    def multiset(self):
        """{|b|: multiplicity} of the arguments."""
        return dict(sorted(Counter(abs(b) for b in self.arguments).items()))

    def to_json(self):
        return {"a": list(self.a), "arguments": list(self.arguments), "N": self.N, "weight": str(self.weight),
                "has_zero_argument": self.has_zero, "multiset": {str(k): v for k, v in self.multiset().items()}}


def block_spec(a):
    a = tuple(int(x) for x in a)
    if len(a) != 6:
        raise ParamodularError("a needs 6 entries")
    args = tuple(sum(c * x for c, x in zip(form, a)) for form in FORMS)
    twice = sum(b * b for b in args)
    if twice % 2:
        raise ParamodularError("sum of squares is odd")
    return ThetaBlockSpec(a, args, twice // 2)


def expand(a, order=5):
    """prod_b theta(tau, b u) / eta^15 over A1, below q^order (zero when some b vanishes)."""
    spec = block_spec(a)
    order = Fraction(order)
    if spec.has_zero:
        return FJSeries.zero(A1, order)
    # thetas start at q^(1/8) each, eta^-15 at q^(-15/24)
    budget = order + Fraction(ETAS, 24)
    lead = Fraction(THETAS, 8)
    acc = FJSeries.one(A1)
    for b in spec.arguments:
        acc = (acc * theta_variant("11", b, budget - lead + Fraction(1, 8))).truncate(budget)
    out = (acc * eta_power(-ETAS, order - lead)).truncate(order)
    if any(Fraction(c).denominator != 1 for _, _, c in out.terms()):
        raise AssertionError("non-integral coefficient in a theta block")
    return out


def is_squarefree(n):
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


def _shape_multiset(shape):
    return dict(sorted(CycleShape.parse(shape).pairs))


def verify_table(rows=None, order=5):
    """Recompute N, the argument multiset and a nonzero expansion for every fixture row."""
    rows = rows if rows is not None else load_fixture("table8.json")["rows"]
    report = []
    for i, row in enumerate(rows):
        spec = block_spec(row["a"])
        s = expand(row["a"], order)
        entry = {
            "row": i, "a": list(spec.a), "N": spec.N, "N_ok": spec.N == int(row["N"]),
            "multiset_ok": spec.multiset() == _shape_multiset(row["shape"]),
            "nonzero": not s.is_zero(),
            "leading_q": None if s.is_zero() else str(s.valuation),
            "squarefree": is_squarefree(spec.N),
        }
        entry["ok"] = entry["N_ok"] and entry["multiset_ok"] and entry["nonzero"] and s.order >= order
        report.append(entry)
    return report


def search(height=2, bound=12, limit=None):
    """Levels N reached by nonvanishing blocks with |a_i| <= height (|a_i| <= bound enforced)."""
    if height > bound:
        raise ParamodularError(f"height is capped at {bound}")
    found = {}
    rng = range(-height, height + 1)
    for a in product(rng, repeat=6):
        spec = block_spec(a)
        if spec.has_zero:
            continue
        found.setdefault(spec.N, a)
        if limit and len(found) >= limit:
            break
    return dict(sorted(found.items()))
