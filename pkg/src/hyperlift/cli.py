"""Command-line front end: one verb per library entry point, JSON on stdout."""

import json
import random
import sys
from fractions import Fraction

import click

from . import linalg as la
from . import blocks, characters, classify, lattice, lift, paramodular, reflect
from .rootdata import SemisimpleAlgebra, central_charge

DEFAULT_Q_ORDER = 3
DEFAULT_XI_ORDER = 3


class VerificationFailed(click.ClickException):
    exit_code = 1


def _emit(obj):
    click.echo(json.dumps(obj, sort_keys=True, indent=2, default=str))


def _fail_unless(ok, obj):
    _emit(obj)
    if not ok:
        raise VerificationFailed("verification failed")


def _algebra(text):
    try:
        return SemisimpleAlgebra.parse(text)
    except ValueError as exc:
        raise click.BadParameter(str(exc)) from exc


def _lattice(text):
    try:
        return lattice.build(text)
    except ValueError as exc:
        raise click.BadParameter(str(exc)) from exc


def _order(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise click.BadParameter(f"not a rational order: {text}") from exc


class _Group(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except FileNotFoundError as exc:
            raise click.UsageError(f"missing fixture {exc.filename}") from exc


@click.group(cls=_Group)
def main():
    """Exact Fourier-Jacobi computations for theta blocks, Borcherds products and lifts."""


@main.command("classify")
@click.option("--case", type=click.Choice(["anti", "sym"]), required=True)
@click.option("--count", is_flag=True, help="print only the number of solutions")
@click.option("--hyperbolizable", is_flag=True, help="restrict to hyperbolizable solutions")
def classify_cmd(case, count, hyperbolizable):
    sols = classify.solve(1 if case == "anti" else 0)
    if hyperbolizable:
        sols = [s for s in sols if s.hyperbolizable]
    if count:
        click.echo(str(len(sols)))
    else:
        _emit([s.to_json() for s in sols])


@main.command("theta-block")
@click.argument("algebra")
@click.option("--q-order", default=str(DEFAULT_Q_ORDER), show_default=True)
def theta_block_cmd(algebra, q_order):
    g = _algebra(algebra)
    order = _order(q_order)
    _emit({"algebra": str(g), "q_order": str(order), "series": blocks.theta_block(g, order).to_json()})


@main.command("phi")
@click.argument("algebra")
@click.option("--q-order", default=str(DEFAULT_Q_ORDER), show_default=True)
def phi_cmd(algebra, q_order):
    g = _algebra(algebra)
    order = _order(q_order)
    try:
        s = blocks.phi_input(g, order)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    _emit({"algebra": str(g), "q_order": str(order), "series": s.to_json()})


def _borcherds(g, xi_order, q_order):
    """B(phi_g) in the orbit-lattice frame, with l > 0 decided by the Weyl vector rho_g."""
    L, cols = blocks.orbit_lattice_data(g)
    rho = lift.to_frame_vec(g.rho.coords, cols)
    func = la.matvec(la.to_fractions(L.gram), list(rho))
    phi = blocks.phi_input(g, lift.input_order_needed(q_order, xi_order, g.C(), 0))
    return lift.borcherds_fj(phi, L, xi_order, q_order, func)


def _lift_pair(g, xi_order, q_order):
    return _borcherds(g, xi_order, q_order), lift.additive_fj(g, xi_order, q_order)


def _lift_agree(b, a):
    if b.xi_offset != a.xi_offset:
        return False, "xi offsets differ"
    for j in range(b.xi_order + 1):
        d = b.coefficient(j).first_difference(a.coefficient(j), b.q_order)
        if d is not None:
            return False, f"xi^(C+{j}): {d}"
    return True, None


@main.command("lift")
@click.argument("algebra")
@click.option("--xi-order", default=DEFAULT_XI_ORDER, show_default=True, type=int)
@click.option("--q-order", default=str(DEFAULT_Q_ORDER), show_default=True)
@click.option("--method", type=click.Choice(["borcherds", "additive", "both"]), default="both", show_default=True)
def lift_cmd(algebra, xi_order, q_order, method):
    g = _algebra(algebra)
    order = _order(q_order)
    if not blocks.is_symmetric_input(g):
        raise click.UsageError(f"{g} is not one of the symmetric algebras")
    out = {"algebra": str(g), "xi_order": xi_order, "q_order": str(order), "method": method}
    if method in ("borcherds", "both"):
        b = _borcherds(g, xi_order, order)
        out["borcherds"] = b.to_json()
    if method in ("additive", "both"):
        a = lift.additive_fj(g, xi_order, order)
        out["additive"] = a.to_json()
    if method == "both":
        ok, diff = _lift_agree(b, a)
        out["agree"], out["first_difference"] = ok, diff
        _fail_unless(ok, out)
    else:
        _emit(out)


@main.command("reflect")
@click.argument("algebra")
def reflect_cmd(algebra):
    g = _algebra(algebra)
    try:
        cert = reflect.certify(g)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    _fail_unless(cert.valid, cert.to_json())


@main.command("char-identity")
@click.argument("name", type=click.Choice(characters.IDENTITIES))
@click.option("--q-order", default=str(DEFAULT_Q_ORDER), show_default=True)
def char_identity_cmd(name, q_order):
    rep = characters.run_identity(name, _order(q_order))
    _fail_unless(rep["ok"], rep)


@main.command("paramodular")
@click.option("--a", "a_text", help="six comma-separated integers a1..a6")
@click.option("--q-order", default="5", show_default=True)
@click.option("--verify-table", is_flag=True)
def paramodular_cmd(a_text, q_order, verify_table):
    order = _order(q_order)
    if verify_table:
        rep = paramodular.verify_table(order=order)
        ok = all(r["ok"] for r in rep)
        _fail_unless(ok, {"q_order": str(order), "rows": len(rep), "passed": sum(r["ok"] for r in rep),
                          "report": rep})
        return
    if not a_text:
        raise click.UsageError("give --a or --verify-table")
    try:
        spec = paramodular.block_spec([int(x) for x in a_text.split(",")])
        s = paramodular.expand(spec.a, order)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    out = spec.to_json()
    out.update(q_order=str(order), nonzero=not s.is_zero(), series=s.to_json())
    _emit(out)


@main.command("delta")
@click.argument("spec")
def delta_cmd(spec):
    d, _ = lattice.delta(_lattice(spec))
    click.echo(str(d))


@main.command("embed")
@click.argument("source")
@click.argument("target")
def embed_cmd(source, target):
    m = lattice.find_embedding(_lattice(source), _lattice(target))
    _fail_unless(m is not None, {"source": source, "target": target, "embedding": m})


@main.command("suite")
@click.argument("name")
def suite_cmd(name):
    if name not in SUITES:
        raise click.UsageError(f"unknown suite {name}; choose from {', '.join(sorted(SUITES))}")
    rep = run_suite(name)
    _fail_unless(rep["pass"], rep)


# acceptance suites

def suite_classification():
    data = blocks.load_fixture("classification.json")
    out = {}
    ok = True
    for a, case in ((1, "anti"), (0, "sym")):
        got = sorted((str(s.algebra), str(s.C), s.hyperbolizable) for s in classify.solve(a))
        want = sorted((str(SemisimpleAlgebra.parse(r["algebra"])), str(Fraction(r["C"])), bool(r["hyperbolizable"]))
                      for r in data[case])
        out[case] = {"solutions": len(got), "hyperbolizable": sum(h for _, _, h in got), "matches_table": got == want}
        ok = ok and got == want
    counts = (out["anti"]["solutions"], out["sym"]["solutions"], out["anti"]["hyperbolizable"],
              out["sym"]["hyperbolizable"])
    ok = ok and counts == (221, 17, 69, 12)
    return {"pass": ok, "counts": list(counts), **out}


def suite_constants():
    rows = {"D24,1": Fraction(46), "B12,2": Fraction(23, 2), "A1,16": Fraction(1, 8)}
    got = {k: SemisimpleAlgebra.parse(k).C() for k in rows}
    c = central_charge(SemisimpleAlgebra.parse("A1,16"))
    return {"pass": got == rows and c == Fraction(8, 3), "C": {k: str(v) for k, v in got.items()},
            "central_charge_A1,16": str(c)}


def suite_macdonald(order=5):
    res = {t: characters.macdonald(t, order) for t in ("A1", "A2", "B2", "G2", "A3")}
    return {"pass": all(ok for ok, _ in res.values()), "q_order": order,
            "types": {t: {"ok": ok, "sign": s} for t, (ok, s) in res.items()}}


def doubling_coords(lat, seed=0):
    """Twelve random coordinate functionals z_j = (c_j, w) on a small lattice."""
    rng = random.Random(seed)
    vecs = [v.coords for v in lattice.short_vectors(lat, 2, in_dual=True)]
    return [rng.choice(vecs) for _ in range(12)]


def suite_doubling(order=4, pullbacks=(("A1", 0), ("A2", 1), ("A1+A1", 2))):
    f1, f2 = blocks.doubling_factor_identities(order)
    pb = []
    for spec, seed in pullbacks:
        lat = lattice.build(spec)
        d1, d2 = blocks.doubling_pullback_identities(doubling_coords(lat, seed), lat, order)
        pb.append({"lattice": spec, "seed": seed, "doubling": d1, "halving": d2})
    ok = f1 and f2 and all(p["doubling"] and p["halving"] for p in pb)
    return {"pass": ok, "q_order": order, "factor": {"doubling": f1, "halving": f2}, "pullbacks": pb}


def suite_identities(order=3):
    reps = [characters.run_identity(n, order) for n in characters.EXOTIC]
    consts = sorted(r["zeta_one_constant"] for r in reps)
    ok = all(r["ok"] for r in reps) and consts == [3, 6, 8, 12]
    return {"pass": ok, "q_order": order, "identities": reps}


def suite_reflect():
    reps = {}
    for g in blocks.SYMMETRIC:
        cert = reflect.certify(g)
        reps[g] = {"valid": cert.valid, "weyl_vector": cert.to_json()["weyl_vector"],
                   "algebra": None if cert.algebra is None else str(cert.algebra)}
    return {"pass": all(r["valid"] for r in reps.values()), "algebras": reps}


WITNESSES = (("B12,2", "q^2*O_000000001000", 4), ("C4,10", "q^1*O_4002", 5))


def suite_fixtures():
    reps, certs = {}, {}
    ok = True
    for g in reflect.FIXTURES:
        cert = certs[g] = reflect.certify(g)
        terms = {t.label: (v, w) for t, v, w in cert.terms}
        reps[g] = {"valid": cert.valid, "singular_orbits": len(terms),
                   "all_reflective": all(v for v, _ in terms.values())}
        ok = ok and cert.valid
    wit = []
    for g, label, t in WITNESSES:
        terms = {x.label: (v, w) for x, v, w in certs[g].terms}
        hit = terms.get(label)
        good = hit is not None and hit[0] and hit[1] == t
        wit.append({"algebra": g, "orbit": label, "t": t, "ok": good})
        ok = ok and good
    return {"pass": ok, "algebras": reps, "witnesses": wit}


def suite_lift(q_order=3):
    cases = (("A1,2^8", 2), ("A2,3^3", 2), ("A1,16", 2))
    reps = []
    for g, xi in cases:
        b, a = _lift_pair(SemisimpleAlgebra.parse(g), xi, q_order)
        ok, diff = _lift_agree(b, a)
        reps.append({"algebra": g, "xi_order": xi, "q_order": q_order, "agree": ok, "first_difference": diff})
    return {"pass": all(r["agree"] for r in reps), "cases": reps}


ORACLE_LATTICES = ("A1", "A2", "A1+A1", "A1(2)")


def suite_oracle(count=20, seed=0, xi_order=3, q_order=3):
    rng = random.Random(seed)
    reps = []
    for i in range(count):
        spec = ORACLE_LATTICES[i % len(ORACLE_LATTICES)]
        L = lattice.build(spec)
        phi = lift.random_small_input(L, rng)
        b = lift.borcherds_fj(phi, L, xi_order, q_order)
        C, direct = lift.product_expansion_direct(phi, L, xi_order, q_order)
        ok = C == b.xi_offset and all(b.coefficient(j) == direct[j] for j in range(xi_order + 1))
        reps.append({"input": i, "lattice": spec, "agree": ok})
    return {"pass": all(r["agree"] for r in reps), "seed": seed, "xi_order": xi_order, "q_order": q_order,
            "inputs": reps}


DELTAS = (("D12(2)", Fraction(6)), ("A2(2)+D4(6)", Fraction(22, 3)), ("D4(10)", Fraction(10)))


def suite_delta():
    got = [(s, lattice.delta(lattice.build(s))[0]) for s, _ in DELTAS]
    return {"pass": got == list(DELTAS), "values": {s: str(d) for s, d in got}}


EMBEDDINGS = (("A2(4)", "A1+A1(3)"), ("A3'(8)", "A1+2A1(2)"), ("4A1", "D4"), ("D4(3)", "A2+A2(2)"),
              ("A4'(5)", "A4"), ("3A1(3)", "A1+A2(2)"), ("A1(4)", "A1"), ("A3'(16)", "A3"))
NON_EMBEDDINGS = (("A1", "A1(2)"),)


def suite_embed():
    found = [{"source": a, "target": b, "found": lattice.find_embedding(lattice.build(a), lattice.build(b)) is not None}
             for a, b in EMBEDDINGS]
    absent = [{"source": a, "target": b, "found": lattice.find_embedding(lattice.build(a), lattice.build(b)) is not None}
              for a, b in NON_EMBEDDINGS]
    ok = all(r["found"] for r in found) and not any(r["found"] for r in absent)
    return {"pass": ok, "embeddings": found, "non_embeddings": absent}


def suite_table8(order=5):
    rep = paramodular.verify_table(order=order)
    passed = sum(r["ok"] for r in rep)
    return {"pass": passed == len(rep) == 64, "q_order": order, "passed": passed, "rows": len(rep)}


SUITES = {
    "classification": suite_classification,
    "constants": suite_constants,
    "macdonald": suite_macdonald,
    "doubling": suite_doubling,
    "identities": suite_identities,
    "reflect": suite_reflect,
    "fixtures": suite_fixtures,
    "lift": suite_lift,
    "oracle": suite_oracle,
    "delta": suite_delta,
    "embed": suite_embed,
    "table8": suite_table8,
}


def run_suite(name):
    return SUITES[name]() | {"suite": name}


if __name__ == "__main__":
    sys.exit(main())
