"""Extract the tabulated data shipped under src/hyperlift/fixtures from the LaTeX source.

Usage: python3 scripts/build_fixtures.py [path/to/source.md]

Every recomputable quantity (orbit norms, C values, cycle-shape weights) is
recomputed here and compared against the printed value; the known transcription
corrections are listed explicitly in CORRECTIONS and recorded in the output.
"""

import json
import re
import sys
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from hyperlift.blocks import CycleShape  # noqa: E402
from hyperlift.rootdata import SemisimpleAlgebra, orbit_size  # noqa: E402

OUT = ROOT / "src" / "hyperlift" / "fixtures"


def frac(x):
    return str(Fraction(x))


# ---------------------------------------------------------------- utilities

def block(text, start, end):
    i = text.index(start)
    j = text.index(end, i)
    return text[i:j]


def clean(s):
    s = re.sub(r"\\\\(\[-?\d+mm\])?", " ", s)
    for tok in ("&", "\\,", "\\big(", "\\big)", "\\Big(", "\\Big)", "\\begin{align*}", "\\end{align*}"):
        s = s.replace(tok, " ")
    return " ".join(s.split())


def split_top(s, seps):
    """Split at separators outside braces."""
    out, depth, cur = [], 0, []
    for ch in s:
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
        if depth == 0 and ch in seps:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return [p.strip() for p in out if p.strip()]


def parse_number(s):
    s = s.strip().replace(" ", "")
    m = re.fullmatch(r"\\frac\{?(\d+)\}?\{?(\d+)\}?", s)
    if m:
        return Fraction(int(m.group(1)), int(m.group(2)))
    m = re.fullmatch(r"\\frac(\d)(\d)", s)
    if m:
        return Fraction(int(m.group(1)), int(m.group(2)))
    return Fraction(s)


def parse_term(term):
    """'44O_{w_2,1}' -> (44, 'w_2,1'); '300' -> (300, None)."""
    m = re.fullmatch(r"(\d*)\s*O_\{(.*)\}", term.strip(), re.S)
    if m:
        return int(m.group(1) or 1), m.group(2)
    return int(term), None


def ragged_norm(inner):
    parts = split_top(inner, ",")
    return parts[:-1], parse_number(parts[-1])


# ---------------------------------------------------------------- classification tables

COMPONENT = re.compile(r"([A-G])_\{(\d+),(\d+)\}(?:\^\{?(\d+)\}?)?")


def algebra_from_tex(tex):
    parts = []
    for t, n, k, m in COMPONENT.findall(tex):
        parts.append(f"{t}{n},{k}" + (f"^{m}" if m and m != "1" else ""))
    return str(SemisimpleAlgebra.parse("".join(parts)))


def classification_rows(tex):
    s = " ".join(tex.split())
    rows = re.findall(r"(\{?\d+\}?(?:\s*/\s*\{?\d+\}?)?)\s*&\s*((?:\\color\{blue\})?\s*(?:[A-G]_\{\d+,\d+\}"
                      r"(?:\^\{?\d+\}?)?\s*)+)", s)
    out = []
    for c, g in rows:
        c = Fraction(c.replace("{", "").replace("}", "").replace(" ", ""))
        alg = algebra_from_tex(g.replace("\\color{blue}", ""))
        out.append({"algebra": alg, "C": frac(c), "hyperbolizable": "blue" in g})
    return out


def check_classification(rows, a):
    for r in rows:
        g = SemisimpleAlgebra.parse(r["algebra"])
        assert g.C() == Fraction(r["C"]), r
        assert g.dim == 24 * (g.C() + a), r


# ---------------------------------------------------------------- Hoehn tables

def hohn_equal_rows(tex):
    """Rows of the table of classes with equal order and level."""
    rows, shape, genus = [], None, None
    s = " ".join(tex.split())
    for line in s.split("\\cline{3-4}"):
        for piece in line.split("\\hline"):
            m = re.search(r"\\multirow\{\d+\}\{\*\}\{\$([^$]*)\$\}\s*&\s*\\multirow\{\d+\}\{\*\}\{\$(.*?)\$\}", piece)
            if m:
                shape = m.group(1)
                genus = m.group(2).replace("\\mathop{\\mathrm {II}}\\nolimits", "II")
            m = re.search(r"((?:[A-G]_\{\d+,\d+\}(?:\^\{?\d+\}?)?)+|\\mathbb\{C\}\^\{24\})\s*&\s*(\d+)\s*$",
                          piece.replace("\\\\", " ").split("\\end{array}")[0].strip())
            if m:
                alg = None if "mathbb" in m.group(1) else algebra_from_tex(m.group(1))
                rows.append({"algebra": alg, "cycle_shape": shape_str(shape), "genus": genus,
                             "C": m.group(2)})
    return rows


def shape_str(tex):
    return str(CycleShape.parse(tex.replace(" ", "")))


def hohn_distinct_rows(tex):
    rows, shape, genus, lat = [], None, None, None
    s = " ".join(tex.split())
    for piece in re.split(r"\\cline\{\d-6\}|\\hline", s):
        m = re.search(r"\\multirow\{\d+\}\{\*\}\{\$([^$]*)\$\}\s*&\s*\\multirow\{\d+\}\{\*\}\{\$(.*?)\$\}", piece)
        if m:
            shape = m.group(1)
            genus = m.group(2).replace("\\mathop{\\mathrm {II}}\\nolimits", "II")
        m = re.search(r"\\multirow\{\d+\}\{\*\}\{\s*\$([^$]*)\$\}", piece.split("&")[2] if piece.count("&") >= 5 else "")
        if m:
            lat = m.group(1).replace("\\oplus", "+").replace(" ", "")
        elif piece.count("&") >= 5 and re.search(r"D_4\(10\)", piece):
            lat = "D4(10)"
        for m in re.finditer(r"((?:[A-G]_\{\d+,\d+\}(?:\^\{?\d+\}?)?)+)\s*&\s*([\d/]+)", piece):
            rows.append({"algebra": algebra_from_tex(m.group(1)), "cycle_shape": shape_str(shape), "genus": genus,
                         "orbit_lattice": lat.replace("_", "").replace("{", "").replace("}", ""), "C": m.group(2)})
    return rows


# ---------------------------------------------------------------- symmetric tables

def sym_cycle_rows(tex):
    rows = []
    s = " ".join(tex.split())
    for piece in s.split("\\hline"):
        cells = [c.strip() for c in piece.split("&")]
        if len(cells) != 5 or "mathfrak" in piece:
            continue
        rows.append({"cycle_shape": shape_str(cells[0]), "algebra": algebra_from_tex(cells[1]),
                     "genus": cells[2].replace("\\mathop{\\mathrm {II}}\\nolimits", "II"),
                     "orbit_lattice": cells[3].replace("\\oplus", "+").replace("_", "").replace(" ", ""),
                     "delta": frac(cells[4].replace("\\\\", "").strip())})
    return rows


def exotic_rows(extra_tex, fake_tex):
    def table(tex):
        s = " ".join(tex.split())
        lines = [l for l in s.split("\\hline") if "&" in l]
        return {l.split("&")[0].strip(): [c.strip().rstrip("\\").strip() for c in l.split("&")[1:]] for l in lines}
    a, b = table(extra_tex), table(fake_tex)
    algs = [algebra_from_tex(x) for x in a["\\mathfrak{g}"]]
    rows = []
    for i, g in enumerate(algs):
        lat = a["\\mathbf{P}_\\mathfrak{g}"][i].replace("_", "").replace(" ", "")
        rows.append({"algebra": g, "orbit_lattice": lat, "C": frac(parse_number(a["C"][i])),
                     "central_charge": frac(parse_number(a["c_\\mathfrak{g}"][i])),
                     "c": b["c"][i], "cycle_shape": shape_str(b["g"][i])})
    return rows


# ---------------------------------------------------------------- paramodular table

def table8_rows(tex):
    rows = []
    for m in re.finditer(r"^\s*(\d+)\s*&\s*\(([-\d,]+)\)\s*&\s*([^\\\n]*)", tex, re.M):
        rows.append({"N": int(m.group(1)), "a": [int(x) for x in m.group(2).split(",")],
                     "shape": " ".join(m.group(3).split())})
    return rows


# ---------------------------------------------------------------- Weyl-orbit lists

CORRECTIONS = {
    # C4,10 c1: two entries lost their norm separator
    ("C4,10", "0 2 0 11"): ((0, 2, 0, 1), Fraction(1)),
    ("C4,10", "2 2 0 01"): ((2, 2, 0, 0), Fraction(1)),
}


def weight_norm(g, labels):
    return sum(g.Q.norm(g.weight_exponent(j, m)) for j, m in enumerate(labels))


def b12_label(s):
    v = [0] * 12
    for c, i in re.findall(r"(\d*)\s*w_\{?(\d+)\}?", s):
        v[int(i) - 1] += int(c or 1)
    return [v]


def f4a2_label(parts):
    a2, f4 = parts
    return [[int(x) for x in a2.strip()], [int(x) for x in f4.strip()]]


def c4_label(parts):
    toks = " ".join(parts).replace(",", " ").split()
    return [[int(x) for x in toks]]


def orbit_entry(g, q_power, coeff, labels, norm, complete, corrected=None):
    computed = weight_norm(g, labels)
    if corrected is None and computed != norm:
        raise AssertionError(f"{g}: printed norm {norm} != computed {computed} for {labels}")
    e = {"q_power": frac(q_power),
         "orbit": {"dominant_weight": labels, "norm": frac(computed),
                   "multiplicity": coeff if complete else None}}
    if corrected:
        e["correction"] = corrected
    return e


def parse_sum(g, expr, q_power, label_fn, complete=True, seps="+"):
    entries, constant = [], 0
    for term in split_top(clean(expr).rstrip(",. "), seps):
        coeff, inner = parse_term(term)
        if inner is None:
            constant += coeff
            continue
        key = (str(g), inner.strip())
        if key in CORRECTIONS:
            labels, norm = CORRECTIONS[key]
            entries.append(orbit_entry(g, q_power, coeff, [list(labels)], norm, complete,
                                       corrected=f"printed as O_{{{inner}}}"))
            continue
        parts, norm = ragged_norm(inner)
        entries.append(orbit_entry(g, q_power, coeff, label_fn(parts), norm, complete))
    if constant:
        zero = [[0] * s.rank for s in g.simples]
        entries.append({"q_power": frac(q_power),
                        "orbit": {"dominant_weight": zero, "norm": "0", "multiplicity": constant if complete else None}})
    return entries


def orbits_b12(text):
    g = SemisimpleAlgebra.parse("B12,2")
    src = block(text, "\\label{lem:B12}", "\\end{proof}")
    q0 = re.search(r"q\^\{-1\}\+\((.*?)\)\+\\sum", src, re.S).group(1)
    body = block(src, "c_1=", "\\end{align*}")
    c1, c2 = body[len("c_1="):].split("c_2=")
    entries = parse_sum(g, q0, 0, lambda p: b12_label(p[0]))
    entries += parse_sum(g, c1.rstrip(", \n"), 1, lambda p: b12_label(p[0]))
    entries += parse_sum(g, c2.rstrip(". \n"), 2, lambda p: b12_label(p[0]))
    return fixture(g, "Q", "D12(2)", "6", 2, entries, complete_through=2)


def orbits_f4a2(text):
    g = SemisimpleAlgebra.parse("A2,2F4,6")
    src = block(text, "\\label{lem:F4A2}", "\\end{proof}")
    printed_q0 = re.search(r"q\^\{-1\}\+ \\big\((.*?)\\big\)", src, re.S).group(1)
    # The printed q^0 term is inconsistent with the root data of the algebra (an A2 weight
    # orbit appears and the F4 norms are off by a factor 3); the singular-weight structure
    # forces q^0 = roots + rank, which is what we ship.
    q0 = "O_{11,0000,1}+O_{00,1000,\\frac{1}{3}}+O_{00,0001,\\frac{1}{6}}+6"
    entries = parse_sum(g, q0, 0, f4a2_label)
    lists = re.findall(r"\\begin\{align\*\}(.*?)\\end\{align\*\}", src.split("and list the singular")[1], re.S)
    assert len(lists) == 3
    for i, lst in enumerate(lists, start=1):
        entries += parse_sum(g, lst.strip().rstrip(". "), i, f4a2_label, complete=False, seps=",")
    counts = [sum(1 for e in entries if e["q_power"] == str(i)) for i in (1, 2, 3)]
    assert counts == [17, 26, 41], counts
    fx = fixture(g, "Q", "A2(2)+D4(6)", "22/3", 3, entries, complete_through=0)
    fx["printed_q0"] = " ".join(printed_q0.split())
    fx["corrections"] = ["q^0 term replaced by the root orbits plus rank"]
    return fx


def orbits_c4(text):
    g = SemisimpleAlgebra.parse("C4,10")
    src = block(text, "\\label{lem:C4}", "\\end{proof}")
    q0 = re.search(r"q\^\{-1\}\+\\big\((.*?)\\big\)", src, re.S).group(1)
    entries = parse_sum(g, q0, 0, c4_label)
    lists = re.findall(r"\\begin\{align\*\}(.*?)\\end\{align\*\}", src.split("and find that $c_1$ equals")[1], re.S)
    assert len(lists) == 4
    entries += parse_sum(g, lists[0].strip().rstrip(". "), 1, c4_label)
    for i, lst in enumerate(lists[1:], start=2):
        entries += parse_sum(g, lst.strip().rstrip(". "), i, c4_label, complete=False, seps=",")
    counts = [sum(1 for e in entries if e["q_power"] == str(i)) for i in (2, 3, 4)]
    assert counts == [10, 11, 16], counts
    fx = fixture(g, "P", "D4'(20)", "10", 4, entries, complete_through=1)
    fx["corrections"] = [f"{k[1]} read as labels {list(v[0])}, norm {v[1]}" for k, v in CORRECTIONS.items()
                         if k[0] == "C4,10"]
    return fx


# coefficients of q^-1 + 196884 q + 21493760 q^2 + ... shifted: the full character evaluated
# at zeta = 1 is J + dim V_1, so the complete slices must add up to these dimensions
J_COEFFS = {1: 196884, 2: 21493760}


def check_dimensions(g, entries, complete_through):
    for i in range(0, complete_through + 1):
        total = 0
        for e in entries:
            if e["q_power"] != str(i):
                continue
            size = 1
            for s, lab in zip(g.simples, e["orbit"]["dominant_weight"]):
                size *= orbit_size(s.type, lab)
            total += size * e["orbit"]["multiplicity"]
        want = g.dim if i == 0 else J_COEFFS[i]
        assert total == want, (str(g), i, total, want)


def fixture(g, frame, lattice, delta, depth, entries, complete_through):
    check_dimensions(g, entries, complete_through)
    return {"algebra": str(g), "levels": g.levels, "types": [str(i.type) for i in g.ideals],
            "lattice_frame": frame, "orbit_lattice": lattice, "delta": delta, "q_depth": depth,
            "complete_through": complete_through, "q_minus_one": 1, "entries": entries}


# ---------------------------------------------------------------- main

def main(path):
    text = Path(path).read_text()
    OUT.mkdir(parents=True, exist_ok=True)

    sym_tex = block(text, "\\label{table:sym}", "\\end{table}")
    anti_tex = block(text, "\\label{table:anti1}", "\\label{table:8cycleshapes}")
    anti, sym = classification_rows(anti_tex), classification_rows(sym_tex)
    check_classification(anti, 1)
    check_classification(sym, 0)
    assert (len(anti), sum(r["hyperbolizable"] for r in anti)) == (221, 69)
    assert (len(sym), sum(r["hyperbolizable"] for r in sym)) == (17, 12)
    dump("classification.json", {"anti": anti, "sym": sym})

    equal = hohn_equal_rows(block(text, "\\label{table:8cycleshapes}", "\\end{table}"))
    distinct = hohn_distinct_rows(block(text, "\\label{table:3cycleshapes}", "\\end{table}"))
    blue = {r["algebra"] for r in anti if r["hyperbolizable"]}
    listed = {r["algebra"] for r in equal + distinct if r["algebra"]}
    missing = sorted(blue - listed)
    assert not (listed - blue), listed - blue
    for g in missing:
        # a Niemeier root system absent from the printed table; its class is the identity
        equal.append({"algebra": g, "cycle_shape": "1^{24}", "genus": "II_{24,0}(1)",
                      "C": frac(SemisimpleAlgebra.parse(g).C()), "added": True})
    for r in distinct:
        c = SemisimpleAlgebra.parse(r["algebra"]).C()
        if c != Fraction(r["C"]):
            r["printed_C"], r["C"] = r["C"], frac(c)
    dump("hohn.json", {"equal_order_level": equal, "distinct_order_level": distinct, "added": missing})

    symc = sym_cycle_rows(block(text, "\\label{tab:sym-cycle}", "\\smallskip"))
    exotic = exotic_rows(block(text, "\\label{tab:extra}", "\\end{table}"),
                         block(text, "\\label{tab:fake-cycle-shape}", "\\end{table}"))
    assert len(symc) == 8 and len(exotic) == 4
    dump("symmetric.json", {"c_one": symc, "exotic": exotic})

    cusp = {}
    for r in equal:
        if r["algebra"]:
            cusp[r["algebra"]] = {"shape": r["cycle_shape"], "c": "1"}
    for r in distinct:
        cusp[r["algebra"]] = {"shape": r["cycle_shape"], "c": "2"}
    for r in symc:
        cusp[r["algebra"]] = {"shape": r["cycle_shape"], "c": "1"}
    for r in exotic:
        cusp[r["algebra"]] = {"shape": r["cycle_shape"], "c": r["c"]}
    for g, row in cusp.items():
        alg, shape = SemisimpleAlgebra.parse(g), CycleShape.parse(row["shape"])
        assert shape.eta_q_offset == 1 and shape.weight == Fraction(alg.rank, 2), (g, row)
    assert len(cusp) == 81
    dump("cusp_shapes.json", cusp)

    rows = table8_rows(block(text, "\\label{tableanti3prime}", "\\backmatter"))
    assert len(rows) == 64, len(rows)
    dump("table8.json", {"rows": rows})

    dump("orbits_B12_2.json", orbits_b12(text))
    dump("orbits_A2_2F4_6.json", orbits_f4a2(text))
    dump("orbits_C4_10.json", orbits_c4(text))
    print("added to the equal order/level table:", missing)


def dump(name, obj):
    (OUT / name).write_text(json.dumps(obj, indent=1) + "\n")
    print("wrote", name)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else ROOT / "paper.md")
