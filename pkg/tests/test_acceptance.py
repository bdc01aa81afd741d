"""The twelve acceptance criteria, one pass/fail line each."""

import sys
import time

import pytest

from hyperlift.cli import run_suite

CRITERIA = [
    (1, "classification", "classification counts and table multiset", 60),
    (2, "constants", "C and central charge spot values", None),
    (3, "macdonald", "Macdonald identity to q^5", None),
    (4, "doubling", "doubling and halving identities to q^4", None),
    (5, "identities", "character identities to q^3 with zeta=1 constants", None),
    (6, "reflect", "reflectivity certificates of the 12 symmetric products", 300),
    (7, "fixtures", "fixture reflectivity and witnesses", None),
    (8, "lift", "G = B for A1,2^8, A2,3^3 and A1,16", None),
    (9, "oracle", "Hecke expansion vs direct product on 20 random inputs", None),
    (10, "delta", "delta values 6, 22/3, 10", None),
    (11, "embed", "embedding facts and A1 into A1(2) failure", 120),
    (12, "table8", "64 paramodular rows to q^5", 120),
]


def check(number, suite, limit):
    t = time.perf_counter()
    rep = run_suite(suite)
    elapsed = time.perf_counter() - t
    ok = rep["pass"] and (limit is None or elapsed < limit)
    return ok, elapsed, rep


@pytest.mark.parametrize("number,suite,title,limit", CRITERIA, ids=[c[1] for c in CRITERIA])
def test_criterion(number, suite, title, limit, capsys):
    ok, elapsed, rep = check(number, suite, limit)
    with capsys.disabled():
        print(f"\ncriterion {number:2d} [{suite}] {title}: {'PASS' if ok else 'FAIL'} ({elapsed:.1f}s)")
    assert ok, rep


if __name__ == "__main__":
    failed = 0
    for number, suite, title, limit in CRITERIA:
        ok, elapsed, _ = check(number, suite, limit)
        failed += not ok
        print(f"criterion {number:2d} [{suite}] {title}: {'PASS' if ok else 'FAIL'} ({elapsed:.1f}s)")
    sys.exit(1 if failed else 0)
