"""Acceptance criteria, one test and one printed PASS/FAIL line each.

Run directly (python tests/test_acceptance.py) for just the summary lines.
"""
import random
import sys
from collections import Counter

import numpy as np
import pytest

from mckay.ar import check_lemma6, dynkin_signed_tree, lemma_cong, verify_P_identification, bracket_quiver
from mckay.cyclotomic import Cyclotomic, root_of_unity
from mckay.groups import (
    CyclicNQ,
    DihedralD,
    PPrime,
    brute_conjugacy,
    class_partition,
    conjugacy_classes,
    order,
    parse_spec,
)
from mckay.quiver import (
    dynkin_extended,
    find_isomorphism,
    is_connected,
    mckay_quiver,
    product_quiver,
    rule_quiver,
)
from mckay.reps import (
    beta,
    character_of,
    character_table,
    column_orthogonal,
    d_rho_character,
    inner_product,
    is_faithful,
    natural_character,
    row_orthonormal,
)
from mckay.verify import has_table

D_GRID = [(k, r) for k in (3, 4, 5) for r in (1, 2, 3)]
P_GRID = [2, 3]
TABLE_SPECS = [DihedralD(k, r) for k, r in D_GRID] + [PPrime(k) for k in P_GRID]
CATALOG = ["C(8,1)", "C(8,3)", "C(8,5)", "C(8,7)", "C(5,4)", "BD(3)", "BD(4)", "BT", "BO", "BI",
           "D(3,1)", "D(4,1)", "D(4,2)", "D(5,3)", "P(2)", "P(3)",
           "D(3,1)xC(5)", "P(2)xC(5)", "P(2)xC(7)", "BD(4)xC(3)", "BTxC(5)", "BOxC(5)", "BIxC(7)"]


def announce(capsys, number: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"ACCEPTANCE {number} {title}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else "")
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)


# ---------------------------------------------------------------- checks

def criterion_1():
    bad = []
    for spec in TABLE_SPECS:
        table = character_table(spec)
        for rid, row in zip(table.irreps, table.rows):
            if character_of(spec, rid).values != row:
                bad.append(f"{spec} {rid}")
        if not row_orthonormal(table) or not column_orthogonal(table):
            bad.append(f"{spec} orthogonality")
    return not bad, f"{len(TABLE_SPECS)} tables" if not bad else "; ".join(bad[:5])


def criterion_2():
    bad = []
    for k, r in D_GRID:
        spec = DihedralD(k, r)
        for s in range(2 ** (k - 1)):
            for t in range(2 * r + 1):
                chi = d_rho_character(spec, t, s)
                want = 2 if t == 0 else 1
                if inner_product(spec, chi, chi) != want:
                    bad.append(f"{spec} chi_{t},{s}")
    for k in P_GRID:
        spec = PPrime(k)
        table = character_table(spec)
        for rid in table.irreps:
            if rid.kind in ("rho", "varsigma"):
                chi = table.character(rid)
                if inner_product(spec, chi, chi) != 1:
                    bad.append(f"{spec} {rid}")
    return not bad, "; ".join(bad[:5])


STATED_COUNTS = {"D(4,1)": (24, 48), "D(4,2)": (32, 64), "P(2)": (21, 54)}
PRODUCT_SIZES = {"BD(4)xC(3)": 21, "D(3,1)xC(5)": 60, "BTxC(5)": 35, "BOxC(5)": 40, "BIxC(7)": 63}


def criterion_3():
    notes = []
    ok = True
    for q in (1, 3, 5, 7):
        quiver = mckay_quiver(CyclicNQ(8, q))
        want = np.zeros((8, 8), dtype=int)
        for i in range(8):
            want[i, (i + 1) % 8] += 1
            want[i, (i + q) % 8] += 1
        order_ = [quiver.index(beta(i)) for i in range(8)]
        if not np.array_equal(quiver.mult[np.ix_(order_, order_)], want) or quiver != rule_quiver(CyclicNQ(8, q)):
            ok = False
            notes.append(f"C(8,{q}) arrows")
    for text, (n, arrows) in STATED_COUNTS.items():
        spec = parse_spec(text)
        chars, rules = mckay_quiver(spec), rule_quiver(spec)
        if chars != rules:
            ok = False
            notes.append(f"{text} rule/character mismatch")
        if chars.n != n or chars.arrow_count() != arrows:
            ok = False
            notes.append(f"{text}: {chars.n} vertices / {chars.arrow_count()} arrows, stated {n} / {arrows}")
    p2 = mckay_quiver(PPrime(2))
    by_kind = Counter()
    for i, lab in enumerate(p2.labels):
        by_kind[lab.kind] += p2.out_degree(i)
    if (by_kind["alpha"], by_kind["rho"], by_kind["varsigma"]) != (9, 18, 27):
        ok = False
        notes.append(f"P(2) arrows by source alpha/rho/varsigma = {by_kind['alpha']}/{by_kind['rho']}/"
                     f"{by_kind['varsigma']}, stated 9/18/27")
    for text, n in PRODUCT_SIZES.items():
        spec = parse_spec(text)
        chars, rules = mckay_quiver(spec), rule_quiver(spec)
        if chars.n != n or chars != rules:
            ok = False
            notes.append(f"{text}: {chars.n} vertices")
    return ok, "; ".join(notes)


def criterion_4():
    bad = []
    for inner in ("D(3,1)", "P(2)"):
        base = mckay_quiver(parse_spec(inner))
        for m in (5, 7):
            if mckay_quiver(parse_spec(f"{inner}xC({m})")) != product_quiver(base, m):
                bad.append(f"{inner}xC({m})")
    return not bad, "; ".join(bad)


def criterion_5():
    bad = [t for t in CATALOG if not is_connected(rule_quiver(parse_spec(t)))]
    for t in CATALOG:
        spec = parse_spec(t)
        if has_table(spec) and not is_faithful(spec, natural_character(spec)):
            bad.append(f"{t} natural not faithful")
    spec = CyclicNQ(4, 1)
    b2 = character_table(spec).character(beta(2))
    if is_connected(mckay_quiver(spec, b2 + b2)) or is_faithful(spec, b2 + b2):
        bad.append("C(4,1) beta_2+beta_2")
    return not bad, "; ".join(bad)


def criterion_6():
    bad = []
    trees = [("D", 4), ("D", 5), ("D", 6), ("D", 7), ("E", 6), ("E", 7), ("E", 8)]
    for kind, idx in trees:
        for m in (1, 3, 5):
            rep = check_lemma6(dynkin_signed_tree(kind, idx), m)
            if not rep.ok:
                bad.append(rep.case)
    if find_isomorphism(product_quiver(dynkin_extended("E", 6), 5), bracket_quiver(dynkin_signed_tree("E", 6), 5)) is None:
        bad.append("E6 x 5 vs [E6,5]")
    for k, l in [(2, 1), (2, 5), (2, 7), (3, 1)]:
        if not verify_P_identification(k, l):
            bad.append(f"P identification ({k},{l})")
    for m in range(3, 46, 6):
        if not lemma_cong(m):
            bad.append(f"cong m={m}")
    return not bad, "; ".join(bad)


def criterion_7():
    bad = []
    for t in CATALOG:
        spec = parse_spec(t)
        if class_partition(conjugacy_classes(spec)) != class_partition(brute_conjugacy(spec)):
            bad.append(t)
    for k, r in D_GRID:
        h = 2 ** (k - 1)
        if Counter(c.size for c in brute_conjugacy(DihedralD(k, r))) != Counter({1: h, 2: h * r, 2 * r + 1: h}):
            bad.append(f"D({k},{r}) sizes")
    for k in P_GRID:
        t3 = 3 ** (k - 1)
        if Counter(c.size for c in brute_conjugacy(PPrime(k))) != Counter({1: 2 * t3, 4: 4 * t3, 6: t3}):
            bad.append(f"P({k}) sizes")
    return not bad, "; ".join(bad)


def _random_cyclotomic(rng: random.Random) -> Cyclotomic:
    N = rng.choice([1, 3, 4, 5, 8, 12, 15, 20])
    return Cyclotomic.from_group_ring(N, {rng.randrange(N): rng.randint(-4, 4) for _ in range(3)})


def criterion_8():
    bad = []
    rng = random.Random(2024)
    for _ in range(300):
        a, b, c = (_random_cyclotomic(rng) for _ in range(3))
        if (a + b) + c != a + (b + c) or (a * b) * c != a * (b * c) or a * (b + c) != a * b + a * c:
            bad.append(f"axioms {a}, {b}, {c}")
            break
    for n in range(1, 41):
        for t in range(2 * n):
            total = sum((root_of_unity(n, t * q) for q in range(n)), Cyclotomic.rational(0))
            if total != (n if t % n == 0 else 0):
                bad.append(f"root sum n={n} t={t}")
    for t in CATALOG:
        spec = parse_spec(t)
        dims = character_table(spec).dims if has_table(spec) else rule_quiver(spec).dims
        if sum(d * d for d in dims) != order(spec):
            bad.append(f"{t} dimensions")
    return not bad, "; ".join(bad)


CRITERIA = [
    (1, "character-table exactness", criterion_1),
    (2, "irreducibility inner products", criterion_2),
    (3, "figure reproduction", criterion_3),
    (4, "Kronecker theorem", criterion_4),
    (5, "connectivity iff faithfulness", criterion_5),
    (6, "layered-quiver suite", criterion_6),
    (7, "class oracle equivalence", criterion_7),
    (8, "arithmetic foundation", criterion_8),
]


@pytest.mark.parametrize("number, title, check", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_acceptance(number, title, check, capsys):
    ok, detail = check()
    announce(capsys, number, title, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    results = []
    for number, title, check in CRITERIA:
        ok, detail = check()
        announce(None, number, title, ok, detail)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
