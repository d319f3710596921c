"""Property suite over a grid of groups, reported check by check."""
from __future__ import annotations

import json
from dataclasses import replace
from typing import Optional, Sequence

import numpy as np

from .ar import Report, check_lemma6, dynkin_signed_tree, lemma_cong, p_identification_report
from .cyclotomic import Cyclotomic
from .errors import McKayError
from .groups import (
    CyclicNQ,
    GroupSpec,
    ProductWithCyclic,
    brute_conjugacy,
    class_partition,
    conjugacy_classes,
    order,
    parse_spec,
)
from .quiver import (
    Quiver,
    dynkin_for,
    dynkin_type,
    is_connected,
    labeled_difference,
    mckay_quiver,
    product_quiver,
    rule_quiver,
    spectral_check,
)
from .reps import (
    CharacterTable,
    character_of,
    character_table,
    column_orthogonal,
    is_faithful,
    natural_character,
    row_orthonormal,
)

DEFAULT_GRID = (
    "C(8,1)", "C(8,3)", "C(8,5)", "C(8,7)", "C(5,4)",
    "BD(4)", "BT", "BO", "BI",
    "D(3,1)", "D(4,1)", "D(4,2)", "D(5,3)",
    "P(2)", "P(3)",
    "D(3,1)xC(5)", "P(2)xC(5)",
    "BD(4)xC(3)", "BTxC(5)", "BOxC(5)", "BIxC(7)",
)

DEFAULT_TREES = (("D", 4), ("D", 5), ("D", 6), ("D", 7), ("E", 6), ("E", 7), ("E", 8))
DEFAULT_P_CASES = ((2, 1), (2, 5), (2, 7), (3, 1))


def has_table(spec: GroupSpec) -> bool:
    inner = spec.inner if isinstance(spec, ProductWithCyclic) else spec
    return dynkin_type(inner) is None


def perturbed(table: CharacterTable) -> CharacterTable:
    """Copy of the table with one character value shifted by 1."""
    rows = [list(r) for r in table.rows]
    c = 1 if len(rows[0]) > 1 else 0
    rows[-1][c] = rows[-1][c] + Cyclotomic.rational(1)
    return replace(table, rows=tuple(tuple(r) for r in rows))


def _quiver_invariants(rep: Report, spec: GroupSpec, q: Quiver) -> None:
    rep.add("quiver connected", is_connected(q))
    ok = True
    rho_dim = 2
    for i in range(q.n):
        if int(q.mult[i] @ np.array(q.dims)) != rho_dim * q.dims[i]:
            ok = False
    rep.add("arrow dimension count", ok)
    su2 = (isinstance(spec, CyclicNQ) and spec.q == spec.n - 1) or dynkin_type(spec) is not None
    if su2 and not isinstance(spec, ProductWithCyclic):
        m = q.mult
        rep.add("SU(2) quiver symmetric, loop-free, simple",
                bool(np.array_equal(m, m.T) and not np.any(np.diag(m)) and (m.max() <= 1 or q.n == 2)))


def _guarded(rep: Report, name: str, fn) -> None:
    try:
        rep.add(name, fn())
    except McKayError as exc:
        rep.add(name, False, f"{type(exc).__name__}: {exc}")


def check_spec(spec: GroupSpec, fault: bool = False) -> Report:
    rep = Report(str(spec))
    classes = conjugacy_classes(spec)
    rep.add("class sizes sum to order", sum(c.size for c in classes) == order(spec))
    brute = brute_conjugacy(spec)
    rep.add("closed-form classes equal brute-force classes", class_partition(classes) == class_partition(brute),
            f"{len(classes)} classes")

    if has_table(spec):
        table = character_table(spec)
        if fault:
            table = perturbed(table)
        _guarded(rep, "rows orthonormal", lambda: row_orthonormal(table))
        _guarded(rep, "columns orthogonal", lambda: column_orthogonal(table))
        rep.add("sum of squared dimensions equals order", sum(d * d for d in table.dims) == order(spec))
        if not fault:
            trace_ok = all(character_of(spec, rid).values == row for rid, row in zip(table.irreps, table.rows))
            rep.add("trace characters equal closed form", trace_ok)
        rep.add("natural character faithful", is_faithful(spec, natural_character(spec)))

    if dynkin_type(spec) is not None:
        q = rule_quiver(spec)
        rep.add("Dynkin data matches class traces", spectral_check(spec, q))
        _quiver_invariants(rep, spec, q)
        return rep
    chars = mckay_quiver(spec)
    rules = rule_quiver(spec)
    diff = labeled_difference(chars, rules)
    rep.add("rule quiver equals character quiver", not diff, "; ".join(diff[:3]))
    _quiver_invariants(rep, spec, chars)
    if isinstance(spec, ProductWithCyclic):
        inner = spec.inner
        base = dynkin_for(inner) if dynkin_type(inner) else mckay_quiver(inner)
        rep.add("product of quivers equals quiver of product", product_quiver(base, spec.m) == chars)
        if dynkin_type(inner) is not None:
            rep.add("product quiver matches class traces", spectral_check(spec, chars))
    return rep


def check_ar(trees=DEFAULT_TREES, ms=(1, 2, 3, 5), p_cases=DEFAULT_P_CASES) -> list[Report]:
    out = []
    for kind, idx in trees:
        t = dynkin_signed_tree(kind, idx)
        for m in ms:
            out.append(check_lemma6(t, m))
    for k, l in p_cases:
        out.append(p_identification_report(k, l))
    cong = Report("m(m-1)/2 = m mod 3m")
    for m in range(3, 46, 6):
        cong.add(f"m={m}", lemma_cong(m))
    out.append(cong)
    return out


def verify_suite(grid: Optional[Sequence[str]] = None, fault: bool = False, ar: bool = True) -> dict:
    """Run every check over the grid; failures are report entries, never exceptions."""
    reports = []
    for text in grid if grid is not None else DEFAULT_GRID:
        try:
            reports.append(check_spec(parse_spec(text), fault=fault))
        except McKayError as exc:
            r = Report(text)
            r.add("spec accepted", False, str(exc))
            reports.append(r)
    if ar:
        reports.extend(check_ar())
    failures = sum(not c.passed for r in reports for c in r.checks)
    return {"reports": [r.to_dict() for r in reports], "failures": failures,
            "checks": sum(len(r.checks) for r in reports)}


def suite_json(result: dict) -> str:
    return json.dumps(result, indent=1) + "\n"
