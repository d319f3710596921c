from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from mckay.cyclotomic import Cyclotomic, root_of_unity
from mckay.errors import InvalidId, NotACharacter, Unsupported
from mckay.groups import CyclicNQ, DihedralD, PPrime, class_of, conjugacy_classes, element, order, parse_spec
from mckay.matrix import identity, mat_pow, trace
from mckay.reps import (
    alpha,
    beta,
    canonicalize,
    character_of,
    character_of_matrices,
    character_table,
    check_relations,
    closed_form_character,
    column_orthogonal,
    d_rho_character,
    d_rho_matrices,
    decompose,
    decompose_many,
    inner_product,
    irreps,
    is_faithful,
    natural_character,
    p_varsigma_matrices,
    pair,
    parse_irrep,
    rep_matrices,
    rho,
    row_orthonormal,
    table_csv,
    table_text,
    trivial_character,
    varsigma,
)

from conftest import numeric

TABLE_GRID = ["C(8,3)", "C(6,5)", "D(3,1)", "D(3,2)", "D(3,3)", "D(4,1)", "D(4,2)", "D(4,3)",
              "D(5,1)", "D(5,2)", "D(5,3)", "P(2)", "P(3)", "D(3,1)xC(5)", "P(2)xC(5)"]


def test_irrep_counts():
    assert len(irreps(DihedralD(4, 1))) == 24
    assert sum(1 for i in irreps(DihedralD(4, 1)) if i.kind == "alpha") == 16
    assert len(irreps(PPrime(2))) == 21
    ids = irreps(parse_spec("P(2)xC(5)"))
    assert len(ids) == 105 and all(i.kind == "pair" for i in ids)
    with pytest.raises(Unsupported):
        irreps(parse_spec("BT"))


def test_irrep_label_round_trip():
    for text in ["D(4,2)", "P(2)", "D(3,1)xC(5)", "C(8,3)"]:
        for rid in irreps(parse_spec(text)):
            assert parse_irrep(str(rid)) == rid
    with pytest.raises(InvalidId):
        parse_irrep("sigma_2")


@pytest.mark.parametrize("text", TABLE_GRID)
def test_relations_hold(text):
    spec = parse_spec(text)
    for rid in irreps(spec):
        assert check_relations(rep_matrices(spec, rid)), rid


def test_printed_matrix_facts():
    for k in (2, 3):
        for s in range(3 ** (k - 1)):
            z = p_varsigma_matrices(k, s)["z"]
            cube = mat_pow(z, 3)
            scalar = root_of_unity(3**k, 3 * s)
            assert cube == tuple(tuple(v * scalar for v in row) for row in identity(3))
        for j in range(3**k):
            g = rep_matrices(PPrime(k), rho(j)).gens
            assert mat_pow(g["x"], 2) == mat_pow(g["y"], 2)


@pytest.mark.parametrize("text", TABLE_GRID)
def test_trace_route_equals_closed_form(text):
    spec = parse_spec(text)
    table = character_table(spec)
    for rid, row in zip(table.irreps, table.rows):
        assert character_of(spec, rid).values == row, rid


@pytest.mark.parametrize("text", ["D(3,1)", "D(4,2)", "P(2)", "D(3,1)xC(5)"])
def test_characters_constant_on_classes(text):
    # every element, not only the class representatives
    spec = parse_spec(text)
    table = character_table(spec)
    for rid, row in zip(table.irreps, table.rows):
        rep = rep_matrices(spec, rid)
        for c, value in zip(table.classes, row):
            for word in c.members:
                assert trace(rep.evaluate(word)) == value


@pytest.mark.parametrize("text", TABLE_GRID)
def test_table_invariants(text):
    spec = parse_spec(text)
    table = character_table(spec)
    assert len(table.irreps) == len(table.classes)
    assert row_orthonormal(table)
    assert column_orthogonal(table)
    assert sum(d * d for d in table.dims) == order(spec)


@pytest.mark.parametrize("text", ["D(3,1)", "D(4,1)", "P(2)"])
def test_numeric_orthogonality_oracle(text):
    spec = parse_spec(text)
    table = character_table(spec)
    X = np.array([[numeric(v) for v in row] for row in table.rows])
    w = np.array(table.sizes) / order(spec)
    gram = (X * w) @ X.conj().T
    assert np.allclose(gram, np.eye(len(X)))


def test_cyclic_table_entries():
    spec = CyclicNQ(8, 3)
    table = character_table(spec)
    for rid, row in zip(table.irreps, table.rows):
        for c, v in zip(table.classes, row):
            l = int(c.label.split("_")[1])
            assert v == root_of_unity(8, l * rid.idx[0])
    nat = natural_character(spec)
    for c, v in zip(table.classes, nat.values):
        l = int(c.label.split("_")[1])
        assert v == root_of_unity(8, l) + root_of_unity(8, 3 * l)


def test_dihedral_character_facts():
    spec = DihedralD(4, 1)
    for c, v in zip(conjugacy_classes(spec), natural_character(spec).values):
        if c.representative.word[0] % 2:
            assert v == 0
    assert natural_character(spec).dimension == 2
    for rid in irreps(spec):
        if rid.kind == "rho":
            x3 = class_of(spec, element(spec, (3, 0)))
            assert character_table(spec).character(rid).values[conjugacy_classes(spec).index(x3)] == 0


def test_pprime_character_facts():
    for k in (2, 3):
        spec = PPrime(k)
        table = character_table(spec)
        n3 = 3 ** (k - 1)
        for s in range(n3):
            phi = table.character(varsigma(s))
            for l in range(n3):
                c = class_of(spec, element(spec, (1, 0, 3 * l)))
                assert phi.values[conjugacy_classes(spec).index(c)] == -root_of_unity(n3, l * s)
        nat = natural_character(spec)
        assert nat.dimension == 2
        for c, v in zip(table.classes, nat.values):
            if c.size == 6:
                assert v == 0


@pytest.mark.parametrize("k, r", [(3, 1), (3, 2), (3, 3), (4, 1), (4, 2), (4, 3), (5, 1), (5, 2), (5, 3)])
def test_dihedral_norms(k, r):
    spec = DihedralD(k, r)
    for s in range(2 ** (k - 1)):
        for t in range(2 * r + 2):
            chi = d_rho_character(spec, t, s)
            want = 2 if t in (0, 2 * r + 1) else 1
            assert inner_product(spec, chi, chi) == want


@pytest.mark.parametrize("k", [2, 3])
def test_pprime_norms(k):
    spec = PPrime(k)
    table = character_table(spec)
    for rid in irreps(spec):
        chi = table.character(rid)
        assert inner_product(spec, chi, chi) == 1


@pytest.mark.parametrize("k, r", [(3, 1), (4, 1), (4, 2), (5, 3)])
def test_dihedral_isomorphism_identities(k, r):
    spec = DihedralD(k, r)
    h, n = 2 ** (k - 2), 2 * r + 1
    for t in range(n + 1):
        for s in range(2 ** (k - 1)):
            a = character_of_matrices(spec, d_rho_matrices(k, r, t, s))
            assert a == character_of_matrices(spec, d_rho_matrices(k, r, t, 2 * h + s))
            assert character_of_matrices(spec, d_rho_matrices(k, r, n - t, s)) == \
                character_of_matrices(spec, d_rho_matrices(k, r, t, h + s))


def test_pprime_varsigma_period():
    for k in (2, 3):
        spec = PPrime(k)
        n3 = 3 ** (k - 1)
        for s in range(n3):
            assert character_of_matrices(spec, p_varsigma_matrices(k, s)) == \
                character_of_matrices(spec, p_varsigma_matrices(k, n3 + s))


def test_reducible_dihedral_decompositions():
    for k, r in [(3, 1), (4, 2), (5, 1)]:
        spec = DihedralD(k, r)
        h = 2 ** (k - 2)
        for s in range(2 ** (k - 1)):
            d0 = decompose(spec, d_rho_character(spec, 0, s))
            want0 = {alpha(s % 2**k), alpha((2 * h + s) % 2**k)}
            assert {i for i, m in d0.items() if m} == want0 and sum(d0.values()) == 2
            dn = decompose(spec, d_rho_character(spec, 2 * r + 1, s))
            wantn = {alpha((h + s) % 2**k), alpha((3 * h + s) % 2**k)}
            assert {i for i, m in dn.items() if m} == wantn
            assert canonicalize(spec, rho(0, s)) == sorted(want0, key=lambda i: i.sort_key())


def test_natural_times_varsigma():
    for k in (2, 3):
        spec = PPrime(k)
        n, n3 = 3**k, 3 ** (k - 1)
        table = character_table(spec)
        for s in range(n3):
            d = decompose(spec, natural_character(spec) * table.character(varsigma(s)))
            got = {i for i, m in d.items() if m}
            assert got == {rho((s + 1 + t * n3) % n) for t in range(3)}
            assert all(m in (0, 1) for m in d.values())


@pytest.mark.parametrize("text", ["D(3,1)", "P(2)", "C(7,3)", "D(3,1)xC(5)"])
def test_decompose_irreducibles_gives_unit_vectors(text):
    spec = parse_spec(text)
    table = character_table(spec)
    assert np.array_equal(decompose_many(spec, table.characters()), np.eye(len(table.irreps), dtype=int))


@given(st.lists(st.integers(0, 3), min_size=21, max_size=21))
def test_decompose_recovers_random_combinations(mult):
    spec = PPrime(2)
    table = character_table(spec)
    chi = trivial_character(spec).scale(0)
    for m, c in zip(mult, table.characters()):
        chi = chi + c.scale(m)
    d = decompose(spec, chi)
    assert [d[i] for i in table.irreps] == mult
    assert sum(m * dim for m, dim in zip(mult, table.dims)) == chi.dimension


def test_decompose_rejects_non_characters():
    spec = DihedralD(3, 1)
    table = character_table(spec)
    with pytest.raises(NotACharacter):
        decompose(spec, table.characters()[0].scale(-1))
    with pytest.raises(NotACharacter):
        decompose(spec, table.characters()[1].scale(Fraction(1, 2)))
    with pytest.raises(NotACharacter):
        decompose(spec, table.characters()[2].scale(root_of_unity(3)))


def test_faithfulness():
    spec = CyclicNQ(4, 1)
    assert not is_faithful(spec, character_table(spec).character(beta(2)))
    assert not is_faithful(spec, trivial_character(spec))
    for text in TABLE_GRID:
        s = parse_spec(text)
        assert is_faithful(s, natural_character(s))


def test_invalid_ids():
    with pytest.raises(InvalidId):
        rep_matrices(DihedralD(3, 1), rho(0, 0))
    with pytest.raises(InvalidId):
        closed_form_character(PPrime(2), varsigma(3))
    with pytest.raises(InvalidId):
        canonicalize(parse_spec("D(3,1)xC(5)"), alpha(0))


def test_canonicalize_idempotent():
    for text in ["D(3,1)", "D(4,2)", "D(5,3)", "P(2)"]:
        spec = parse_spec(text)
        for rid in irreps(spec):
            assert canonicalize(spec, rid) == [rid]
    spec = DihedralD(4, 1)
    for t in range(-8, 9):
        for s in range(-10, 10):
            out = canonicalize(spec, rho(t, s))
            for rid in out:
                assert canonicalize(spec, rid) == [rid]
                assert rid in irreps(spec)


def test_product_pair_labels():
    spec = parse_spec("D(3,1)xC(5)")
    # s = 3 lies in the upper half of 0..3, so (t, s) -> (2r+1-t, s-2)
    assert canonicalize(spec, pair(rho(1, 3), 7)) == [pair(rho(2, 1), 2)]


def test_exports_are_deterministic():
    spec = DihedralD(3, 1)
    csv_text = table_csv(character_table(spec))
    lines = csv_text.strip().splitlines()
    assert len(lines) == 13
    assert lines[0].startswith("irrep,1_0 [1]")
    assert table_csv(character_table(spec)) == csv_text
    assert "alpha_0" in table_text(character_table(spec))
