"""Irreducible representations, characters and character tables."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

from . import classfun
from .cyclotomic import Cyclotomic, root_of_unity
from .errors import InvalidId, NotACharacter, Unsupported
from .groups import (
    BinaryDihedral,
    BinaryIcosahedral,
    BinaryOctahedral,
    BinaryTetrahedral,
    ConjugacyClass,
    CyclicNQ,
    DihedralD,
    GroupSpec,
    PPrime,
    ProductWithCyclic,
    conjugacy_classes,
    order,
)
from .matrix import Matrix, as_matrix, identity, is_identity, mat_mul, mat_pow, mat_scale, trace

ZERO = Cyclotomic.rational(0)

_KIND_ORDER = {"beta": 0, "alpha": 1, "rho": 2, "varsigma": 3, "node": 4, "pair": 5}


@dataclass(frozen=True)
class IrrepId:
    """Label of an irreducible representation.

    kind is one of beta, alpha, rho, varsigma, node, pair; idx holds the
    indices ((t, s) for the dihedral-type rho, (inner, j) for pairs).
    """

    kind: str
    idx: tuple

    def __str__(self):
        if self.kind == "pair":
            inner, j = self.idx
            return f"{inner}*beta_{j}"
        if len(self.idx) == 1:
            return f"{self.kind}_{self.idx[0]}"
        return f"{self.kind}_{{{','.join(map(str, self.idx))}}}"

    def sort_key(self) -> tuple:
        if self.kind == "pair":
            inner, j = self.idx
            return (_KIND_ORDER["pair"], inner.sort_key(), j)
        return (_KIND_ORDER[self.kind],) + self.idx


def beta(j: int) -> IrrepId:
    return IrrepId("beta", (j,))


def alpha(j: int) -> IrrepId:
    return IrrepId("alpha", (j,))


def rho(*idx: int) -> IrrepId:
    return IrrepId("rho", tuple(idx))


def varsigma(s: int) -> IrrepId:
    return IrrepId("varsigma", (s,))


def node(i: int) -> IrrepId:
    return IrrepId("node", (i,))


def pair(inner: IrrepId, j: int) -> IrrepId:
    return IrrepId("pair", (inner, j))


def parse_irrep(text: str) -> IrrepId:
    """Inverse of str(IrrepId)."""
    if "*beta_" in text:
        inner, _, j = text.rpartition("*beta_")
        return pair(parse_irrep(inner), int(j))
    kind, _, rest = text.partition("_")
    if kind not in _KIND_ORDER or not rest:
        raise InvalidId(f"cannot parse irrep label {text!r}")
    if rest.startswith("{"):
        return IrrepId(kind, tuple(int(t) for t in rest.strip("{}").split(",")))
    return IrrepId(kind, (int(rest),))


# --------------------------------------------------------- canonical ids

def canonicalize(spec: GroupSpec, rid: IrrepId) -> list[IrrepId]:
    """Bring an index into range, splitting reducible dihedral indices.

    Returns one id, or the two one-dimensional summands when the index names
    a reducible representation (t = 0 or t = 2r+1 for the dihedral family).
    """
    if isinstance(spec, ProductWithCyclic):
        if rid.kind != "pair":
            raise InvalidId(f"{rid} is not a product label")
        inner, j = rid.idx
        return [pair(x, j % spec.m) for x in canonicalize(spec.inner, inner)]
    if isinstance(spec, CyclicNQ) and rid.kind == "beta":
        return [beta(rid.idx[0] % spec.n)]
    if isinstance(spec, DihedralD):
        k, r = spec.k, spec.r
        if rid.kind == "alpha":
            return [alpha(rid.idx[0] % 2**k)]
        if rid.kind == "rho" and len(rid.idx) == 2:
            return _canonical_rho(k, r, *rid.idx)
    if isinstance(spec, PPrime):
        k = spec.k
        if rid.kind == "alpha":
            return [alpha(rid.idx[0] % 3**k)]
        if rid.kind == "rho" and len(rid.idx) == 1:
            return [rho(rid.idx[0] % 3**k)]
        if rid.kind == "varsigma":
            return [varsigma(rid.idx[0] % 3 ** (k - 1))]
    raise InvalidId(f"{rid} is not a label for {spec}")


def _canonical_rho(k: int, r: int, t: int, s: int) -> list[IrrepId]:
    n = 2 * r + 1
    # the character of rho_{t,s} is even in t and has period 2n in t
    t %= 2 * n
    if t > n:
        t = 2 * n - t
    if t == 0:
        return sorted([alpha(s % 2**k), alpha((2 ** (k - 1) + s) % 2**k)], key=IrrepId.sort_key)
    if t == n:
        h = 2 ** (k - 2)
        return sorted([alpha((h + s) % 2**k), alpha((2 ** (k - 1) + h + s) % 2**k)], key=IrrepId.sort_key)
    s %= 2 ** (k - 1)
    if s >= 2 ** (k - 2):
        t, s = n - t, s - 2 ** (k - 2)
    return [rho(t, s)]


# ------------------------------------------------------------- irreps

def _require_table(spec: GroupSpec) -> None:
    base = spec.inner if isinstance(spec, ProductWithCyclic) else spec
    if isinstance(base, (BinaryDihedral, BinaryTetrahedral, BinaryOctahedral, BinaryIcosahedral)):
        raise Unsupported(f"no character table for {spec}; its McKay quiver is Dynkin data")


def irreps(spec: GroupSpec) -> list[IrrepId]:
    _require_table(spec)
    return list(_irreps(spec))


@lru_cache(maxsize=None)
def _irreps(spec: GroupSpec) -> tuple[IrrepId, ...]:
    if isinstance(spec, CyclicNQ):
        out = [beta(j) for j in range(spec.n)]
    elif isinstance(spec, DihedralD):
        k, r = spec.k, spec.r
        out = [alpha(j) for j in range(2**k)]
        out += [rho(t, s) for t in range(1, 2 * r + 1) for s in range(2 ** (k - 2))]
    elif isinstance(spec, PPrime):
        k = spec.k
        out = [alpha(j) for j in range(3**k)] + [rho(j) for j in range(3**k)]
        out += [varsigma(s) for s in range(3 ** (k - 1))]
    elif isinstance(spec, ProductWithCyclic):
        out = [pair(i, j) for i in _irreps(spec.inner) for j in range(spec.m)]
    else:
        raise Unsupported(f"no character table for {spec}")
    return tuple(sorted(out, key=lambda x: (irrep_dim(spec, x), x.sort_key())))


def irrep_dim(spec: GroupSpec, rid: IrrepId) -> int:
    if rid.kind in ("alpha", "beta"):
        return 1
    if rid.kind == "rho":
        return 2
    if rid.kind == "varsigma":
        return 3
    if rid.kind == "pair":
        return irrep_dim(spec.inner, rid.idx[0])
    raise InvalidId(f"{rid} has no known dimension for {spec}")


def _check_id(spec: GroupSpec, rid: IrrepId) -> None:
    _require_table(spec)
    if rid not in set(_irreps(spec)):
        raise InvalidId(f"{rid} is not an irreducible of {spec}")


# ------------------------------------------------------ representations

@dataclass(frozen=True)
class Representation:
    spec: GroupSpec
    dim: int
    gens: dict = field(hash=False, compare=False)
    label: str = ""

    def evaluate(self, word: tuple) -> Matrix:
        return evaluate_word(self.spec, self.gens, word)


def evaluate_word(spec: GroupSpec, gens: dict, word: tuple) -> Matrix:
    """Image of a normal-form word given generator images."""
    if isinstance(spec, CyclicNQ):
        return mat_pow(gens["g"], word[0])
    if isinstance(spec, DihedralD):
        return mat_mul(mat_pow(gens["x"], word[0]), mat_pow(gens["y"], word[1]))
    if isinstance(spec, PPrime):
        p, q, r = word
        return mat_mul(mat_mul(mat_pow(gens["x"], p), mat_pow(gens["y"], q)), mat_pow(gens["z"], r))
    if isinstance(spec, ProductWithCyclic):
        inner_word, j = word
        return mat_mul(evaluate_word(spec.inner, gens, inner_word), mat_pow(gens["c_m"], j))
    raise Unsupported(f"no word evaluation for {spec}")


def d_rho_matrices(k: int, r: int, t: int, s: int) -> dict[str, Matrix]:
    """rho_{t,s} for any integers t, s (reducible when t = 0 or 2r+1)."""
    zs = root_of_unity(2**k, s)
    zt = root_of_unity(2 * r + 1, t)
    sign = 1 if t % 2 == 0 else -1
    return {
        "x": as_matrix([[0, zs], [zs * sign, 0]]),
        "y": as_matrix([[zt, 0], [0, zt.conjugate()]]),
    }


def p_rho_matrices(k: int, j: int) -> dict[str, Matrix]:
    w = root_of_unity(3)
    w2 = w * w
    z = root_of_unity(3**k, j)
    return {
        "x": as_matrix([[0, w2], [-w, 0]]),
        "y": as_matrix([[w2, 1], [w2, -w2]]),
        "z": mat_scale(as_matrix([[0, w], [-w2, -1]]), z),
    }


def p_varsigma_matrices(k: int, s: int) -> dict[str, Matrix]:
    z = root_of_unity(3**k, s)
    return {
        "x": as_matrix([[-1, -1, -1], [0, 0, 1], [0, 1, 0]]),
        "y": as_matrix([[0, 0, 1], [-1, -1, -1], [1, 0, 0]]),
        "z": mat_scale(as_matrix([[-1, -1, -1], [0, 1, 0], [1, 0, 0]]), z),
    }


def _gens_for(spec: GroupSpec, rid: IrrepId) -> dict[str, Matrix]:
    if isinstance(spec, CyclicNQ):
        return {"g": as_matrix([[root_of_unity(spec.n, rid.idx[0])]])}
    if isinstance(spec, DihedralD):
        if rid.kind == "alpha":
            return {"x": as_matrix([[root_of_unity(2**spec.k, rid.idx[0])]]), "y": as_matrix([[1]])}
        return d_rho_matrices(spec.k, spec.r, *rid.idx)
    if isinstance(spec, PPrime):
        if rid.kind == "alpha":
            one = as_matrix([[1]])
            return {"x": one, "y": one, "z": as_matrix([[root_of_unity(3**spec.k, rid.idx[0])]])}
        if rid.kind == "rho":
            return p_rho_matrices(spec.k, rid.idx[0])
        return p_varsigma_matrices(spec.k, rid.idx[0])
    if isinstance(spec, ProductWithCyclic):
        inner, j = rid.idx
        gens = dict(_gens_for(spec.inner, inner))
        d = irrep_dim(spec.inner, inner)
        gens["c_m"] = mat_scale(identity(d), root_of_unity(spec.m, j))
        return gens
    raise Unsupported(f"no representation matrices for {spec}")


def rep_matrices(spec: GroupSpec, rid: IrrepId) -> Representation:
    _check_id(spec, rid)
    return Representation(spec, irrep_dim(spec, rid), _gens_for(spec, rid), str(rid))


def check_relations(rep: Representation) -> bool:
    """Do the generator images satisfy the defining relations?"""
    spec, g = rep.spec, rep.gens
    if isinstance(spec, ProductWithCyclic):
        inner = Representation(spec.inner, rep.dim, {k: v for k, v in g.items() if k != "c_m"})
        c = g["c_m"]
        central = all(mat_mul(c, v) == mat_mul(v, c) for k, v in g.items() if k != "c_m")
        return check_relations(inner) and central and is_identity(mat_pow(c, spec.m))
    if isinstance(spec, CyclicNQ):
        return is_identity(mat_pow(g["g"], spec.n))
    if isinstance(spec, DihedralD):
        x, y = g["x"], g["y"]
        n = 2 * spec.r + 1
        return (is_identity(mat_pow(x, 2**spec.k)) and is_identity(mat_pow(y, n))
                and mat_mul(x, y) == mat_mul(mat_pow(y, n - 1), x))
    if isinstance(spec, PPrime):
        x, y, z = g["x"], g["y"], g["z"]
        xy = mat_mul(x, y)
        x2 = mat_mul(x, x)
        return (x2 == mat_mul(xy, xy) and x2 == mat_mul(y, y)
                and mat_mul(z, x) == mat_mul(y, z)
                and mat_mul(z, y) == mat_mul(xy, z)
                and is_identity(mat_pow(z, 3**spec.k)))
    raise Unsupported(f"no presentation for {spec}")


# ------------------------------------------------------------ characters

@dataclass(frozen=True)
class Character:
    spec: GroupSpec
    values: tuple
    label: str = field(default="", compare=False)

    @property
    def dimension(self) -> Fraction:
        return self.values[identity_class_index(self.spec)].to_rational()

    def __add__(self, other: "Character") -> "Character":
        _same(self, other)
        return Character(self.spec, tuple(a + b for a, b in zip(self.values, other.values)),
                         f"{self.label}+{other.label}")

    def __mul__(self, other: "Character") -> "Character":
        _same(self, other)
        return Character(self.spec, tuple(a * b for a, b in zip(self.values, other.values)),
                         f"{self.label}*{other.label}")

    def scale(self, c) -> "Character":
        return Character(self.spec, tuple(v * c for v in self.values), self.label)

    def conjugate(self) -> "Character":
        return Character(self.spec, tuple(v.conjugate() for v in self.values), self.label)


def _same(a: Character, b: Character) -> None:
    from .errors import SpecMismatch

    if a.spec != b.spec:
        raise SpecMismatch(f"characters of {a.spec} and {b.spec}")


@lru_cache(maxsize=None)
def identity_class_index(spec: GroupSpec) -> int:
    for i, c in enumerate(conjugacy_classes(spec)):
        if c.representative.word == _identity_word(spec):
            return i
    raise AssertionError("identity class not found")


def _identity_word(spec: GroupSpec) -> tuple:
    if isinstance(spec, ProductWithCyclic):
        return (_identity_word(spec.inner), 0)
    if isinstance(spec, CyclicNQ):
        return (0,)
    if isinstance(spec, (DihedralD, BinaryDihedral)):
        return (0, 0)
    if isinstance(spec, PPrime):
        return (0, 0, 0)
    return (0,)


def character_of(spec: GroupSpec, rid: IrrepId) -> Character:
    """Character by the trace route: trace of the matrices at class representatives."""
    rep = rep_matrices(spec, rid)
    vals = tuple(trace(rep.evaluate(c.representative.word)) for c in conjugacy_classes(spec))
    return Character(spec, vals, str(rid))


def character_of_matrices(spec: GroupSpec, gens: dict, label: str = "") -> Character:
    vals = tuple(trace(evaluate_word(spec, gens, c.representative.word)) for c in conjugacy_classes(spec))
    return Character(spec, vals, label)


# closed-form entries -------------------------------------------------

def _cyclic_value(n: int, j: int, tag: tuple) -> Cyclotomic:
    return root_of_unity(n, tag[1] * j)


def d_alpha_value(k: int, j: int, tag: tuple) -> Cyclotomic:
    kind, l = tag[0], tag[1]
    if kind == "odd":
        return root_of_unity(2**k, (2 * l + 1) * j)
    return root_of_unity(2**k, 2 * l * j)


def d_rho_value(k: int, r: int, t: int, s: int, tag: tuple) -> Cyclotomic:
    kind, l = tag[0], tag[1]
    if kind == "odd":
        return ZERO
    sign = -1 if (t * l) % 2 else 1
    base = root_of_unity(2**k, 2 * l * s) * sign
    if kind == "1":
        return base * 2
    q = tag[2]
    n = 2 * r + 1
    return base * (root_of_unity(n, t * q) + root_of_unity(n, -t * q))


def p_value(k: int, rid: IrrepId, tag: tuple) -> Cyclotomic:
    N = 3**k
    kind, l = tag
    e = {"1": 3 * l, "1+": 3 * l, "4a": 3 * l + 1, "4b": 3 * l + 2,
         "4c": 3 * l + 1, "4d": 3 * l + 2, "6": 3 * l}[kind]
    j = rid.idx[0]
    if rid.kind == "alpha":
        return root_of_unity(N, e * j)
    if rid.kind == "rho":
        coef = {"1": 2, "1+": -2, "4a": -1, "4b": -1, "4c": 1, "4d": 1, "6": 0}[kind]
        return root_of_unity(N, e * j) * coef
    coef = {"1": 3, "1+": 3, "4a": 0, "4b": 0, "4c": 0, "4d": 0, "6": -1}[kind]
    return root_of_unity(N, e * j) * coef


def closed_form_value(spec: GroupSpec, rid: IrrepId, cls: ConjugacyClass) -> Cyclotomic:
    tag = cls.tag
    if isinstance(spec, CyclicNQ):
        return _cyclic_value(spec.n, rid.idx[0], tag)
    if isinstance(spec, DihedralD):
        if rid.kind == "alpha":
            return d_alpha_value(spec.k, rid.idx[0], tag)
        return d_rho_value(spec.k, spec.r, *rid.idx, tag)
    if isinstance(spec, PPrime):
        return p_value(spec.k, rid, tag)
    if isinstance(spec, ProductWithCyclic):
        inner_id, j = rid.idx
        _, inner_tag, jj = tag
        inner_cls = _class_by_tag(spec.inner, inner_tag)
        return closed_form_value(spec.inner, inner_id, inner_cls) * root_of_unity(spec.m, j * jj)
    raise Unsupported(f"no closed form for {spec}")


@lru_cache(maxsize=None)
def _tag_index(spec: GroupSpec) -> dict:
    return {c.tag: c for c in conjugacy_classes(spec)}


def _class_by_tag(spec: GroupSpec, tag: tuple) -> ConjugacyClass:
    return _tag_index(spec)[tag]


def closed_form_character(spec: GroupSpec, rid: IrrepId) -> Character:
    _check_id(spec, rid)
    vals = tuple(closed_form_value(spec, rid, c) for c in conjugacy_classes(spec))
    return Character(spec, vals, str(rid))


def d_rho_character(spec: DihedralD, t: int, s: int) -> Character:
    """Character of rho_{t,s} for arbitrary t, s (reducible ones included)."""
    vals = tuple(d_rho_value(spec.k, spec.r, t, s, c.tag) for c in conjugacy_classes(spec))
    return Character(spec, vals, f"rho_{{{t},{s}}}")


# ---------------------------------------------------------------- tables

@dataclass(frozen=True)
class CharacterTable:
    spec: GroupSpec
    classes: tuple
    irreps: tuple
    rows: tuple  # rows[i][c] = value of irreps[i] on classes[c]

    def character(self, rid: IrrepId) -> Character:
        i = self.index(rid)
        return Character(self.spec, self.rows[i], str(rid))

    def characters(self) -> list[Character]:
        return [Character(self.spec, row, str(rid)) for rid, row in zip(self.irreps, self.rows)]

    def index(self, rid: IrrepId) -> int:
        try:
            return self.irreps.index(rid)
        except ValueError:
            raise InvalidId(f"{rid} is not an irreducible of {self.spec}") from None

    @property
    def dims(self) -> list[int]:
        e = identity_class_index(self.spec)
        return [int(row[e].to_rational()) for row in self.rows]

    @property
    def sizes(self) -> list[int]:
        return [c.size for c in self.classes]


@lru_cache(maxsize=None)
def _table(spec: GroupSpec) -> CharacterTable:
    classes = tuple(conjugacy_classes(spec))
    ids = _irreps(spec)
    if isinstance(spec, ProductWithCyclic):
        inner = _table(spec.inner)
        m = spec.m
        zs = [root_of_unity(m, e) for e in range(m)]
        inner_pos = {c.tag: i for i, c in enumerate(inner.classes)}
        rows = []
        for rid in ids:
            inner_id, j = rid.idx
            irow = inner.rows[inner.index(inner_id)]
            row = []
            for c in classes:
                _, itag, jj = c.tag
                row.append(irow[inner_pos[itag]] * zs[(j * jj) % m])
            rows.append(tuple(row))
    else:
        rows = [tuple(closed_form_value(spec, rid, c) for c in classes) for rid in ids]
    return CharacterTable(spec, classes, ids, tuple(rows))


def character_table(spec: GroupSpec) -> CharacterTable:
    _require_table(spec)
    return _table(spec)


def natural_character(spec: GroupSpec) -> Character:
    if isinstance(spec, CyclicNQ):
        t = character_table(spec)
        return Character(spec, tuple(a + b for a, b in zip(t.rows[t.index(beta(1))], t.rows[t.index(beta(spec.q))])),
                         "nat")
    if isinstance(spec, DihedralD):
        if spec.k == 2:
            vals = tuple(d_rho_value(2, spec.r, 1, 0, c.tag) for c in conjugacy_classes(spec))
            return Character(spec, vals, "nat")
        return Character(spec, character_table(spec).character(rho(1, 1)).values, "nat")
    if isinstance(spec, PPrime):
        return Character(spec, character_table(spec).character(rho(1)).values, "nat")
    if isinstance(spec, ProductWithCyclic):
        inner_nat = natural_character(spec.inner)
        inner_pos = {c.tag: i for i, c in enumerate(conjugacy_classes(spec.inner))}
        vals = []
        for c in conjugacy_classes(spec):
            _, itag, jj = c.tag
            vals.append(inner_nat.values[inner_pos[itag]] * root_of_unity(spec.m, jj))
        return Character(spec, tuple(vals), "nat")
    raise Unsupported(f"no natural character table entry for {spec}")


def trivial_character(spec: GroupSpec) -> Character:
    return Character(spec, tuple(Cyclotomic.rational(1) for _ in conjugacy_classes(spec)), "trivial")


def inner_product(spec: GroupSpec, a: Character, b: Character) -> Fraction:
    _same(a, b)
    acc = ZERO
    for c, x, y in zip(conjugacy_classes(spec), a.values, b.values):
        if x.terms and y.terms:
            acc = acc + x * y.conjugate() * c.size
    return acc.to_rational() / order(spec)


def is_faithful(spec: GroupSpec, chi: Character) -> bool:
    e = identity_class_index(spec)
    d = chi.values[e]
    return all(i == e or v != d for i, v in enumerate(chi.values))


# ---------------------------------------------------------- bulk engine

def _pack_rows(rows: Sequence[Sequence[Cyclotomic]], N: Optional[int] = None):
    if N is None:
        N = classfun.common_conductor(v for row in rows for v in row)
    arr, den = classfun.pack(rows, N)
    return arr, den, N


def decompose_many(spec: GroupSpec, chars: Sequence[Character]) -> np.ndarray:
    """Multiplicity matrix m[a, i] with chars[a] = sum_i m[a, i] chi_i, verified exactly."""
    table = character_table(spec)
    all_rows = list(table.rows) + [c.values for c in chars]
    arr, den, N = _pack_rows(all_rows)
    n = len(table.rows)
    X, Y = arr[:n], arr[n:]
    if den != 1:
        raise NotACharacter("class function has non-integral values")
    sizes = table.sizes
    phi = arr.shape[-1]
    scale = order(spec) * phi
    traces = classfun.trace_pairing(Y, X, sizes, N)
    if np.any(traces % scale):
        raise NotACharacter("a multiplicity is not an integer")
    mult = traces // scale
    if np.any(mult < 0):
        raise NotACharacter("a multiplicity is negative")
    # the traces only determine rational multiplicities; check the sum exactly
    recon = classfun._matmul(mult, X.reshape(n, -1))
    if not np.array_equal(recon, Y.reshape(len(chars), -1)):
        raise NotACharacter("not an integral combination of irreducible characters")
    return mult


def decompose(spec: GroupSpec, chi: Character) -> dict[IrrepId, int]:
    mult = decompose_many(spec, [chi])[0]
    table = character_table(spec)
    return {rid: int(m) for rid, m in zip(table.irreps, mult)}


def gram_matrix(spec: GroupSpec, a: Sequence[Character], b: Sequence[Character]) -> list[list[Fraction]]:
    """Exact inner products <a_i, b_j>; raises NotRational on an irrational entry."""
    arr, den, N = _pack_rows([c.values for c in a] + [c.values for c in b])
    A, B = arr[: len(a)], arr[len(a):]
    G = classfun.gram(A, B, [c.size for c in conjugacy_classes(spec)], N)
    from .errors import NotRational

    if np.any(G[:, :, 1:]):
        raise NotRational("an inner product of characters is not rational")
    g = order(spec) * den * den
    return [[Fraction(int(G[i, j, 0]), g) for j in range(G.shape[1])] for i in range(G.shape[0])]


def row_orthonormal(table: CharacterTable) -> bool:
    chars = table.characters()
    G = gram_matrix(table.spec, chars, chars)
    n = len(chars)
    return all(G[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))


def column_orthogonal(table: CharacterTable) -> bool:
    """sum_i chi_i(g) conj(chi_i(h)) = |C(g)| [g ~ h], checked exactly."""
    cols = [tuple(row[c] for row in table.rows) for c in range(len(table.classes))]
    arr, den, N = _pack_rows(cols)
    G = classfun.gram(arr, arr, [1] * len(table.rows), N)
    g = order(table.spec)
    for a, ca in enumerate(table.classes):
        for b in range(len(table.classes)):
            want = g // ca.size if a == b else 0
            if G[a, b, 0] != want * den * den or np.any(G[a, b, 1:]):
                return False
    return True


# -------------------------------------------------------------- exports

def table_csv(table: CharacterTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["irrep"] + [f"{c.label} [{c.size}]" for c in table.classes])
    for rid, row in zip(table.irreps, table.rows):
        w.writerow([str(rid)] + [str(v) for v in row])
    return buf.getvalue()


def table_text(table: CharacterTable) -> str:
    header = ["irrep"] + [f"{c.label} [{c.size}]" for c in table.classes]
    body = [[str(rid)] + [str(v) for v in row] for rid, row in zip(table.irreps, table.rows)]
    widths = [max(len(r[i]) for r in [header] + body) for i in range(len(header))]
    lines = ["  ".join(cell.ljust(wd) for cell, wd in zip(r, widths)).rstrip() for r in [header] + body]
    return "\n".join(lines) + "\n"
