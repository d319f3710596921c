"""Small finite subgroups of GL(2, C): catalog, elements and conjugacy classes.

Elements are realized as exact 2x2 matrices.  Products are computed by matrix
multiplication followed by a lookup in a matrix -> word table that is built
once per group.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Iterator, Optional, Union

from .cyclotomic import Cyclotomic, root_of_unity
from .errors import InvalidSpec, OrderCapExceeded, SpecMismatch
from .matrix import (
    Matrix,
    as_matrix,
    conj_transpose,
    embed_matrix,
    identity,
    is_identity,
    mat_add,
    mat_mul,
    mat_pow,
    mat_scale,
    matrix_key,
    trace,
)

DEFAULT_CAP = 5000


# ---------------------------------------------------------------- specs

class GroupSpec:
    """Base class of the catalog families."""

    def __str__(self) -> str:  # pragma: no cover - overridden
        raise NotImplementedError


@dataclass(frozen=True)
class CyclicNQ(GroupSpec):
    n: int
    q: int

    def __post_init__(self):
        if self.n <= 1:
            raise InvalidSpec(f"C(n,q) requires n > 1, got n={self.n}")
        if not 0 < self.q < self.n:
            raise InvalidSpec(f"C(n,q) requires 0 < q < n, got q={self.q}, n={self.n}")
        if gcd(self.n, self.q) != 1:
            raise InvalidSpec(f"C(n,q) requires gcd(n,q) = 1, got gcd({self.n},{self.q}) = {gcd(self.n, self.q)}")

    def __str__(self):
        return f"C({self.n},{self.q})"


@dataclass(frozen=True)
class BinaryDihedral(GroupSpec):
    q: int

    def __post_init__(self):
        if self.q < 2:
            raise InvalidSpec(f"BD(q) requires q >= 2, got q={self.q}")

    def __str__(self):
        return f"BD({self.q})"


@dataclass(frozen=True)
class BinaryTetrahedral(GroupSpec):
    def __str__(self):
        return "BT"


@dataclass(frozen=True)
class BinaryOctahedral(GroupSpec):
    def __str__(self):
        return "BO"


@dataclass(frozen=True)
class BinaryIcosahedral(GroupSpec):
    def __str__(self):
        return "BI"


@dataclass(frozen=True)
class DihedralD(GroupSpec):
    """<x, y | x^(2^k) = y^(2r+1) = 1, x y x^-1 = y^-1>."""

    k: int
    r: int
    checked: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        if self.checked and self.k <= 2:
            raise InvalidSpec(f"D(k,r) requires k > 2, got k={self.k} (k=2 is BD(2r+1))")
        if self.k < 2:
            raise InvalidSpec(f"D(k,r) requires k >= 2, got k={self.k}")
        if self.r < 1:
            raise InvalidSpec(f"D(k,r) requires r >= 1, got r={self.r}")

    @classmethod
    def unchecked(cls, k: int, r: int) -> "DihedralD":
        """Bypass the k > 2 constraint (used to compare k = 2 with BD(2r+1))."""
        return cls(k, r, checked=False)

    def __str__(self):
        return f"D({self.k},{self.r})"


@dataclass(frozen=True)
class PPrime(GroupSpec):
    """<x, y, z | x^2 = (xy)^2 = y^2, z x z^-1 = y, z y z^-1 = xy, z^(3^k) = 1>."""

    k: int

    def __post_init__(self):
        if self.k < 2:
            raise InvalidSpec(f"P(k) requires k >= 2, got k={self.k}")

    def __str__(self):
        return f"P({self.k})"


@dataclass(frozen=True)
class ProductWithCyclic(GroupSpec):
    inner: GroupSpec
    m: int

    def __post_init__(self):
        if isinstance(self.inner, (CyclicNQ, ProductWithCyclic)):
            raise InvalidSpec("xC(m) requires an inner group that is not cyclic or already a product")
        if self.m < 1:
            raise InvalidSpec(f"xC(m) requires m >= 1, got m={self.m}")
        g = gcd(self.m, order(self.inner))
        if g != 1:
            raise InvalidSpec(
                f"xC(m) requires gcd(m, |inner|) = 1, got gcd({self.m},{order(self.inner)}) = {g}"
            )

    def __str__(self):
        return f"{self.inner}xC({self.m})"


Spec = Union[CyclicNQ, BinaryDihedral, BinaryTetrahedral, BinaryOctahedral,
             BinaryIcosahedral, DihedralD, PPrime, ProductWithCyclic]

_SPEC_RE = re.compile(
    r"^\s*(?:(?P<fam>C|BD|D|P)\((?P<args>[^)]*)\)|(?P<poly>BT|BO|BI))"
    r"(?:\s*[xX]\s*C\((?P<m>[^)]*)\))?\s*$"
)


def parse_spec(text: str) -> Spec:
    """Parse 'C(n,q)', 'BD(q)', 'BT', 'BO', 'BI', 'D(k,r)', 'P(k)' with optional 'xC(m)'."""
    m = _SPEC_RE.match(text)
    if not m:
        raise InvalidSpec(f"cannot parse group spec {text!r}")
    try:
        args = [int(a) for a in m.group("args").split(",")] if m.group("args") is not None else []
        mm = int(m.group("m")) if m.group("m") is not None else None
    except ValueError:
        raise InvalidSpec(f"non-integer parameter in {text!r}") from None
    fam = m.group("fam") or m.group("poly")
    arity = {"C": 2, "BD": 1, "D": 2, "P": 1, "BT": 0, "BO": 0, "BI": 0}[fam]
    if len(args) != arity:
        raise InvalidSpec(f"{fam} takes {arity} parameter(s), got {len(args)} in {text!r}")
    if fam == "C":
        spec: Spec = CyclicNQ(*args)
    elif fam == "BD":
        spec = BinaryDihedral(*args)
    elif fam == "D":
        spec = DihedralD(*args)
    elif fam == "P":
        spec = PPrime(*args)
    else:
        spec = {"BT": BinaryTetrahedral, "BO": BinaryOctahedral, "BI": BinaryIcosahedral}[fam]()
    if mm is not None:
        spec = ProductWithCyclic(spec, mm)
    return spec


def order(spec: GroupSpec) -> int:
    if isinstance(spec, CyclicNQ):
        return spec.n
    if isinstance(spec, BinaryDihedral):
        return 4 * spec.q
    if isinstance(spec, BinaryTetrahedral):
        return 24
    if isinstance(spec, BinaryOctahedral):
        return 48
    if isinstance(spec, BinaryIcosahedral):
        return 120
    if isinstance(spec, DihedralD):
        return 2**spec.k * (2 * spec.r + 1)
    if isinstance(spec, PPrime):
        return 8 * 3**spec.k
    if isinstance(spec, ProductWithCyclic):
        return order(spec.inner) * spec.m
    raise InvalidSpec(f"unknown spec {spec!r}")


# ----------------------------------------------------------- realization

@dataclass(frozen=True, eq=False)
class GroupElement:
    spec: GroupSpec
    word: tuple
    matrix: Matrix = field(repr=False)

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.spec == other.spec and self.word == other.word

    def __hash__(self):
        return hash((self.spec, self.word))

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return multiply(self, other)


def _quat(a, b, c, d) -> Matrix:
    """a + b i + c j + d k as a matrix in SU(2)."""
    i = root_of_unity(4)
    return as_matrix([[a + b * i, c + d * i], [-c + d * i, a - b * i]])


def conductor(spec: GroupSpec) -> int:
    if isinstance(spec, CyclicNQ):
        return spec.n
    if isinstance(spec, BinaryDihedral):
        return 2 * spec.q
    if isinstance(spec, BinaryTetrahedral):
        return 4
    if isinstance(spec, BinaryOctahedral):
        return 8
    if isinstance(spec, BinaryIcosahedral):
        return 20
    if isinstance(spec, DihedralD):
        return 2**spec.k * (2 * spec.r + 1)
    if isinstance(spec, PPrime):
        return 4 * 3**spec.k
    if isinstance(spec, ProductWithCyclic):
        a, b = conductor(spec.inner), spec.m
        return a * b // gcd(a, b)
    raise InvalidSpec(f"unknown spec {spec!r}")


def generator_matrices(spec: GroupSpec) -> dict[str, Matrix]:
    """Images of the presentation generators under the natural representation."""
    if isinstance(spec, CyclicNQ):
        z = root_of_unity(spec.n)
        return {"g": as_matrix([[z, 0], [0, z ** spec.q]])}
    if isinstance(spec, DihedralD):
        # rho_{1,1}; for k = 2 the faithful choice is rho_{1,0}
        s = 0 if spec.k == 2 else 1
        zx = root_of_unity(2**spec.k, s)
        zy = root_of_unity(2 * spec.r + 1)
        return {
            "x": as_matrix([[0, zx], [-zx, 0]]),
            "y": as_matrix([[zy, 0], [0, zy.conjugate()]]),
        }
    if isinstance(spec, PPrime):
        half = Cyclotomic.rational(1) / 2
        omega = _quat(-half, -half, -half, -half)
        return {
            "x": _quat(0, 1, 0, 0),
            "y": _quat(0, 0, 1, 0),
            "z": mat_scale(omega, root_of_unity(3**spec.k)),
        }
    if isinstance(spec, BinaryDihedral):
        a = root_of_unity(2 * spec.q)
        return {"a": as_matrix([[a, 0], [0, a.conjugate()]]), "b": _quat(0, 0, 1, 0)}
    if isinstance(spec, (BinaryTetrahedral, BinaryOctahedral, BinaryIcosahedral)):
        half = Cyclotomic.rational(1) / 2
        gens = {
            "i": _quat(0, 1, 0, 0),
            "j": _quat(0, 0, 1, 0),
            "w": _quat(-half, -half, -half, -half),
        }
        if isinstance(spec, BinaryOctahedral):
            z8 = root_of_unity(8)
            gens["o"] = as_matrix([[z8, 0], [0, z8.conjugate()]])
        if isinstance(spec, BinaryIcosahedral):
            z5 = root_of_unity(5)
            inv_phi = z5 + z5.conjugate()
            phi = inv_phi + 1
            gens["c"] = _quat(phi / 2, inv_phi / 2, half, 0)
        return gens
    if isinstance(spec, ProductWithCyclic):
        gens = {name: m for name, m in generator_matrices(spec.inner).items()}
        z = root_of_unity(spec.m)
        gens["c_m"] = as_matrix([[z, 0], [0, z]])
        return gens
    raise InvalidSpec(f"unknown spec {spec!r}")


class Realization:
    """All elements of a group with the matrix -> index lookup table."""

    def __init__(self, spec: GroupSpec):
        self.spec = spec
        self.N = conductor(spec)
        self.gens = {k: embed_matrix(v, self.N) for k, v in generator_matrices(spec).items()}
        self.elements: list[GroupElement] = []
        self.index: dict[tuple, int] = {}
        self.word_index: dict[tuple, int] = {}
        for word, mat in self._enumerate():
            self._add(word, mat)
        if len(self.elements) != order(spec):
            raise AssertionError(f"{spec}: realized {len(self.elements)} elements, expected {order(spec)}")

    def _add(self, word, mat):
        key = matrix_key(mat)
        if key in self.index:
            raise AssertionError(f"{self.spec}: words {word} and {self.elements[self.index[key]].word} coincide")
        self.index[key] = len(self.elements)
        self.word_index[word] = len(self.elements)
        self.elements.append(GroupElement(self.spec, word, mat))

    def _enumerate(self) -> Iterator[tuple[tuple, Matrix]]:
        spec = self.spec
        g = self.gens
        if isinstance(spec, CyclicNQ):
            cur = identity(2)
            for j in range(spec.n):
                yield (j,), cur
                cur = mat_mul(cur, g["g"])
        elif isinstance(spec, DihedralD):
            xs = _powers(g["x"], 2**spec.k)
            ys = _powers(g["y"], 2 * spec.r + 1)
            for a, xa in enumerate(xs):
                for b, yb in enumerate(ys):
                    yield (a, b), mat_mul(xa, yb)
        elif isinstance(spec, PPrime):
            xs = _powers(g["x"], 4)
            ys = _powers(g["y"], 2)
            zs = _powers(g["z"], 3**spec.k)
            for p, xp in enumerate(xs):
                for q, yq in enumerate(ys):
                    xy = mat_mul(xp, yq)
                    for r, zr in enumerate(zs):
                        yield (p, q, r), mat_mul(xy, zr)
        elif isinstance(spec, BinaryDihedral):
            As = _powers(g["a"], 2 * spec.q)
            for i, ai in enumerate(As):
                yield (i, 0), ai
                yield (i, 1), mat_mul(ai, g["b"])
        elif isinstance(spec, (BinaryTetrahedral, BinaryOctahedral, BinaryIcosahedral)):
            yield from (((n,), m) for n, m in enumerate(_closure(list(g.values()), order(spec))))
        elif isinstance(spec, ProductWithCyclic):
            inner = realization(spec.inner)
            z = root_of_unity(spec.m)
            scalars = [z**j for j in range(spec.m)]
            for el in inner.elements:
                for j, s in enumerate(scalars):
                    yield (el.word, j), embed_matrix(mat_scale(el.matrix, s), self.N)
        else:
            raise InvalidSpec(f"unknown spec {spec!r}")

    def lookup(self, mat: Matrix) -> GroupElement:
        idx = self.index.get(matrix_key(embed_matrix(mat, self.N)))
        if idx is None:
            raise KeyError("matrix is not an element of the group")
        return self.elements[idx]

    def element(self, word: tuple) -> GroupElement:
        return self.elements[self.word_index[word]]


def _powers(m: Matrix, n: int) -> list[Matrix]:
    out = [identity(len(m))]
    for _ in range(n - 1):
        out.append(mat_mul(out[-1], m))
    return out


def _closure(gens: list[Matrix], limit: int) -> list[Matrix]:
    start = identity(len(gens[0]))
    seen = {matrix_key(start)}
    out = [start]
    i = 0
    while i < len(out):
        cur = out[i]
        i += 1
        for g in gens:
            nxt = mat_mul(cur, g)
            key = matrix_key(nxt)
            if key not in seen:
                seen.add(key)
                out.append(nxt)
                if len(out) > limit:
                    raise AssertionError("generators produce a group larger than expected")
    return out


@lru_cache(maxsize=64)
def realization(spec: GroupSpec) -> Realization:
    return Realization(spec)


def _check_cap(spec: GroupSpec, cap: int) -> None:
    n = order(spec)
    if n > cap:
        raise OrderCapExceeded(f"{spec} has order {n} > cap {cap}")


def elements(spec: GroupSpec, cap: int = DEFAULT_CAP) -> list[GroupElement]:
    _check_cap(spec, cap)
    return list(realization(spec).elements)


def element(spec: GroupSpec, word: tuple) -> GroupElement:
    return realization(spec).element(word)


def identity_element(spec: GroupSpec) -> GroupElement:
    return realization(spec).elements[0]


def generators(spec: GroupSpec) -> dict[str, GroupElement]:
    real = realization(spec)
    return {name: real.lookup(m) for name, m in real.gens.items()}


def multiply(a: GroupElement, b: GroupElement) -> GroupElement:
    if a.spec != b.spec:
        raise SpecMismatch(f"cannot multiply elements of {a.spec} and {b.spec}")
    return realization(a.spec).lookup(mat_mul(a.matrix, b.matrix))


def inverse(a: GroupElement) -> GroupElement:
    return realization(a.spec).lookup(conj_transpose(a.matrix))


def power(a: GroupElement, n: int) -> GroupElement:
    if n < 0:
        return power(inverse(a), -n)
    return realization(a.spec).lookup(mat_pow(a.matrix, n))


def element_order(a: GroupElement) -> int:
    cur = a.matrix
    n = 1
    while not is_identity(cur):
        cur = mat_mul(cur, a.matrix)
        n += 1
    return n


def is_unitary(m: Matrix) -> bool:
    return is_identity(mat_mul(conj_transpose(m), m))


def is_pseudo_reflection(m: Matrix) -> bool:
    """Non-identity matrix with eigenvalue 1."""
    if is_identity(m):
        return False
    shifted = mat_add(m, mat_scale(identity(len(m)), -1))
    return (shifted[0][0] * shifted[1][1] - shifted[0][1] * shifted[1][0]).is_zero()


def is_small(spec: GroupSpec, cap: int = DEFAULT_CAP) -> bool:
    return not any(is_pseudo_reflection(g.matrix) for g in elements(spec, cap))


# ------------------------------------------------------ conjugacy classes

@dataclass(frozen=True)
class ConjugacyClass:
    label: str
    representative: GroupElement
    size: int
    members: tuple = field(repr=False)
    tag: tuple = field(default=(), repr=False, compare=False)


def _natkey(label: str) -> tuple:
    return tuple(int(t) if t.isdigit() else t for t in re.findall(r"\d+|\D+", label))


def _sorted(classes: list[ConjugacyClass]) -> list[ConjugacyClass]:
    return sorted(classes, key=lambda c: (c.size, _natkey(c.label)))


def _mk(spec, label, words, tag) -> ConjugacyClass:
    words = tuple(words)
    return ConjugacyClass(label, element(spec, words[0]), len(words), words, tag)


@lru_cache(maxsize=64)
def _closed_classes(spec: GroupSpec) -> tuple[ConjugacyClass, ...]:
    out: list[ConjugacyClass] = []
    if isinstance(spec, CyclicNQ):
        out = [_mk(spec, f"1_{l}", [(l,)], ("1", l)) for l in range(spec.n)]
    elif isinstance(spec, DihedralD):
        k, r = spec.k, spec.r
        n = 2 * r + 1
        for l in range(2 ** (k - 1)):
            out.append(_mk(spec, f"1_{l}", [(2 * l, 0)], ("1", l)))
            for q in range(1, r + 1):
                out.append(_mk(spec, f"2_{{{l},{q}}}", [(2 * l, q), (2 * l, n - q)], ("2", l, q)))
            out.append(_mk(spec, f"{n}_{l}", [(2 * l + 1, b) for b in range(n)], ("odd", l)))
    elif isinstance(spec, PPrime):
        for l in range(3 ** (spec.k - 1)):
            r0, r1, r2 = 3 * l, 3 * l + 1, 3 * l + 2
            out += [
                _mk(spec, f"1_{l}", [(0, 0, r0)], ("1", l)),
                _mk(spec, f"1_{l}^+", [(2, 0, r0)], ("1+", l)),
                _mk(spec, f"4_{l}^a", [(0, 0, r1), (3, 0, r1), (2, 1, r1), (3, 1, r1)], ("4a", l)),
                _mk(spec, f"4_{l}^b", [(0, 0, r2), (1, 0, r2), (0, 1, r2), (1, 1, r2)], ("4b", l)),
                _mk(spec, f"4_{l}^c", [(1, 0, r1), (2, 0, r1), (0, 1, r1), (1, 1, r1)], ("4c", l)),
                _mk(spec, f"4_{l}^d", [(2, 0, r2), (3, 0, r2), (2, 1, r2), (3, 1, r2)], ("4d", l)),
                _mk(spec, f"6_{l}", [(1, 0, r0), (0, 1, r0), (3, 0, r0), (1, 1, r0), (2, 1, r0), (3, 1, r0)],
                    ("6", l)),
            ]
    elif isinstance(spec, BinaryDihedral):
        q = spec.q
        out.append(_mk(spec, "1_0", [(0, 0)], ("1", 0)))
        out.append(_mk(spec, "1_1", [(q, 0)], ("1", 1)))
        for i in range(1, q):
            out.append(_mk(spec, f"2_{i}", [(i, 0), (2 * q - i, 0)], ("2", i)))
        for parity in (0, 1):
            out.append(_mk(spec, f"{q}_{parity}^b", [(i, 1) for i in range(parity, 2 * q, 2)], ("b", parity)))
    elif isinstance(spec, ProductWithCyclic):
        for c in conjugacy_classes(spec.inner):
            for j in range(spec.m):
                out.append(_mk(spec, f"({c.label},{j})", [(w, j) for w in c.members], ("pair", c.tag, j)))
    else:
        # no closed form is used for BT/BO/BI: classes come from the brute-force partition
        return tuple(brute_conjugacy(spec))
    return tuple(_sorted(out))


def conjugacy_classes(spec: GroupSpec) -> list[ConjugacyClass]:
    return list(_closed_classes(spec))


@lru_cache(maxsize=64)
def _brute(spec: GroupSpec) -> tuple[ConjugacyClass, ...]:
    real = realization(spec)
    els = real.elements
    gens = list(real.gens.values())
    invs = [conj_transpose(g) for g in gens]
    # orbits under conjugation by the generators are the full conjugacy classes
    seen = [False] * len(els)
    blocks = []
    for start in range(len(els)):
        if seen[start]:
            continue
        orbit = [start]
        seen[start] = True
        i = 0
        while i < len(orbit):
            h = els[orbit[i]].matrix
            i += 1
            for g, gi in zip(gens, invs):
                idx = real.index[matrix_key(mat_mul(mat_mul(g, h), gi))]
                if not seen[idx]:
                    seen[idx] = True
                    orbit.append(idx)
        blocks.append(sorted(orbit))
    out = []
    for block in blocks:
        rep = els[block[0]]
        ord_ = element_order(rep)
        out.append((len(block), ord_, block))
    out.sort(key=lambda t: (t[0], t[1], t[2][0]))
    classes = []
    counts: dict[tuple, int] = {}
    for size, ord_, block in out:
        n = counts.get((size, ord_), 0)
        counts[(size, ord_)] = n + 1
        label = f"{size}_{ord_}{chr(ord('a') + n)}"
        words = tuple(els[i].word for i in block)
        classes.append(ConjugacyClass(label, els[block[0]], size, words, ("brute", size, ord_, n)))
    return tuple(classes)


def brute_conjugacy(spec: GroupSpec, cap: int = DEFAULT_CAP) -> list[ConjugacyClass]:
    """Partition of the elements into conjugacy classes by direct conjugation."""
    _check_cap(spec, cap)
    return list(_brute(spec))


def class_partition(classes: list[ConjugacyClass]) -> set[frozenset]:
    return {frozenset(c.members) for c in classes}


def class_of(spec: GroupSpec, g: GroupElement) -> ConjugacyClass:
    for c in conjugacy_classes(spec):
        if g.word in c.members:
            return c
    raise KeyError(g.word)
