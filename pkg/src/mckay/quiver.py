"""Quivers: McKay quivers from characters, arrow rules, Dynkin data, isomorphism."""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Hashable, Iterable, Optional, Sequence

import numpy as np

from .cyclotomic import Cyclotomic

from .errors import InvalidIndex, NotABijection, SearchCapExceeded, Unsupported
from .groups import (
    BinaryDihedral,
    BinaryIcosahedral,
    BinaryOctahedral,
    BinaryTetrahedral,
    CyclicNQ,
    DihedralD,
    GroupSpec,
    PPrime,
    ProductWithCyclic,
)
from .reps import (
    Character,
    IrrepId,
    alpha,
    beta,
    canonicalize,
    character_table,
    decompose_many,
    irrep_dim,
    irreps,
    natural_character,
    node,
    pair,
    parse_irrep,
    rho,
    varsigma,
)

SEARCH_CAP = 250


class Quiver:
    """Labeled multidigraph: mult[i, j] arrows from vertex i to vertex j."""

    __slots__ = ("labels", "dims", "mult", "_index")

    def __init__(self, labels: Sequence[Hashable], dims: Sequence[int], mult):
        mult = np.array(mult, dtype=np.int64)
        n = len(labels)
        if mult.shape != (n, n) or len(dims) != n:
            raise ValueError(f"multiplicity matrix shape {mult.shape} does not match {n} vertices")
        if np.any(mult < 0):
            raise ValueError("negative arrow multiplicity")
        mult.setflags(write=False)
        self.labels = tuple(labels)
        self.dims = tuple(int(d) for d in dims)
        self.mult = mult
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._index) != n:
            raise ValueError("vertex labels must be distinct")

    def __len__(self):
        return len(self.labels)

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        return self._index[label]

    def arrow_count(self) -> int:
        return int(self.mult.sum())

    def arrows(self) -> list[tuple[int, int, int]]:
        src, dst = np.nonzero(self.mult)
        return [(int(i), int(j), int(self.mult[i, j])) for i, j in zip(src, dst)]

    def labeled_arrows(self) -> dict:
        return {(self.labels[i], self.labels[j]): m for i, j, m in self.arrows()}

    def out_degree(self, i: int) -> int:
        return int(self.mult[i].sum())

    def in_degree(self, i: int) -> int:
        return int(self.mult[:, i].sum())

    def mult_between(self, a, b) -> int:
        return int(self.mult[self.index(a), self.index(b)])

    def reorder(self, labels: Sequence[Hashable]) -> "Quiver":
        perm = [self.index(lab) for lab in labels]
        return Quiver(labels, [self.dims[i] for i in perm], self.mult[np.ix_(perm, perm)])

    def relabel(self, fn) -> "Quiver":
        return Quiver([fn(lab) for lab in self.labels], self.dims, self.mult)

    def induced(self, vertices: Sequence[int]) -> "Quiver":
        vs = list(vertices)
        return Quiver([self.labels[i] for i in vs], [self.dims[i] for i in vs], self.mult[np.ix_(vs, vs)])

    def __eq__(self, other):
        """Equality as labeled quivers (vertex order is irrelevant)."""
        if not isinstance(other, Quiver):
            return NotImplemented
        if set(self.labels) != set(other.labels):
            return False
        o = other.reorder(self.labels)
        return self.dims == o.dims and np.array_equal(self.mult, o.mult)

    def __hash__(self):
        return hash((frozenset(self.labels), self.arrow_count()))

    def __repr__(self):
        return f"Quiver({self.n} vertices, {self.arrow_count()} arrows)"


def labeled_difference(a: Quiver, b: Quiver) -> list[str]:
    """Human-readable differences between two labeled quivers."""
    out = []
    la, lb = set(a.labels), set(b.labels)
    for lab in sorted(map(str, la - lb)):
        out.append(f"vertex {lab} only in first")
    for lab in sorted(map(str, lb - la)):
        out.append(f"vertex {lab} only in second")
    common = [x for x in a.labels if x in lb]
    for x in common:
        if a.dims[a.index(x)] != b.dims[b.index(x)]:
            out.append(f"dimension of {x} differs")
        for y in common:
            ma, mb = a.mult_between(x, y), b.mult_between(x, y)
            if ma != mb:
                out.append(f"{x}->{y}: {ma} vs {mb}")
    return out


# ------------------------------------------------------------- vertex maps

@dataclass(frozen=True)
class VertexMap:
    """Bijection source index -> target index."""

    image: tuple

    def __post_init__(self):
        n = len(self.image)
        if sorted(self.image) != list(range(n)):
            raise NotABijection("vertex map is not a bijection of {0..n-1}")

    def __call__(self, i: int) -> int:
        return self.image[i]

    def __len__(self):
        return len(self.image)

    def inverse(self) -> "VertexMap":
        inv = [0] * len(self.image)
        for i, j in enumerate(self.image):
            inv[j] = i
        return VertexMap(tuple(inv))

    @classmethod
    def from_labels(cls, a: Quiver, b: Quiver, fn) -> "VertexMap":
        try:
            image = tuple(b.index(fn(lab)) for lab in a.labels)
        except KeyError as exc:
            raise NotABijection(f"label {exc.args[0]} has no image vertex") from None
        return cls(image)


def verify_isomorphism(a: Quiver, b: Quiver, f: VertexMap) -> bool:
    if a.n != b.n:
        return False
    if len(f) != a.n:
        raise NotABijection(f"map has {len(f)} entries for {a.n} vertices")
    perm = list(f.image)
    if any(a.dims[i] != b.dims[perm[i]] for i in range(a.n)):
        return False
    return bool(np.array_equal(a.mult, b.mult[np.ix_(perm, perm)]))


# ------------------------------------------------------------ connectivity

def components(q: Quiver) -> list[list[int]]:
    """Weakly connected components, each sorted, ordered by first vertex."""
    sym = (q.mult + q.mult.T) > 0
    seen = [False] * q.n
    out = []
    for s in range(q.n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in np.nonzero(sym[v])[0]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(int(w))
        out.append(sorted(comp))
    return out


def is_connected(q: Quiver) -> bool:
    return q.n <= 1 or len(components(q)) == 1


def is_strongly_connected(q: Quiver) -> bool:
    if q.n <= 1:
        return True
    adj = q.mult > 0

    def reach(m):
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in np.nonzero(m[v])[0]:
                if int(w) not in seen:
                    seen.add(int(w))
                    stack.append(int(w))
        return len(seen) == q.n

    return reach(adj) and reach(adj.T)


# ------------------------------------------------------------- constructions

def _ordered(spec: GroupSpec) -> list[IrrepId]:
    return irreps(spec)


def mckay_quiver(spec: GroupSpec, rho_char: Optional[Character] = None) -> Quiver:
    """Vertices are the irreducibles; mult[i, j] = <rho chi_i, chi_j>."""
    if isinstance(spec, ProductWithCyclic) and dynkin_for(spec.inner) is not None:
        if rho_char is not None:
            raise Unsupported(f"{spec}: only the natural character is available")
        return _dynkin_product_mckay(spec)
    table = character_table(spec)
    if rho_char is None:
        rho_char = natural_character(spec)
    products = [rho_char * chi for chi in table.characters()]
    mult = decompose_many(spec, products)
    return Quiver(table.irreps, table.dims, mult)


def _dynkin_product_mckay(spec: ProductWithCyclic) -> Quiver:
    # Gamma x C_m: c_{(i,k),(j,l)} = a_ij b_kl with a from the Dynkin data and
    # b computed from the characters of C_m
    base = dynkin_for(spec.inner)
    m = spec.m
    if m == 1:
        b = np.ones((1, 1), dtype=np.int64)
    else:
        cyc = CyclicNQ(m, 1)
        tab = character_table(cyc)
        b1 = tab.character(beta(1))
        b = decompose_many(cyc, [b1 * chi for chi in tab.characters()])
        perm = [tab.index(beta(j)) for j in range(m)]
        b = b[np.ix_(perm, perm)]
    mult = np.kron(base.mult, b)
    labels = [pair(lab, j) for lab in base.labels for j in range(m)]
    dims = [d for d in base.dims for _ in range(m)]
    return Quiver(labels, dims, mult)


def _pair_label(lab, j: int):
    if isinstance(lab, IrrepId):
        return pair(lab, j)
    return f"({lab},{j})"


def product_quiver(q: Quiver, m: int) -> Quiver:
    """Kronecker product with the cyclic shift: (i, j) -> (h, j+1) with mult a_ih."""
    if m < 1:
        raise ValueError("m must be positive")
    shift = np.zeros((m, m), dtype=np.int64)
    for j in range(m):
        shift[j, (j + 1) % m] = 1
    labels = [_pair_label(lab, j) for lab in q.labels for j in range(m)]
    dims = [d for d in q.dims for _ in range(m)]
    return Quiver(labels, dims, np.kron(q.mult, shift))


# ------------------------------------------------------------- Dynkin data

@dataclass(frozen=True)
class DynkinTree:
    kind: str
    index: int
    n: int
    edges: tuple  # undirected; a repeated edge encodes the double edge of A~_1
    marks: tuple
    affine: int = 0

    def neighbors(self, v: int) -> list[int]:
        out = []
        for a, b in self.edges:
            if a == v:
                out.append(b)
            elif b == v:
                out.append(a)
        return out

    def is_tree(self) -> bool:
        return len(set(map(frozenset, self.edges))) == len(self.edges) == self.n - 1


def dynkin_tree(kind: str, index: int) -> DynkinTree:
    kind = kind.upper()
    if kind == "A":
        if index < 1:
            raise InvalidIndex(f"A~_{index}: index must be >= 1")
        n = index + 1
        if n == 2:
            edges = ((0, 1), (0, 1))
        else:
            edges = tuple((i, (i + 1) % n) for i in range(n))
        return DynkinTree("A", index, n, edges, (1,) * n)
    if kind == "D":
        if index < 4:
            raise InvalidIndex(f"D~_{index}: index must be >= 4")
        n = index + 1
        last = index - 2
        edges = [(0, 2), (1, 2)]
        edges += [(i, i + 1) for i in range(2, last)]
        edges += [(last, index - 1), (last, index)]
        marks = tuple(1 if v in (0, 1, index - 1, index) else 2 for v in range(n))
        return DynkinTree("D", index, n, tuple(edges), marks)
    if kind == "E":
        if index == 6:
            edges = ((0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6))
            marks = (1, 2, 3, 2, 1, 2, 1)
        elif index == 7:
            edges = ((0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (3, 7))
            marks = (1, 2, 3, 4, 3, 2, 1, 2)
        elif index == 8:
            edges = ((0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (5, 8))
            marks = (1, 2, 3, 4, 5, 6, 4, 2, 3)
        else:
            raise InvalidIndex(f"E~_{index}: index must be 6, 7 or 8")
        return DynkinTree("E", index, len(marks), edges, marks)
    raise InvalidIndex(f"unknown Dynkin type {kind!r}")


def dynkin_extended(kind: str, index: int) -> Quiver:
    t = dynkin_tree(kind, index)
    mult = np.zeros((t.n, t.n), dtype=np.int64)
    for a, b in t.edges:
        mult[a, b] += 1
        mult[b, a] += 1
    return Quiver([node(i) for i in range(t.n)], t.marks, mult)


def dynkin_type(spec: GroupSpec) -> Optional[tuple[str, int]]:
    if isinstance(spec, BinaryDihedral):
        return ("D", spec.q + 2)
    if isinstance(spec, BinaryTetrahedral):
        return ("E", 6)
    if isinstance(spec, BinaryOctahedral):
        return ("E", 7)
    if isinstance(spec, BinaryIcosahedral):
        return ("E", 8)
    return None


def dynkin_for(spec: GroupSpec) -> Optional[Quiver]:
    t = dynkin_type(spec)
    return dynkin_extended(*t) if t else None


def spectral_check(spec: GroupSpec, q: Quiver, powers: int = 12) -> bool:
    """tr(A^n) = sum over classes of chi(c)^n, chi the natural character.

    Uses only the realized matrices and brute-force classes, so it checks a
    quiver (e.g. embedded Dynkin data) without any character table.
    """
    from .groups import brute_conjugacy
    from .matrix import trace

    classes = brute_conjugacy(spec)
    if len(classes) != q.n:
        return False
    values = [trace(c.representative.matrix) for c in classes]
    acc = [Cyclotomic.rational(1)] * len(values)
    a = np.array(q.mult, dtype=object)
    power = np.identity(q.n, dtype=object)
    for _ in range(min(powers, q.n)):
        power = power.dot(a)
        acc = [x * v for x, v in zip(acc, values)]
        total = sum(acc[1:], acc[0])
        if not total.is_rational() or total.to_rational() != int(np.trace(power)):
            return False
    return True


# -------------------------------------------------------------- arrow rules

def _from_rules(vertices: Sequence[IrrepId], dims: Sequence[int], rules) -> Quiver:
    index = {v: i for i, v in enumerate(vertices)}
    mult = np.zeros((len(vertices), len(vertices)), dtype=np.int64)
    for v in vertices:
        for w in rules(v):
            mult[index[v], index[w]] += 1
    return Quiver(vertices, dims, mult)


def cyclic_rules(spec: CyclicNQ):
    n, q = spec.n, spec.q
    return lambda v: [beta((v.idx[0] + 1) % n), beta((v.idx[0] + q) % n)]


def dihedral_rules(spec: DihedralD):
    def rules(v: IrrepId) -> list[IrrepId]:
        if v.kind == "alpha":
            return canonicalize(spec, rho(1, v.idx[0] + 1))
        t, s = v.idx
        return canonicalize(spec, rho(t - 1, s + 1)) + canonicalize(spec, rho(t + 1, s + 1))

    return rules


def pprime_rules(spec: PPrime):
    k = spec.k
    n, n3 = 3**k, 3 ** (k - 1)

    def rules(v: IrrepId) -> list[IrrepId]:
        i = v.idx[0]
        if v.kind == "alpha":
            return [rho((i + 1) % n)]
        if v.kind == "rho":
            return [alpha((i + 1) % n), varsigma((i + 1) % n3)]
        return [rho((i + 1) % n), rho((n3 + i + 1) % n), rho((2 * n3 + i + 1) % n)]

    return rules


def rule_quiver(spec: GroupSpec) -> Quiver:
    """McKay quiver of the natural representation from arrow rules only."""
    if isinstance(spec, CyclicNQ):
        vs = irreps(spec)
        return _from_rules(vs, [1] * len(vs), cyclic_rules(spec))
    if isinstance(spec, DihedralD):
        vs = irreps(spec)
        return _from_rules(vs, [irrep_dim(spec, v) for v in vs], dihedral_rules(spec))
    if isinstance(spec, PPrime):
        vs = irreps(spec)
        return _from_rules(vs, [irrep_dim(spec, v) for v in vs], pprime_rules(spec))
    if dynkin_type(spec) is not None:
        return dynkin_for(spec)
    if isinstance(spec, ProductWithCyclic):
        if isinstance(spec.inner, PPrime):
            from .ar import relabeled_rule_quiver

            return relabeled_rule_quiver(spec.inner.k, spec.m)
        return product_quiver(rule_quiver(spec.inner), spec.m)
    raise Unsupported(f"no arrow rules for {spec}")


# ------------------------------------------------------------- isomorphism

def _adjacency(q: Quiver):
    outs = [[] for _ in range(q.n)]
    ins = [[] for _ in range(q.n)]
    for i, j, m in q.arrows():
        outs[i].append((j, m))
        ins[j].append((i, m))
    return outs, ins


class _Search:
    def __init__(self, a: Quiver, b: Quiver, budget: int):
        self.a, self.b = a, b
        self.ga = _adjacency(a)
        self.gb = _adjacency(b)
        self.budget = budget

    def refine(self, ca: list[int], cb: list[int]):
        while True:
            sa = [self._sig(v, ca, self.ga) for v in range(len(ca))]
            sb = [self._sig(v, cb, self.gb) for v in range(len(cb))]
            palette = {s: i for i, s in enumerate(sorted(set(sa) | set(sb)))}
            na = [palette[s] for s in sa]
            nb = [palette[s] for s in sb]
            if sorted(na) != sorted(nb):
                return None
            if len(set(na)) == len(set(ca)):
                return na, nb
            ca, cb = na, nb

    @staticmethod
    def _sig(v, col, graph):
        outs, ins = graph
        return (col[v],
                tuple(sorted((col[w], m) for w, m in outs[v])),
                tuple(sorted((col[w], m) for w, m in ins[v])))

    def run(self, ca, cb):
        self.budget -= 1
        if self.budget < 0:
            raise SearchCapExceeded("isomorphism search exceeded its node budget")
        res = self.refine(ca, cb)
        if res is None:
            return None
        ca, cb = res
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(ca):
            cells.setdefault(c, []).append(v)
        big = [c for c, vs in cells.items() if len(vs) > 1]
        if not big:
            where = {c: w for w, c in enumerate(cb)}
            f = VertexMap(tuple(where[c] for c in ca))
            return f if verify_isomorphism(self.a, self.b, f) else None
        target = min(big, key=lambda c: (len(cells[c]), c))
        v = cells[target][0]
        fresh = max(max(ca), max(cb)) + 1
        for w in [w for w, c in enumerate(cb) if c == target]:
            na = list(ca)
            nb = list(cb)
            na[v] = fresh
            nb[w] = fresh
            f = self.run(na, nb)
            if f is not None:
                return f
        return None


def find_isomorphism(a: Quiver, b: Quiver, cap: int = SEARCH_CAP, budget: int = 100000) -> Optional[VertexMap]:
    """Backtracking search with colour refinement; None if not isomorphic."""
    if max(a.n, b.n) > cap:
        raise SearchCapExceeded(f"quiver with {max(a.n, b.n)} vertices exceeds search cap {cap}")
    if a.n != b.n or a.arrow_count() != b.arrow_count() or sorted(a.dims) != sorted(b.dims):
        return None
    if a.n == 0:
        return VertexMap(())

    def init(q: Quiver):
        return [(q.dims[i], q.out_degree(i), q.in_degree(i), int(q.mult[i, i])) for i in range(q.n)]

    ia, ib = init(a), init(b)
    palette = {s: i for i, s in enumerate(sorted(set(ia) | set(ib)))}
    return _Search(a, b, budget).run([palette[s] for s in ia], [palette[s] for s in ib])


# ------------------------------------------------------------------ export

_COLORS = {1: "blue", 2: "green", 3: "red", 4: "yellow", 5: "cyan", 6: "gray"}


def export_json(q: Quiver) -> str:
    data = {
        "vertices": [{"id": i, "label": str(lab), "dim": d} for i, (lab, d) in enumerate(zip(q.labels, q.dims))],
        "arrows": [{"src": i, "dst": j, "mult": m} for i, j, m in q.arrows()],
    }
    return json.dumps(data, indent=1, ensure_ascii=False) + "\n"


def _label_from_text(text: str):
    try:
        return parse_irrep(text)
    except Exception:
        return text


def parse_json(text: str) -> Quiver:
    data = json.loads(text)
    verts = sorted(data["vertices"], key=lambda v: v["id"])
    if [v["id"] for v in verts] != list(range(len(verts))):
        raise ValueError("vertex ids must be 0..n-1")
    n = len(verts)
    mult = np.zeros((n, n), dtype=np.int64)
    for a in data["arrows"]:
        mult[a["src"], a["dst"]] += a["mult"]
    return Quiver([_label_from_text(v["label"]) for v in verts], [v["dim"] for v in verts], mult)


def export_dot(q: Quiver, name: str = "Q") -> str:
    lines = [f"digraph {json.dumps(name)} {{"]
    for i, (lab, d) in enumerate(zip(q.labels, q.dims)):
        color = _COLORS.get(d, "black")
        lines.append(f"  n{i} [label={json.dumps(f'{lab}/{d}')}, color={color}];")
    for i, j, m in q.arrows():
        for _ in range(m):
            lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export(q: Quiver, fmt: str) -> str:
    if fmt == "json":
        return export_json(q)
    if fmt == "dot":
        return export_dot(q)
    raise ValueError(f"unknown quiver format {fmt!r}")
