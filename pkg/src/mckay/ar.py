"""Layered quivers (T, s) and [T, s] over signed trees, and the comparison of
the P'-type McKay quivers with the quivers of the groups T_m."""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from math import gcd
from typing import Optional, Sequence

import numpy as np

from .errors import IndexOutOfRange, InvalidM, MapNotBijective, NotATree, NotBijective
from .quiver import (
    DynkinTree,
    Quiver,
    VertexMap,
    components,
    dynkin_tree,
    find_isomorphism,
    is_connected,
    mckay_quiver,
    product_quiver,
    verify_isomorphism,
)
from .groups import CyclicNQ, PPrime, ProductWithCyclic
from .reps import alpha, beta, irreps, pair, rho, varsigma


# ------------------------------------------------------------------ reports

@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class Report:
    case: str
    checks: list = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(passed), detail))
        return bool(passed)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {"case": self.case,
                "checks": [{"name": c.name, "pass": c.passed, "detail": c.detail} for c in self.checks]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)


# ------------------------------------------------------------- signed trees

@dataclass(frozen=True)
class SignedTree:
    n: int
    edges: tuple
    signs: tuple  # +1 / -1 per vertex
    marks: tuple = ()
    name: str = "T"

    def __post_init__(self):
        if self.n < 1:
            raise NotATree("a tree needs at least one vertex")
        if len(self.edges) != self.n - 1 or len(set(map(frozenset, self.edges))) != len(self.edges):
            raise NotATree(f"{self.name}: {len(self.edges)} edges on {self.n} vertices is not a tree")
        if any(a == b or not (0 <= a < self.n and 0 <= b < self.n) for a, b in self.edges):
            raise NotATree(f"{self.name}: bad edge")
        if not _connected(self.n, self.edges):
            raise NotATree(f"{self.name}: graph is disconnected")
        if len(self.signs) != self.n or any(s not in (1, -1) for s in self.signs):
            raise NotATree(f"{self.name}: one sign +1/-1 per vertex required")
        if any(self.signs[a] == self.signs[b] for a, b in self.edges):
            raise NotATree(f"{self.name}: neighbours must carry opposite signs")
        if not self.marks:
            object.__setattr__(self, "marks", (1,) * self.n)
        elif len(self.marks) != self.n:
            raise NotATree(f"{self.name}: one mark per vertex required")

    @classmethod
    def from_edges(cls, n: int, edges: Sequence[tuple[int, int]], root: int = 0,
                   marks: Sequence[int] = (), name: str = "T") -> "SignedTree":
        """Default signing: breadth-first 2-colouring with the root negative."""
        edges = tuple(tuple(e) for e in edges)
        return cls(n, edges, _bfs_signs(n, edges, root), tuple(marks), name)

    @classmethod
    def from_dynkin(cls, tree: DynkinTree) -> "SignedTree":
        if not tree.is_tree():
            raise NotATree(f"{tree.kind}~_{tree.index} contains a cycle")
        return cls.from_edges(tree.n, tree.edges, tree.affine, tree.marks, f"{tree.kind}~{tree.index}")

    def flipped(self) -> "SignedTree":
        return SignedTree(self.n, self.edges, tuple(-s for s in self.signs), self.marks, self.name)

    def oriented_edges(self) -> list[tuple[int, int]]:
        """Edges as (negative end, positive end)."""
        return [(a, b) if self.signs[a] < 0 else (b, a) for a, b in self.edges]


def _connected(n: int, edges) -> bool:
    adj = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = {0}
    stack = [0]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def _bfs_signs(n: int, edges, root: int) -> tuple:
    adj = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    signs = [0] * n
    signs[root] = -1
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if not signs[w]:
                signs[w] = -signs[v]
                queue.append(w)
    if 0 in signs:
        raise NotATree("graph is disconnected")
    return tuple(signs)


def dynkin_signed_tree(kind: str, index: int) -> SignedTree:
    return SignedTree.from_dynkin(dynkin_tree(kind, index))


def single_edge() -> SignedTree:
    return SignedTree.from_edges(2, [(0, 1)], name="edge")


# ------------------------------------------------------ layered quivers

def _layer_label(v: int, i: int) -> str:
    return f"({v},{i})"


def _layered(t: SignedTree, s: int, arrows) -> Quiver:
    if s < 1:
        raise ValueError("number of layers must be positive")
    labels = [_layer_label(v, i) for v in range(t.n) for i in range(s)]
    dims = [t.marks[v] for v in range(t.n) for _ in range(s)]
    mult = np.zeros((t.n * s, t.n * s), dtype=np.int64)
    for (v, i), (w, j) in arrows:
        mult[v * s + i % s, w * s + j % s] += 1
    return Quiver(labels, dims, mult)


def round_quiver(t: SignedTree, s: int) -> Quiver:
    """(T, s): per edge {v, w}, arrows (v, i+1) -> (w, i) and (w, i+1) -> (v, i)."""
    arrows = []
    for v, w in t.edges:
        for i in range(s):
            arrows.append(((v, i + 1), (w, i)))
            arrows.append(((w, i + 1), (v, i)))
    return _layered(t, s, arrows)


def bracket_quiver(t: SignedTree, s: int) -> Quiver:
    """[T, s]: per edge with v negative and w positive, (v, i) -> (w, i) and (w, i+1) -> (v, i)."""
    arrows = []
    for v, w in t.oriented_edges():
        for i in range(s):
            arrows.append(((v, i), (w, i)))
            arrows.append(((w, i + 1), (v, i)))
    return _layered(t, s, arrows)


def basic_subquiver(q: Quiver, t: SignedTree, s: int, i: int) -> Quiver:
    if not 0 <= i < s:
        raise IndexOutOfRange(f"layer {i} outside 0..{s - 1}")
    return q.induced([v * s + i for v in range(t.n)])


def check_lemma6(t: SignedTree, m: int) -> Report:
    rep = Report(f"{t.name}, m={m}")
    doubled = round_quiver(t, 2 * m)
    br = bracket_quiver(t, m)
    comps = components(doubled)
    iso = len(comps) == 2 and all(find_isomorphism(doubled.induced(c), br) is not None for c in comps)
    rep.add("(a) (T,2m) is two copies of [T,m]", iso, f"{len(comps)} components")
    rep.add("(b) [T,m] connected", is_connected(br))
    if m % 2:
        f = find_isomorphism(round_quiver(t, m), br)
        rep.add("(c) (T,m) isomorphic to [T,m]", f is not None)
    else:
        rep.add("(c) (T,m) isomorphic to [T,m]", True, "vacuous: m even")
    return rep


# ---------------------------------------------------------- renamings

def cyclic_renaming(n: int) -> VertexMap:
    """v_l -> beta_{-l mod n}, as indices into the beta order."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return VertexMap(tuple((-l) % n for l in range(n)))


def renamed_cyclic_quiver(n: int, q: int) -> Quiver:
    """McKay quiver of C(n, q) with vertex beta_{-l} called v_l."""
    base = mckay_quiver(CyclicNQ(n, q))
    f = cyclic_renaming(n)
    order = [base.index(beta(f(l))) for l in range(n)]
    return Quiver([f"v_{l}" for l in range(n)], [1] * n, base.mult[np.ix_(order, order)])


def lemma_cong(m: int) -> bool:
    if m < 1 or gcd(m, 6) != 3:
        raise InvalidM(f"m={m}: need gcd(m, 6) = 3")
    return (m * (m - 1) // 2 - m) % (3 * m) == 0


def _check_pl(k: int, l: int) -> None:
    if k < 2:
        raise ValueError("k must be at least 2")
    if l < 1 or gcd(l, 6) != 1:
        raise NotBijective(f"l={l}: need gcd(l, 6) = 1")


def _crt(a: int, ma: int, b: int, mb: int) -> int:
    return (a + ma * ((b - a) * pow(ma, -1, mb) % mb)) % (ma * mb)


def tilde(kind: str, q: int) -> str:
    return f"{kind}~_{q}"


def product_relabel_P(k: int, l: int, formula: str = "crt") -> dict:
    """Renaming of the irreducibles of P'(k) x C_l to alpha~_q, rho~_q, varsigma~_q.

    "crt" picks q by q = i mod 3^k (3^(k-1) for varsigma) and q = j mod l, so
    that tensoring with the natural representation shifts q by one.  "printed"
    uses q = 3^k p + i with p = i - j mod l, which agrees with "crt" only when
    l divides 3^k + 1.
    """
    _check_pl(k, l)
    n, n3 = 3**k, 3 ** (k - 1)
    out = {}
    for j in range(l):
        for i in range(n):
            if formula == "crt":
                q = _crt(i, n, j, l)
            elif formula == "printed":
                q = (n * ((i - j) % l) + i) % (n * l)
            else:
                raise ValueError(f"unknown relabel formula {formula!r}")
            out[pair(alpha(i), j)] = tilde("alpha", q)
            out[pair(rho(i), j)] = tilde("rho", q)
        for s in range(n3):
            if formula == "crt":
                q = _crt(s, n3, j, l)
            else:
                q = (n * ((s - j) % l) + s) % (n3 * l)
            out[pair(varsigma(s), j)] = tilde("varsigma", q)
    if len(set(out.values())) != len(out):
        raise NotBijective(f"relabel of P({k})xC({l}) is not injective")
    return out


def tilde_quiver(k: int, l: int) -> Quiver:
    """Quiver on alpha~, rho~, varsigma~ built from the renamed arrow rules."""
    m = 3 ** (k - 1) * l
    big = 3 * m
    labels = ([tilde("alpha", q) for q in range(big)] + [tilde("rho", q) for q in range(big)]
              + [tilde("varsigma", q) for q in range(m)])
    dims = [1] * big + [2] * big + [3] * m
    idx = {lab: i for i, lab in enumerate(labels)}
    mult = np.zeros((len(labels), len(labels)), dtype=np.int64)

    def add(a, b):
        mult[idx[a], idx[b]] += 1

    for q in range(big):
        add(tilde("alpha", q), tilde("rho", (q + 1) % big))
        add(tilde("rho", q), tilde("alpha", (q + 1) % big))
        add(tilde("rho", q), tilde("varsigma", (q + 1) % m))
    for q in range(m):
        for t in range(3):
            add(tilde("varsigma", q), tilde("rho", (t * m + q + 1) % big))
    return Quiver(labels, dims, mult)


def relabeled_rule_quiver(k: int, l: int) -> Quiver:
    """Rule quiver of P'(k) x C_l: renamed rules pulled back through the renaming."""
    fwd = product_relabel_P(k, l)
    back = {v: key for key, v in fwd.items()}
    q = tilde_quiver(k, l).relabel(lambda lab: back[lab])
    return q.reorder(irreps(ProductWithCyclic(PPrime(k), l)))


def ar_Tm_quiver(m: int) -> Quiver:
    if m < 1 or gcd(m, 6) != 3:
        raise InvalidM(f"m={m}: need m = 3 * odd")
    big = 3 * m
    labels = ([f"(u,{i})" for i in range(m)] + [f"(v,{i})" for i in range(big)]
              + [f"(w,{i})" for i in range(big)])
    dims = [3] * m + [2] * big + [1] * big
    idx = {lab: i for i, lab in enumerate(labels)}
    mult = np.zeros((len(labels), len(labels)), dtype=np.int64)

    def add(a, b):
        mult[idx[a], idx[b]] += 1

    for i in range(big):
        add(f"(w,{i})", f"(v,{i})")
        add(f"(v,{i})", f"(w,{(i - 1) % big})")
        add(f"(v,{i})", f"(u,{i % m})")
    for i in range(m):
        for t in range(3):
            add(f"(u,{i})", f"(v,{(t * m + i - 1) % big})")
    return Quiver(labels, dims, mult)


def explicit_map(k: int, l: int) -> dict:
    """alpha~_q -> (w, a q), rho~_q -> (v, a q + b), varsigma~_q -> (u, c q + 1)."""
    m = 3 ** (k - 1) * l
    big = 3 * m
    a, b, c = (big - 1) // 2, (big + 1) // 2, (m - 1) // 2
    out = {}
    for q in range(big):
        out[tilde("alpha", q)] = f"(w,{a * q % big})"
        out[tilde("rho", q)] = f"(v,{(a * q + b) % big})"
    for q in range(m):
        out[tilde("varsigma", q)] = f"(u,{(c * q + 1) % m})"
    if len(set(out.values())) != len(out):
        raise MapNotBijective(f"explicit map for m={m} is not injective")
    return out


def p_identification_report(k: int, l: int, formula: str = "crt",
                            source: Optional[Quiver] = None) -> Report:
    """Check that the renamed McKay quiver of P'(k) x C_l maps onto the T_m quiver."""
    m = 3 ** (k - 1) * l
    rep = Report(f"P({k})xC({l}), m={m}")
    if source is None:
        source = product_quiver(mckay_quiver(PPrime(k)), l)
    fwd = product_relabel_P(k, l, formula)
    rep.add("relabel bijective", len(set(fwd.values())) == len(fwd) == source.n)
    renamed = source.relabel(lambda lab: fwd[lab])
    rules = tilde_quiver(k, l)
    rep.add("renamed quiver obeys renamed rules", renamed == rules)

    target = ar_Tm_quiver(m)
    f = explicit_map(k, l)
    vm = VertexMap.from_labels(renamed, target, lambda lab: f[lab])
    rep.add("explicit map is a quiver isomorphism", verify_isomorphism(renamed, target, vm))

    triples = True
    for q in range(m):
        u = f[tilde("varsigma", q)]
        i = int(u[3:-1])
        got = {f[tilde("rho", (t * m + q + 1) % (3 * m))] for t in range(3)}
        want = {f"(v,{(t * m + i - 1) % (3 * m)})" for t in range(3)}
        triples &= got == want
    rep.add("varsigma triples map set-wise", triples)
    rep.add("m(m-1)/2 = m mod 3m", lemma_cong(m))
    return rep


def verify_P_identification(k: int, l: int) -> bool:
    return p_identification_report(k, l).ok
