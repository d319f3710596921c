"""Small dense matrices over Cyclotomic, stored as tuples of row tuples."""
from __future__ import annotations

from typing import Sequence

from .cyclotomic import Cyclotomic

Matrix = tuple[tuple[Cyclotomic, ...], ...]

ZERO = Cyclotomic.rational(0)
ONE = Cyclotomic.rational(1)


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    out = []
    for row in rows:
        out.append(tuple(v if isinstance(v, Cyclotomic) else Cyclotomic.rational(v) for v in row))
    return tuple(out)


def identity(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    out = []
    for row in a:
        new = []
        for col in cols:
            acc = ZERO
            for x, y in zip(row, col):
                if x.terms and y.terms:
                    acc = acc + x * y
            new.append(acc)
        out.append(tuple(new))
    return tuple(out)


def mat_pow(a: Matrix, n: int) -> Matrix:
    result = identity(len(a))
    base = a
    while n:
        if n & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        n >>= 1
    return result


def mat_scale(a: Matrix, c) -> Matrix:
    return tuple(tuple(x * c for x in row) for row in a)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def conj_transpose(a: Matrix) -> Matrix:
    return tuple(tuple(x.conjugate() for x in col) for col in zip(*a))


def trace(a: Matrix) -> Cyclotomic:
    acc = ZERO
    for i, row in enumerate(a):
        acc = acc + row[i]
    return acc


def det2(a: Matrix) -> Cyclotomic:
    return a[0][0] * a[1][1] - a[0][1] * a[1][0]


def embed_matrix(a: Matrix, N: int) -> Matrix:
    return tuple(tuple(x if x.is_rational() else x.embed(N) for x in row) for row in a)


def matrix_key(a: Matrix) -> tuple:
    """Hashable exact key; valid for comparing matrices over a shared conductor."""
    return tuple((x.terms, x.den) for row in a for x in row)


def is_identity(a: Matrix) -> bool:
    return a == identity(len(a))


def format_matrix(a: Matrix) -> str:
    return "[" + "; ".join(", ".join(str(x) for x in row) for row in a) + "]"
