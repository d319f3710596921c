"""Exact bulk arithmetic on class functions with cyclotomic values.

A family of class functions is packed into an integer array of shape
(rows, classes, phi(N)) holding power-basis coefficients over a common
conductor N and a common denominator.  Matrix products are done in float64
only while every partial sum provably stays below 2**52, so the results are
exact integers; otherwise int64 or Python ints are used.
"""
from __future__ import annotations

from functools import lru_cache
from math import gcd
from typing import Sequence

import numpy as np

from .cyclotomic import Cyclotomic, _field, euler_phi

_EXACT_FLOAT = 2**52


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def common_conductor(values) -> int:
    N = 1
    for v in values:
        if not v.is_rational():
            N = _lcm(N, v.N)
    return N


def pack(rows: Sequence[Sequence[Cyclotomic]], N: int) -> tuple[np.ndarray, int]:
    """Integer coefficient array and common denominator."""
    phi = euler_phi(N)
    den = 1
    for row in rows:
        for v in row:
            if v.den != 1:
                den = _lcm(den, v.den)
    arr = np.zeros((len(rows), len(rows[0]) if rows else 0, phi), dtype=object if den > 2**20 else np.int64)
    for i, row in enumerate(rows):
        for c, v in enumerate(row):
            if not v.terms:
                continue
            w = v.embed(N) if not v.is_rational() else v
            s = den // w.den
            for e, coef in w.terms:
                arr[i, c, e] = coef * s
    return arr, den


def unpack(arr: np.ndarray, den: int, N: int) -> list[list[Cyclotomic]]:
    out = []
    for i in range(arr.shape[0]):
        row = []
        for c in range(arr.shape[1]):
            acc = {e: int(x) for e, x in enumerate(arr[i, c]) if x}
            row.append(Cyclotomic.from_group_ring(N, {e: x for e, x in acc.items()}) / den if acc
                       else Cyclotomic.rational(0))
        out.append(row)
    return out


@lru_cache(maxsize=None)
def _reduction(N: int, length: int) -> np.ndarray:
    """Row d is the power-basis vector of z^d, for 0 <= d < length."""
    phi = euler_phi(N)
    red = _field(N).red
    out = np.zeros((length, phi), dtype=np.int64)
    for d in range(length):
        for f, c in red[d % N]:
            out[d, f] = c
    return out


@lru_cache(maxsize=None)
def _conj_matrix(N: int) -> np.ndarray:
    phi = euler_phi(N)
    red = _field(N).red
    out = np.zeros((phi, phi), dtype=np.int64)
    for e in range(phi):
        for f, c in red[(-e) % N]:
            out[e, f] = c
    return out


@lru_cache(maxsize=None)
def _ramanujan(N: int) -> np.ndarray:
    """Trace form: M[e, f] = Tr(z^e * conj(z^f)) = c_N(e - f)."""
    phi = euler_phi(N)

    def mobius(n):
        res, p = 1, 2
        while p * p <= n:
            if n % p == 0:
                n //= p
                if n % p == 0:
                    return 0
                res = -res
            p += 1
        return -res if n > 1 else res

    def c(t):
        g = gcd(t % N, N) if t % N else N
        return sum(mobius(N // d) * d for d in range(1, g + 1) if g % d == 0)

    vals = [c(t) for t in range(N)]
    out = np.zeros((phi, phi), dtype=np.int64)
    for e in range(phi):
        for f in range(phi):
            out[e, f] = vals[(e - f) % N]
    return out


def _matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact integer matrix product a @ b."""
    if a.dtype == object or b.dtype == object:
        return np.dot(a.astype(object), b.astype(object))
    bound = int(np.abs(a).max(initial=0)) * int(np.abs(b).max(initial=0)) * max(a.shape[-1], 1)
    if bound < _EXACT_FLOAT:
        return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
    if bound < 2**62:
        return a @ b
    return np.dot(a.astype(object), b.astype(object))


def conjugate(arr: np.ndarray, N: int) -> np.ndarray:
    return _matmul(arr, _conj_matrix(N))


def multiply(a: np.ndarray, b: np.ndarray, N: int) -> np.ndarray:
    """Pointwise field product; b broadcasts along the first axis."""
    phi = a.shape[-1]
    raw = np.zeros(a.shape[:-1] + (2 * phi - 1,), dtype=np.result_type(a, b))
    for f in range(phi):
        col = b[..., f]
        if not np.any(col):
            continue
        raw[..., f:f + phi] += a * col[..., None]
    return _matmul(raw, _reduction(N, 2 * phi - 1))


def gram(a: np.ndarray, b: np.ndarray, weights: Sequence[int], N: int) -> np.ndarray:
    """G[i, j] = sum_c w_c a[i, c] * conj(b[j, c]) exactly, as power-basis vectors."""
    n, C, phi = a.shape
    m = b.shape[0]
    w = np.asarray(weights, dtype=np.int64)
    bw = conjugate(b, N) * w[None, :, None]
    raw = np.zeros((n, m, 2 * phi - 1), dtype=np.int64 if a.dtype != object else object)
    a2 = a.transpose(0, 2, 1).reshape(n * phi, C)
    for f in range(phi):
        col = bw[:, :, f]
        if not np.any(col):
            continue
        part = _matmul(a2, np.ascontiguousarray(col.T)).reshape(n, phi, m).transpose(0, 2, 1)
        raw[:, :, f:f + phi] += part
    return _matmul(raw, _reduction(N, 2 * phi - 1))


def trace_pairing(a: np.ndarray, b: np.ndarray, weights: Sequence[int], N: int) -> np.ndarray:
    """T[i, j] = Tr(sum_c w_c a[i, c] * conj(b[j, c])) as an integer matrix."""
    n, C, phi = a.shape
    m = b.shape[0]
    w = np.asarray(weights, dtype=np.int64)
    y = _matmul(b.reshape(m * C, phi), _ramanujan(N).T).reshape(m, C, phi) * w[None, :, None]
    return _matmul(a.reshape(n, C * phi), y.reshape(m, C * phi).T)
