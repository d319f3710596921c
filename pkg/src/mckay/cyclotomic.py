"""Exact arithmetic in cyclotomic fields Q(zeta_N).

An element is stored in the power basis 1, z, ..., z^(phi(N)-1) reduced
modulo the N-th cyclotomic polynomial.  Only the nonzero coefficients are
kept, as a sorted tuple of (exponent, coefficient) pairs.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational
from typing import Iterable, Mapping, Union

from .errors import NotRational

__all__ = [
    "Cyclotomic",
    "NotRational",
    "arith",
    "conjugate",
    "cyclotomic_polynomial",
    "embed",
    "euler_phi",
    "parse",
    "prime_factors",
    "root_of_unity",
    "to_rational",
]

Coeff = Union[int, Fraction]


def prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def euler_phi(n: int) -> int:
    result = n
    for p in prime_factors(n):
        result -= result // p
    return result


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    # coefficient lists are low degree first; den is monic
    num = list(num)
    dn = len(den) - 1
    q = [0] * (len(num) - dn)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + dn]
        q[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[:dn]):
        raise ArithmeticError("inexact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(N: int) -> tuple[int, ...]:
    """Coefficients of Phi_N, lowest degree first."""
    if N < 1:
        raise ValueError(f"invalid conductor {N}: must be >= 1")
    poly = [-1] + [0] * (N - 1) + [1]
    for d in range(1, N):
        if N % d == 0:
            poly = _polydiv_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


class _Field:
    """Per-conductor tables: reduction of z^e for 0 <= e < N."""

    __slots__ = ("N", "phi", "red")

    def __init__(self, N: int):
        self.N = N
        phi = euler_phi(N)
        self.phi = phi
        poly = cyclotomic_polynomial(N)
        cur = [0] * phi
        cur[0] = 1
        red = []
        for _ in range(N):
            red.append(tuple((i, c) for i, c in enumerate(cur) if c))
            # multiply by z, then replace z^phi by -(lower part of Phi_N)
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for i in range(phi):
                    cur[i] -= top * poly[i]
        self.red = tuple(red)


@lru_cache(maxsize=None)
def _field(N: int) -> _Field:
    return _Field(N)


def _reduce(N: int, acc: Mapping[int, int]) -> tuple:
    """Canonical integer terms of sum_e acc[e] z^e (exponents taken mod N)."""
    red = _field(N).red
    out: dict[int, int] = {}
    get = out.get
    for e, c in acc.items():
        if not c:
            continue
        for f, d in red[e % N]:
            out[f] = get(f, 0) + c * d
    return tuple(sorted((f, c) for f, c in out.items() if c))


def _make(N: int, terms: tuple, den: int) -> "Cyclotomic":
    """Build from integer terms over den, cancelling common factors."""
    if not terms:
        return Cyclotomic(N, (), 1)
    if den != 1:
        g = den
        for _, c in terms:
            g = gcd(g, c)
            if g == 1:
                break
        if g != 1:
            terms = tuple((e, c // g) for e, c in terms)
            den //= g
    return Cyclotomic(N, terms, den)


def _split(acc: Mapping[int, Coeff]) -> tuple[dict[int, int], int]:
    """Clear denominators of a rational group-ring element."""
    den = 1
    for c in acc.values():
        if type(c) is not int:
            den = _lcm(den, Fraction(c).denominator)
    if den == 1:
        return {e: int(c) for e, c in acc.items()}, 1
    return {e: int(Fraction(c) * den) for e, c in acc.items()}, den


class Cyclotomic:
    """Element of Q(zeta_N) in canonical reduced form.

    The value is (sum of c * z^e over terms) / den with integer c, a positive
    integer den, and no common factor among den and the c's.
    """

    __slots__ = ("N", "terms", "den", "_hash")

    def __init__(self, N: int, terms: tuple = (), den: int = 1):
        # arguments must already be canonical; use the module constructors otherwise
        self.N = N
        self.terms = terms
        self.den = den
        self._hash = None

    # constructors
    @classmethod
    def from_group_ring(cls, N: int, acc: Mapping[int, Coeff]) -> "Cyclotomic":
        if N < 1:
            raise ValueError(f"invalid conductor {N}: must be >= 1")
        ints, den = _split(acc)
        return _make(N, _reduce(N, ints), den)

    @classmethod
    def from_coeffs(cls, N: int, coeffs: Iterable[Coeff]) -> "Cyclotomic":
        return cls.from_group_ring(N, dict(enumerate(coeffs)))

    @classmethod
    def rational(cls, q: Coeff, N: int = 1) -> "Cyclotomic":
        q = Fraction(q)
        if not q:
            return cls(N, (), 1)
        return cls(N, ((0, q.numerator),), q.denominator)

    # views
    @property
    def conductor(self) -> int:
        return self.N

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        out = [Fraction(0)] * _field(self.N).phi
        for e, c in self.terms:
            out[e] = Fraction(c, self.den)
        return tuple(out)

    def items(self) -> list[tuple[int, Fraction]]:
        """Nonzero (exponent, coefficient) pairs."""
        return [(e, Fraction(c, self.den)) for e, c in self.terms]

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0] == 0)

    def to_rational(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1 and self.terms[0][0] == 0:
            return Fraction(self.terms[0][1], self.den)
        raise NotRational(f"{self} is not rational")

    def key(self) -> tuple:
        return (self.N, self.terms, self.den)

    # structural maps
    def embed(self, M: int) -> "Cyclotomic":
        if M == self.N:
            return self
        if M % self.N:
            raise ValueError(f"cannot embed conductor {self.N} into {M}")
        if self.is_rational():
            return Cyclotomic(M, self.terms, self.den)
        s = M // self.N
        return Cyclotomic(M, _reduce(M, {e * s: c for e, c in self.terms}), self.den)

    def conjugate(self) -> "Cyclotomic":
        N = self.N
        if self.is_rational():
            return self
        return Cyclotomic(N, _reduce(N, {(-e) % N: c for e, c in self.terms}), self.den)

    def galois(self, a: int) -> "Cyclotomic":
        N = self.N
        if gcd(a, N) != 1:
            raise ValueError(f"{a} is not a unit modulo {N}")
        acc: dict[int, int] = {}
        for e, c in self.terms:
            f = (a * e) % N
            acc[f] = acc.get(f, 0) + c
        return Cyclotomic(N, _reduce(N, acc), self.den)

    def descend(self) -> "Cyclotomic":
        """The same value written over the smallest possible conductor."""
        x = self
        if x.is_rational():
            return Cyclotomic(1, x.terms, x.den)
        changed = True
        while changed and x.N > 1:
            changed = False
            for p in prime_factors(x.N):
                y = _descend_prime(x, p)
                if y is not None:
                    x = y
                    changed = True
                    break
        return x

    # arithmetic
    def _coerce(self, other) -> "Cyclotomic | None":
        if isinstance(other, Cyclotomic):
            return other
        if isinstance(other, (int, Rational)):
            return Cyclotomic.rational(other, self.N)
        return None

    @staticmethod
    def _common(a: "Cyclotomic", b: "Cyclotomic") -> tuple["Cyclotomic", "Cyclotomic"]:
        if a.N == b.N:
            return a, b
        if b.is_rational():
            return a, Cyclotomic(a.N, b.terms, b.den)
        if a.is_rational():
            return Cyclotomic(b.N, a.terms, a.den), b
        M = _lcm(a.N, b.N)
        return a.embed(M), b.embed(M)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._common(self, o)
        if not b.terms:
            return a
        if not a.terms:
            return b
        if a.den == b.den:
            den, sa, sb = a.den, 1, 1
        else:
            den = _lcm(a.den, b.den)
            sa, sb = den // a.den, den // b.den
        acc: dict[int, int] = {e: c * sa for e, c in a.terms}
        get = acc.get
        for e, c in b.terms:
            acc[e] = get(e, 0) + c * sb
        return _make(a.N, tuple(sorted((e, c) for e, c in acc.items() if c)), den)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.N, tuple((e, -c) for e, c in self.terms), self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if not isinstance(other, Cyclotomic):
            if not isinstance(other, (int, Rational)):
                return NotImplemented
            q = Fraction(other)
            if not q or not self.terms:
                return Cyclotomic(self.N, (), 1)
            return _make(self.N, tuple((e, c * q.numerator) for e, c in self.terms), self.den * q.denominator)
        a, b = self._common(self, other)
        if not a.terms or not b.terms:
            return Cyclotomic(a.N, (), 1)
        N = a.N
        if len(a.terms) == 1 and a.terms[0][0] == 0:
            c = a.terms[0][1]
            return _make(N, tuple((e, c * d) for e, d in b.terms), a.den * b.den)
        if len(b.terms) == 1 and b.terms[0][0] == 0:
            d = b.terms[0][1]
            return _make(N, tuple((e, c * d) for e, c in a.terms), a.den * b.den)
        acc: dict[int, int] = {}
        get = acc.get
        for e, c in a.terms:
            for f, d in b.terms:
                g = e + f
                if g >= N:
                    g -= N
                acc[g] = get(g, 0) + c * d
        return _make(N, _reduce(N, acc), a.den * b.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, Cyclotomic):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = Cyclotomic.rational(1, self.N)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.N == o.N or self.is_rational() or o.is_rational():
            return self.terms == o.terms and self.den == o.den
        a, b = self._common(self, o)
        return a.terms == b.terms and a.den == b.den

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.to_rational())
            else:
                d = self.descend()
                self._hash = hash((d.N, d.terms, d.den))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        return format_cyclotomic(self)

    def __repr__(self):
        return f"Cyclotomic({format_cyclotomic(self, annotate=True)!r})"

    def __complex__(self):
        import cmath

        z = cmath.exp(2j * cmath.pi / self.N)
        return complex(sum(c * z**e for e, c in self.terms) / self.den)


def _descend_prime(x: Cyclotomic, p: int) -> "Cyclotomic | None":
    N = x.N
    M = N // p
    if M % p == 0:
        # Phi_N(z) = Phi_M(z^p): the subfield is spanned by z^(p*j)
        if all(e % p == 0 for e, _ in x.terms):
            return Cyclotomic(M, tuple((e // p, c) for e, c in x.terms), x.den)
        return None
    if p == 2:
        # zeta_2M = -zeta_M^((M+1)/2) for M odd
        h = (M + 1) // 2
        acc: dict[int, int] = {}
        for e, c in x.terms:
            f = (e * h) % M
            acc[f] = acc.get(f, 0) + (c if e % 2 == 0 else -c)
        return _make(M, _reduce(M, acc), x.den)
    # p exactly divides N: average over Gal(Q(zeta_N)/Q(zeta_M)), where a
    # primitive p-th root of unity averages to -1/(p-1)
    alpha = pow(p, -1, M) if M > 1 else 0
    acc = {}
    for e, c in x.terms:
        f = (alpha * e) % M if M > 1 else 0
        acc[f] = acc.get(f, 0) + (c * (p - 1) if e % p == 0 else -c)
    y = _make(M, _reduce(M, acc), x.den * (p - 1))
    return y if y.embed(N) == x else None


def root_of_unity(N: int, e: int = 1) -> Cyclotomic:
    """zeta_N ** e in canonical form."""
    if N < 1:
        raise ValueError(f"invalid conductor {N}: must be >= 1")
    return Cyclotomic(N, _field(N).red[e % N], 1)


def conjugate(x: Cyclotomic) -> Cyclotomic:
    return x.conjugate()


def embed(x: Cyclotomic, M: int) -> Cyclotomic:
    return x.embed(M)


def to_rational(x: Cyclotomic) -> Fraction:
    return x.to_rational()


def arith(a: Cyclotomic, b: Cyclotomic, op: str) -> Cyclotomic:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


# text form -------------------------------------------------------------

def format_cyclotomic(x: Cyclotomic, annotate: bool = False) -> str:
    """Render as e.g. '1/2 + 3*z12^2'; annotate appends '@N'."""
    parts = []
    for e, c in x.items():
        if e == 0:
            body, neg = str(abs(c)), c < 0
        else:
            mono = f"z{x.N}" if e == 1 else f"z{x.N}^{e}"
            neg = c < 0
            a = abs(c)
            body = mono if a == 1 else f"{a}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    text = "".join(parts) if parts else "0"
    if annotate:
        text += f" @{x.N}"
    return text


_TERM = re.compile(
    r"\s*(?P<sign>[+-])?\s*"
    r"(?:(?P<num>\d+(?:/\d+)?)(?:\s*\*\s*(?=z))?)?"
    r"(?:z(?P<cond>\d+)(?:\^(?P<exp>-?\d+))?)?\s*"
)


def parse(text: str) -> Cyclotomic:
    """Inverse of format_cyclotomic (accepts the optional '@N' suffix)."""
    body, _, cond = text.partition("@")
    total = Cyclotomic.rational(0)
    pos = 0
    body = body.strip()
    if not body:
        raise ValueError("empty cyclotomic literal")
    first = True
    while pos < len(body):
        m = _TERM.match(body, pos)
        if not m or m.end() == pos or (m.group("num") is None and m.group("cond") is None):
            raise ValueError(f"cannot parse cyclotomic literal {text!r} at {pos}")
        if not first and m.group("sign") is None:
            raise ValueError(f"missing operator in {text!r} at {pos}")
        first = False
        coeff = Fraction(m.group("num")) if m.group("num") else Fraction(1)
        if m.group("sign") == "-":
            coeff = -coeff
        if m.group("cond"):
            N = int(m.group("cond"))
            e = int(m.group("exp")) if m.group("exp") else 1
            total = total + root_of_unity(N, e) * coeff
        else:
            total = total + coeff
        pos = m.end()
    if cond.strip():
        N = int(cond.strip())
        if N % total.N:
            raise ValueError(f"value has conductor {total.N}, not dividing {N}")
        total = total.embed(N)
    return total
