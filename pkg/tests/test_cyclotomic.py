from fractions import Fraction
from math import gcd

import numpy as np
import pytest
from hypothesis import given, strategies as st

from mckay.cyclotomic import (
    Cyclotomic,
    arith,
    conjugate,
    cyclotomic_polynomial,
    embed,
    euler_phi,
    format_cyclotomic,
    parse,
    root_of_unity,
    to_rational,
)
from mckay.errors import NotRational

from conftest import cyclotomics, numeric

Q = Cyclotomic.rational


def close(a: complex, b: complex) -> bool:
    return abs(a - b) < 1e-9


# --- cyclotomic polynomials against products over primitive roots

def _numeric_phi(N):
    roots = [np.exp(2j * np.pi * k / N) for k in range(1, N + 1) if gcd(k, N) == 1]
    return [int(round(c.real)) for c in np.poly(roots)[::-1]]


@pytest.mark.parametrize("N", range(1, 41))
def test_cyclotomic_polynomial_matches_roots(N):
    assert list(cyclotomic_polynomial(N)) == _numeric_phi(N)
    assert len(cyclotomic_polynomial(N)) == euler_phi(N) + 1


def test_small_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    with pytest.raises(ValueError):
        cyclotomic_polynomial(0)


# --- roots of unity

def test_root_of_unity_basics():
    assert root_of_unity(1, 0) == Q(1)
    assert root_of_unity(4, 2) == Q(-1)
    assert root_of_unity(7, -3) == root_of_unity(7, 4)
    for r in range(1, 5):
        n = 2 * r + 1
        for q in range(n):
            assert root_of_unity(n, -q) == root_of_unity(n, n - q)
    with pytest.raises(ValueError):
        root_of_unity(0, 1)


@pytest.mark.parametrize("N", range(1, 61))
def test_multiplicative_order(N):
    for e in range(1, N):
        z = root_of_unity(N, e)
        want = N // gcd(N, e)
        powers = [k for k in range(1, want + 1) if z**k == Q(1)]
        assert powers[0] == want


@pytest.mark.parametrize("n", range(1, 41))
def test_root_sums(n):
    for t in range(2 * n):
        total = sum((root_of_unity(n, t * q) for q in range(n)), Q(0))
        assert total == Q(n if t % n == 0 else 0)


def test_named_sums():
    z3 = root_of_unity(3)
    assert 1 + z3 + z3**2 == 0
    assert to_rational(z3 + z3**2) == -1
    assert to_rational(Q(0)) == 0
    with pytest.raises(NotRational):
        to_rational(root_of_unity(5))


# --- conjugation

def test_conjugate_examples():
    assert conjugate(root_of_unity(4)) == -root_of_unity(4)
    assert conjugate(Q(Fraction(5, 3))) == Q(Fraction(5, 3))
    for n in (3, 5, 7, 9):
        for q in range(n):
            x = root_of_unity(n, q) + root_of_unity(n, -q)
            assert conjugate(x) == x


@given(cyclotomics(), cyclotomics())
def test_conjugate_is_involutive_homomorphism(a, b):
    assert conjugate(conjugate(a)) == a
    assert conjugate(a + b) == conjugate(a) + conjugate(b)
    assert conjugate(a * b) == conjugate(a) * conjugate(b)
    assert close(numeric(conjugate(a)), numeric(a).conjugate())


# --- ring axioms at mixed conductors, checked against floating evaluation

@given(cyclotomics(), cyclotomics(), cyclotomics())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == 0
    assert a * 1 == a and a + 0 == a


@given(cyclotomics(), cyclotomics())
def test_arith_matches_numeric(a, b):
    assert close(numeric(arith(a, b, "add")), numeric(a) + numeric(b))
    assert close(numeric(arith(a, b, "sub")), numeric(a) - numeric(b))
    assert close(numeric(arith(a, b, "mul")), numeric(a) * numeric(b))


@given(cyclotomics(), cyclotomics(), st.sampled_from([1, 2, 3, 5]))
def test_embed_is_injective_homomorphism(a, b, k):
    N = a.N * b.N // gcd(a.N, b.N)
    M = N * k
    ea, eb = embed(a, M), embed(b, M)
    assert ea + eb == embed(a + b, M)
    assert ea * eb == embed(a * b, M)
    assert (ea == eb) == (a == b)
    assert close(numeric(ea), numeric(a))


@given(cyclotomics())
def test_equal_values_hash_equal(a):
    big = embed(a, a.N * 6)
    assert big == a and hash(big) == hash(a)
    d = a.descend()
    assert d == a and d.N <= a.N and close(numeric(d), numeric(a))


def test_descend_examples():
    assert root_of_unity(12, 4).descend().N == 3
    assert root_of_unity(6).descend() == 1 + root_of_unity(3)
    assert (root_of_unity(20, 4) + root_of_unity(20, 16)).descend().N == 5


def test_coeff_length_is_phi():
    for N in (1, 7, 12, 30):
        assert len(root_of_unity(N).coeffs) == euler_phi(N)


# --- textual form

@given(cyclotomics())
def test_text_round_trip(a):
    assert parse(format_cyclotomic(a, annotate=True)) == a
    assert parse(format_cyclotomic(a, annotate=True)).N == a.N


def test_text_examples():
    x = Q(Fraction(1, 2)) + 3 * root_of_unity(12, 2)
    text = format_cyclotomic(x, annotate=True)
    assert text.endswith("@12")
    assert parse(text) == x
    assert parse("0") == 0
