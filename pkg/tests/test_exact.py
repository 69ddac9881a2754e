import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from nestsum.exact import (
    IntPolynomial,
    as_rational,
    bernoulli,
    bigfloat,
    binomial,
    cyclotomic_poly,
    divisors,
    euler_zero,
    factorize,
    mobius,
    totient,
)

import oracles

big = st.integers(min_value=-(2**256), max_value=2**256)
rationals = st.builds(Fraction, big, big.filter(lambda d: d != 0))


@given(rationals, rationals, rationals)
def test_rational_field_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert math.gcd(a.numerator, a.denominator) == 1 and a.denominator >= 1


def test_as_rational():
    assert as_rational("3/6") == Fraction(1, 2)
    assert as_rational(4) == 4
    assert as_rational(Fraction(0)).denominator == 1
    with pytest.raises(TypeError):
        as_rational(True)


@pytest.mark.parametrize("n,mu", [(1, 1), (6, 1), (12, 0), (30, -1), (7, -1)])
def test_mobius_examples(n, mu):
    assert mobius(n) == mu


@pytest.mark.parametrize("n,phi", [(1, 1), (10, 4), (12, 4), (97, 96)])
def test_totient_examples(n, phi):
    assert totient(n) == phi


def test_totient_matches_gcd_count():
    for n in range(1, 200):
        assert totient(n) == oracles.totient(n)


def test_divisor_sums():
    for n in range(1, 10**4 + 1):
        ds = divisors(n)
        assert sum(mobius(d) for d in ds) == (1 if n == 1 else 0)
        assert sum(totient(d) for d in ds) == n


def test_factorize_roundtrip():
    for n in range(1, 2000):
        assert math.prod(p**e for p, e in factorize(n).items()) == n


@pytest.mark.parametrize("bad", [0, -3])
def test_number_theory_rejects_nonpositive(bad):
    with pytest.raises(ValueError):
        mobius(bad)
    with pytest.raises(ValueError):
        totient(bad)


def test_cyclotomic_examples():
    assert str(cyclotomic_poly(1)) == "x - 1"
    assert str(cyclotomic_poly(2)) == "x + 1"
    assert str(cyclotomic_poly(6)) == "x^2 - x + 1"
    assert cyclotomic_poly(4).coeffs == (1, 0, 1)
    # first cyclotomic polynomial with a coefficient of magnitude 2
    assert 2 in map(abs, cyclotomic_poly(105).coeffs)


def test_cyclotomic_divisor_product():
    for n in range(1, 31):
        prod = IntPolynomial([1])
        for d in divisors(n):
            prod = prod * cyclotomic_poly(d)
        assert prod == IntPolynomial.monomial(n) - IntPolynomial([1])


def test_cyclotomic_degree_is_totient():
    for n in range(1, 101):
        assert cyclotomic_poly(n).degree == totient(n)


poly = st.lists(st.integers(-50, 50), max_size=8).map(IntPolynomial)


@given(poly, poly)
def test_polynomial_division(a, b):
    b = b + IntPolynomial.monomial(b.degree + 1)
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


@given(poly, poly, st.integers(-5, 5))
def test_polynomial_ring_evaluation(a, b, x):
    assert (a * b)(x) == a(x) * b(x)
    assert (a - b)(x) == a(x) - b(x)


def test_binomial_examples():
    assert binomial(4, 2) == 6
    assert binomial(0, 0) == 1
    # Pascal recurrence oracle
    row = [1]
    for _ in range(20):
        row = [1] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [1]
    assert binomial(20, 10) == row[10] == 184756


def test_bernoulli_against_mpmath():
    assert bernoulli(1) == Fraction(-1, 2)
    for n in range(0, 30):
        assert abs(float(bernoulli(n)) - float(mpmath.bernoulli(n))) <= 1e-12 * max(1, abs(float(bernoulli(n))))


def test_euler_zero_against_mpmath():
    for n in range(0, 20):
        assert float(euler_zero(n)) == pytest.approx(float(mpmath.eulerpoly(n, 0)), rel=1e-12, abs=1e-15)


def test_bigfloat_precision():
    v = bigfloat(Fraction(1, 3), 60)
    with mpmath.workdps(80):
        assert abs(v - mpmath.mpf(1) / 3) < mpmath.mpf(10) ** -59
