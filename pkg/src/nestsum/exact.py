"""Exact arithmetic and number-theoretic primitives.

Rationals are :class:`fractions.Fraction` (always normalized at
construction).  Integer polynomials are stored as ascending coefficient
tuples.  Working-precision floats are :mod:`mpmath` ``mpf`` values.
"""
from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Iterable

import mpmath

__all__ = [
    "Rational",
    "IntPolynomial",
    "DEFAULT_PREC",
    "as_rational",
    "bigfloat",
    "workprec",
    "divisors",
    "factorize",
    "mobius",
    "totient",
    "cyclotomic_poly",
    "binomial",
    "bernoulli",
    "euler_zero",
]

Rational = Fraction

#: default working precision in decimal digits
DEFAULT_PREC = 50


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def bigfloat(value, prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """Return ``value`` as an mpf rounded at ``prec`` decimal digits."""
    with mpmath.workdps(prec):
        if isinstance(value, Fraction):
            return mpmath.mpf(value.numerator) / value.denominator
        return +mpmath.mpf(value)


def workprec(prec: int | None):
    """Context manager setting the mpmath working precision (digits)."""
    return mpmath.workdps(DEFAULT_PREC if prec is None else prec)


def _check_positive(n: int, name: str = "n") -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"{name} must be an int")
    if n < 1:
        raise ValueError(f"{name} must be >= 1, got {n}")


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division, ``{prime: exponent}``."""
    _check_positive(n)
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    """Sorted list of positive divisors of ``n``."""
    _check_positive(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def mobius(n: int) -> int:
    _check_positive(n)
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def totient(n: int) -> int:
    _check_positive(n)
    result = n
    for p in factorize(n):
        result -= result // p
    return result


def binomial(n: int, k: int) -> int:
    if n < 0 or k < 0:
        raise ValueError("binomial arguments must be non-negative")
    return math.comb(n, k)


class IntPolynomial:
    """Dense integer polynomial, coefficients in ascending degree order.

    The zero polynomial has an empty coefficient tuple; otherwise the
    leading coefficient is nonzero.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[int, ...] = tuple(c)

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "IntPolynomial":
        return cls([0] * degree + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial(x + y for x, y in zip(a, b))

    def __neg__(self):
        return IntPolynomial(-a for a in self.coeffs)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    def divmod(self, other: "IntPolynomial") -> tuple["IntPolynomial", "IntPolynomial"]:
        """Exact division by a polynomial with leading coefficient +-1."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lead = other.coeffs[-1]
        if lead not in (1, -1):
            raise ValueError("divisor must be monic up to sign")
        rem = list(self.coeffs)
        dq = other.degree
        quot = [0] * max(len(rem) - dq, 0)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] * lead
            if c:
                quot[i - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[i - dq + j] -= c * b
        return IntPolynomial(quot), IntPolynomial(rem)

    def __floordiv__(self, other: "IntPolynomial") -> "IntPolynomial":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    def __call__(self, x):
        acc = 0 * x
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            a = self.coeffs[k]
            if not a:
                continue
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            if k == 0:
                body = str(mag)
            else:
                xp = "x" if k == 1 else f"x^{k}"
                body = xp if mag == 1 else f"{mag}*{xp}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


_cyclo_cache: dict[int, IntPolynomial] = {}
_cyclo_lock = threading.Lock()


def cyclotomic_poly(n: int) -> IntPolynomial:
    """The n-th cyclotomic polynomial, via x^n - 1 over the proper-divisor product."""
    _check_positive(n)
    with _cyclo_lock:
        hit = _cyclo_cache.get(n)
    if hit is not None:
        return hit
    denom = IntPolynomial([1])
    for d in divisors(n)[:-1]:
        denom = denom * cyclotomic_poly(d)
    phi = (IntPolynomial.monomial(n) - IntPolynomial([1])) // denom
    with _cyclo_lock:
        _cyclo_cache.setdefault(n, phi)
    return phi


_bern_cache: list[Fraction] = [Fraction(1)]
_bern_lock = threading.Lock()


def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n with the convention B_1 = -1/2."""
    if n < 0:
        raise ValueError("n must be non-negative")
    with _bern_lock:
        while len(_bern_cache) <= n:
            m = len(_bern_cache)
            acc = sum(math.comb(m + 1, k) * _bern_cache[k] for k in range(m))
            _bern_cache.append(-acc / (m + 1))
        return _bern_cache[n]


def euler_zero(n: int) -> Fraction:
    """Value E_n(0) of the n-th Euler polynomial at zero."""
    if n == 0:
        return Fraction(1)
    return -2 * (2 ** (n + 1) - 1) * bernoulli(n + 1) / (n + 1)

