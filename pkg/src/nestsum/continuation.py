"""Analytic continuation of single harmonic sums to complex N.

``S_a(N)`` is shifted upward with ``S_a(N) = S_a(N+m) - sum_{j=1}^m t(N+j)``
until ``Re(N+m) >= N0``, where the Euler-Maclaurin (a > 0) or Boole
(a < 0) asymptotic expansion is accurate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath

from .exact import DEFAULT_PREC, bernoulli, euler_zero

__all__ = [
    "AsymptoticSeries",
    "PoleError",
    "asymptotic_coeffs",
    "continue_single",
    "N0_DEFAULT",
    "ORDER_DEFAULT",
]

N0_DEFAULT = 20
ORDER_DEFAULT = 15
MAX_ABS_INDEX = 5


class PoleError(ArithmeticError):
    """N lies on (or within 1e-8 of) a pole of the continued sum."""


def _rising(a: int, m: int) -> int:
    out = 1
    for i in range(m):
        out *= a + i
    return out


@dataclass(frozen=True)
class AsymptoticSeries:
    """Large-N expansion of ``S_a(N)``.

    ``S_a(N) ~ constant + log_coeff ln N + sum_p smooth[p] N^-p
                + (-1)^N sum_p alternating[p] N^-p``
    ``constant`` is kept symbolic (zeta_a, -eta_|a|, or Euler's gamma).
    """

    a: int
    order: int
    constant: str
    log_coeff: int = 0
    smooth: dict = field(default_factory=dict)
    alternating: dict = field(default_factory=dict)
    threshold: int = N0_DEFAULT

    def constant_value(self) -> mpmath.mpf:
        p = abs(self.a)
        if self.a == 1:
            return +mpmath.euler
        if self.a > 1:
            return mpmath.zeta(p)
        return -mpmath.altzeta(p)

    def evaluate(self, N, parity_sign: int = 1):
        """Value at (complex) N; ``parity_sign`` stands in for (-1)^N."""
        N = mpmath.mpmathify(N)
        v = self.constant_value()
        if self.log_coeff:
            v += self.log_coeff * mpmath.log(N)
        inv = 1 / N
        for p, c in self.smooth.items():
            v += mpmath.mpf(c.numerator) / c.denominator * inv**p
        alt = 0
        for p, c in self.alternating.items():
            alt += mpmath.mpf(c.numerator) / c.denominator * inv**p
        return v + parity_sign * alt


@lru_cache(maxsize=None)
def asymptotic_coeffs(a: int, order: int = ORDER_DEFAULT) -> AsymptoticSeries:
    """Expansion coefficients of ``S_a(N)`` through ``order`` correction terms."""
    if a == 0 or abs(a) > MAX_ABS_INDEX:
        raise ValueError(f"|a| must be in 1..{MAX_ABS_INDEX}")
    if not 1 <= order <= 20:
        raise ValueError("order must be in 1..20")
    p = abs(a)
    if a > 0:
        # sum_{k<=N} f(k) = C + int^N f + f(N)/2 + sum_j B_2j/(2j)! f^(2j-1)(N)
        smooth: dict[int, Fraction] = {}
        if p > 1:
            smooth[p - 1] = Fraction(-1, p - 1)
        smooth[p] = smooth.get(p, 0) + Fraction(1, 2)
        j = 1
        while len(smooth) < order:
            m = 2 * j - 1
            # f^(m)(N) = (-1)^m (p)_m N^(-p-m)
            c = bernoulli(2 * j) / math.factorial(2 * j) * (-1) ** m * _rising(p, m)
            smooth[p + m] = smooth.get(p + m, 0) + c
            j += 1
        name = "gammaE" if p == 1 else f"zeta({p})"
        return AsymptoticSeries(a, order, name, 1 if p == 1 else 0,
                                {k: v for k, v in smooth.items() if v})
    # sum_{k>N} (-1)^k f(k) = (-1)^N [ -f(N)/2 + 1/2 sum_{n>=1} E_n(0) f^(n)(N)/n! ]
    alternating: dict[int, Fraction] = {p: Fraction(1, 2)}
    n = 1
    while len(alternating) < order:
        e = euler_zero(n)
        if e:
            c = -Fraction(1, 2) * e / math.factorial(n) * (-1) ** n * _rising(p, n)
            alternating[p + n] = alternating.get(p + n, 0) + c
        n += 1
    return AsymptoticSeries(a, order, f"-eta({p})", 0, {}, alternating)


def _parity_sign(N, parity):
    if parity is None:
        if mpmath.im(N) == 0 and mpmath.re(N) == mpmath.floor(mpmath.re(N)):
            return -1 if int(mpmath.re(N)) % 2 else 1
        raise ValueError("alternating sums need parity='even' or 'odd' off the integers")
    if parity not in ("even", "odd"):
        raise ValueError("parity must be 'even' or 'odd'")
    return 1 if parity == "even" else -1


def continue_single(
    a: int,
    N,
    parity: str | None = None,
    prec: int = DEFAULT_PREC,
    N0: int = N0_DEFAULT,
    order: int = ORDER_DEFAULT,
):
    """``S_a(N)`` for complex N away from the poles at negative integers.

    For a < 0 the factor (-1)^N is replaced by +1 (``parity='even'``) or
    -1 (``'odd'``); at integer N the true parity is used when omitted.
    """
    series = asymptotic_coeffs(a, order)
    p = abs(a)
    with mpmath.workdps(prec + 10):
        N = mpmath.mpmathify(N)
        sgn = _parity_sign(N, parity) if a < 0 else 1
        nearest = mpmath.nint(mpmath.re(N))
        if nearest < 0 and abs(N - nearest) < mpmath.mpf("1e-8"):
            raise PoleError(f"N = {mpmath.nstr(N, 10)} is at a pole")
        m = max(0, int(mpmath.ceil(N0 - mpmath.re(N))))
        Nm = N + m
        # (-1)^(N+m) -> sgn (-1)^m
        val = series.evaluate(Nm, sgn * (-1) ** m)
        for j in range(1, m + 1):
            t = 1 / (N + j) ** p
            if a < 0:
                t *= sgn * (-1) ** j
            val -= t
        if mpmath.im(val) == 0:
            val = mpmath.re(val)
    with mpmath.workdps(prec):
        return +val
