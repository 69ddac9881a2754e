"""Harmonic, cyclotomic and generalized polylogarithms; Mellin moments.

Harmonic polylogarithms use the letters ``f_0 = 1/x``,
``f_1 = 1/(1-x)`` and ``f_-1 = 1/(1+x)``, so ``H_1(x) = -ln(1-x)`` and
``H_{0,1}(x) = Li_2(x)``.  Root letters of the general evaluator are
``1/(y-b)``; a harmonic word therefore maps to root letters with an
overall sign ``(-1)^(number of 1s)`` (see :func:`hpl_letters`).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence, Union

import mpmath

from . import gpl
from .algebra import shuffle
from .exact import DEFAULT_PREC, as_rational, bigfloat, binomial, cyclotomic_poly, totient
from .quadrature import iterated_integral
from .sums import eval_harmonic

__all__ = [
    "RootLetter",
    "CyclotomicLetter",
    "SqrtLetter",
    "PolyLetter",
    "MAX_HPL_WEIGHT",
    "hpl_letters",
    "hpl_eval",
    "hpl_at_one",
    "hpl_eval_general",
    "hstar_eval",
    "verify_shuffle",
    "arg_transform_sides",
    "arg_transform_rhs_at_one",
    "verify_arg_transform",
    "Integrand",
    "mellin_moment",
    "mellin_identity_sides",
    "verify_mellin_identity",
    "sigma_m211_closed_form",
    "eval_T",
    "elliptic_moment_exact",
]

MAX_HPL_WEIGHT = 5
MAX_GENERAL_WEIGHT = 4


# ------------------------------------------------------------------ letters


@dataclass(frozen=True)
class RootLetter:
    """The letter ``1/(y - b)``; ``b = 0`` is ``1/y``."""

    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "b", as_rational(self.b))

    @property
    def is_zero(self) -> bool:
        return self.b == 0

    def singularities(self) -> list:
        return [complex(self.b)]

    def __call__(self, y):
        return 1 / (y - bigfloat(self.b, mpmath.mp.dps))

    def __str__(self):
        return str(self.b)


@dataclass(frozen=True)
class CyclotomicLetter:
    """The letter ``y^l / Phi_k(y)`` with ``l < phi(k)``; ``(0, 0)`` is ``1/y``."""

    k: int
    l: int = 0

    def __post_init__(self):
        if (self.k, self.l) == (0, 0):
            return
        if self.k < 1 or not 0 <= self.l < totient(self.k):
            raise ValueError(f"cyclotomic letter needs k >= 1 and 0 <= l < phi(k), got ({self.k},{self.l})")

    @property
    def is_zero(self) -> bool:
        return self.k == 0

    def singularities(self) -> list:
        if self.k == 0:
            return [0j]
        k = self.k
        return [complex(mpmath.expjpi(mpmath.mpf(2 * j) / k))
                for j in range(1, k + 1) if math.gcd(j, k) == 1]

    def __call__(self, y):
        if self.k == 0:
            return 1 / y
        return y**self.l / cyclotomic_poly(self.k)(y)

    def __str__(self):
        return f"{{{self.k},{self.l}}}"


_SQRT_FORMS = {
    "w12": (lambda y: 1 / mpmath.sqrt(y * (8 - y)), [0j, 8 + 0j]),
    "w13": (lambda y: 1 / ((2 - y) * mpmath.sqrt(y * (8 - y))), [0j, 8 + 0j, 2 + 0j]),
    "w17": (lambda y: 1 / mpmath.sqrt(y * (8 + y)), [0j, -8 + 0j]),
    "w18": (lambda y: 1 / ((2 + y) * mpmath.sqrt(y * (8 + y))), [0j, -8 + 0j, -2 + 0j]),
}


@dataclass(frozen=True)
class SqrtLetter:
    """Square-root valued letters w12, w13, w17, w18 (used on the path [x, 1])."""

    name: str

    def __post_init__(self):
        if self.name not in _SQRT_FORMS:
            raise ValueError(f"unknown square-root letter {self.name!r}")

    is_zero = False

    def singularities(self) -> list:
        return list(_SQRT_FORMS[self.name][1])

    def __call__(self, y):
        return _SQRT_FORMS[self.name][0](y)

    def __str__(self):
        return self.name


PolyLetter = Union[RootLetter, CyclotomicLetter, SqrtLetter]
_ZERO = RootLetter(0)


def _canon(letter: PolyLetter) -> PolyLetter:
    return _ZERO if letter.is_zero else letter


def hpl_letters(word: Sequence[int]) -> tuple[int, tuple[RootLetter, ...]]:
    """Root-letter form of a harmonic word: ``H_w = sign * G(letters)``."""
    sign = -1 if sum(1 for a in word if a == 1) % 2 else 1
    return sign, tuple(RootLetter(a) for a in word)


# ------------------------------------------------------- harmonic polylogs


def _check_hpl_word(word) -> tuple[int, ...]:
    word = tuple(int(a) for a in word)
    if any(a not in (0, 1, -1) for a in word):
        raise ValueError("harmonic polylogarithm letters must be in {0, 1, -1}")
    if len(word) > MAX_HPL_WEIGHT:
        raise ValueError(f"weight {len(word)} exceeds {MAX_HPL_WEIGHT}")
    return word


def _to_mpf(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    if isinstance(x, str):
        return mpmath.mpf(Fraction(x).numerator) / Fraction(x).denominator
    return mpmath.mpf(x)


def hpl_eval(word: Sequence[int], x, prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """``H_word(x)`` for 0 < x < 1, letters in {0, 1, -1}, weight <= 5."""
    word = _check_hpl_word(word)
    with mpmath.workdps(prec + 10):
        xv = _to_mpf(x)
        if not 0 < xv < 1:
            raise ValueError("hpl_eval needs 0 < x < 1")
        sign = -1 if word.count(1) % 2 else 1
        val = sign * gpl.G(word, xv)
    return bigfloat(val, prec)


def hpl_at_one(word: Sequence[int], prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """``H_word(1)`` for words whose first letter is not 1."""
    word = _check_hpl_word(word)
    if word and word[0] == 1:
        raise ValueError("H_word(1) diverges for a leading letter 1")
    with mpmath.workdps(prec + 10):
        sign = -1 if word.count(1) % 2 else 1
        val = sign * gpl.G_at_one_reg(word)
    return bigfloat(val, prec)


def _nodes_for(dps: int) -> int:
    return max(16, int(0.6 * dps) + 8)


def _on_segment(s: complex, a: float, b: float) -> bool:
    return abs(s.imag) < 1e-30 and a <= s.real <= b


def _adaptive(fns, length, sing, tol, dps):
    n = _nodes_for(dps)
    prev = None
    rho = mpmath.mpf(1) / 2
    for _ in range(5):
        v1 = iterated_integral(fns, length, sing, n, rho)
        v2 = iterated_integral(fns, length, sing, n + 8, rho)
        if abs(v2 - v1) <= tol:
            return v2
        prev = v2
        rho /= 2
    raise ArithmeticError(f"quadrature did not reach tolerance {tol}; last estimate {prev}")


def hpl_eval_general(
    letters: Sequence[PolyLetter], x, prec: int | None = None, tol: float = 1e-12
) -> mpmath.mpf:
    """Iterated integral ``int_0^x f_1 int_0^y f_2 ...`` over root/cyclotomic letters.

    Trailing ``1/y`` letters are split off analytically; every other letter
    must be regular on (0, x].
    """
    letters = tuple(_canon(a) for a in letters)
    if len(letters) > MAX_GENERAL_WEIGHT:
        raise ValueError(f"weight {len(letters)} exceeds {MAX_GENERAL_WEIGHT}")
    if any(isinstance(a, SqrtLetter) for a in letters):
        raise ValueError("square-root letters are integrated on [x, 1]; use hstar_eval")
    dps = prec or max(20, int(-math.log10(tol)) + 8)
    with mpmath.workdps(dps + 5):
        xv = _to_mpf(x)
        if xv <= 0:
            raise ValueError("x must be positive")
        xf = float(xv)
        for a in letters:
            if a.is_zero:
                continue
            for s in a.singularities():
                if _on_segment(s, 0.0, xf):
                    raise ValueError(f"letter {a} is singular on the integration path at {s.real}")
        total = mpmath.mpf(0)
        lx = mpmath.log(xv)
        for j, w, c in gpl.strip_right(letters, _ZERO):
            if not w:
                total += mpmath.mpf(c.numerator) / c.denominator * lx**j
                continue
            sing = [s for a in w if not a.is_zero for s in a.singularities()]
            val = _adaptive(list(w), xv, sing, tol / (3 * len(letters)), dps)
            total += mpmath.mpf(c.numerator) / c.denominator * lx**j * val
    return bigfloat(total, dps)


def hstar_eval(letters: Sequence[PolyLetter], x, prec: int | None = None, tol: float = 1e-12):
    """``H*_{a,w}(x) = int_x^1 dy f_a(y) H*_w(y)``, iterated integrals on [x, 1]."""
    letters = tuple(letters)
    dps = prec or max(20, int(-math.log10(tol)) + 8)
    with mpmath.workdps(dps + 5):
        xv = _to_mpf(x)
        if not 0 < xv <= 1:
            raise ValueError("hstar_eval needs 0 < x <= 1")
        length = 1 - xv
        sing = []
        for a in letters:
            for s in a.singularities():
                if _on_segment(s, float(xv), 1.0):
                    raise ValueError(f"letter {a} is singular on [x, 1] at {s.real}")
                sing.append(1 - s)
        fns = [(lambda t, a=a: a(1 - t)) for a in letters]
        val = _adaptive(fns, length, sing, tol / (3 * max(1, len(letters))), dps)
    return bigfloat(val, dps)


# ---------------------------------------------------------------- identities


def verify_shuffle(u: Sequence[int], v: Sequence[int], x, tol: float = 1e-10) -> bool:
    """Check ``H_u(x) H_v(x) = sum over shuffles`` numerically."""
    if len(u) + len(v) > MAX_HPL_WEIGHT:
        raise ValueError("combined weight exceeds the evaluator limit")
    lhs = hpl_eval(u, x) * hpl_eval(v, x)
    rhs = sum(c * hpl_eval(w, x) for w, c in shuffle(u, v).items())
    return bool(abs(lhs - rhs) < tol)


def _arg_rhs(H, l2, z2, z3):
    h_m1 = H((-1,))
    h0 = H((0,))
    return (
        -H((-1, 1)) * (h0 + l2)
        + h_m1 * (H((-1, 1)) + H((0, -1)) + H((0, 1)) - z2)
        - 2 * H((-1, -1, 1))
        - H((0, -1, -1))
        - H((0, 1, -1))
        - h_m1**2 * (h0 + l2) / 2
        + h_m1**3 / 6
        + l2 * z2
        - mpmath.mpf(5) / 8 * z3
    )


def arg_transform_sides(x, prec: int = 30):
    """Both sides of the ``x -> (1-x)/(1+x)`` relation for H_{-1,0,1}."""
    with mpmath.workdps(prec + 10):
        xv = _to_mpf(x)
        y = (1 - xv) / (1 + xv)
        lhs = hpl_eval((-1, 0, 1), y, prec + 10)
        rhs = _arg_rhs(lambda w: hpl_eval(w, xv, prec + 10),
                       mpmath.log(2), mpmath.zeta(2), mpmath.zeta(3))
    return bigfloat(lhs, prec), bigfloat(rhs, prec)


def arg_transform_rhs_at_one(prec: int = 30):
    """Right side of the relation at x = 1, where the left side vanishes.

    ``H_0(1) = 0``; every other word has a first letter != 1.
    """
    with mpmath.workdps(prec + 10):
        def H(w):
            return mpmath.mpf(0) if w == (0,) else hpl_at_one(w, prec + 10)

        val = _arg_rhs(H, mpmath.log(2), mpmath.zeta(2), mpmath.zeta(3))
    return bigfloat(val, prec)


def verify_arg_transform(x, tol: float = 1e-10) -> bool:
    lhs, rhs = arg_transform_sides(x)
    return bool(abs(lhs - rhs) < tol)


# ------------------------------------------------------------------- Mellin


@dataclass(frozen=True)
class Integrand:
    """``x^power * H_word(x) * T(x)^[elliptic] / (x - pole)^[pole given]``."""

    word: tuple[int, ...] = ()
    power: int = 0
    pole: Fraction | None = None
    elliptic: bool = False

    def __post_init__(self):
        object.__setattr__(self, "word", _check_hpl_word(self.word))
        if self.pole is not None:
            p = as_rational(self.pole)
            if 0 <= p <= 1:
                raise ValueError("pole inside [0, 1] makes the integrand non-integrable")
            object.__setattr__(self, "pole", p)
        if self.power < 0 and not self.word:
            raise ValueError("negative power without a vanishing factor is not integrable")

    def __call__(self, x):
        if not 0 < x < 1:
            # tanh-sinh never samples the endpoints; guard against rounding onto them
            return mpmath.mpf(0)
        v = x**self.power if self.power else mpmath.mpf(1)
        if self.word:
            sign = -1 if self.word.count(1) % 2 else 1
            v *= sign * gpl.G(self.word, x)
        if self.elliptic:
            v *= _T_raw(x)
        if self.pole is not None:
            v /= x - mpmath.mpf(self.pole.numerator) / self.pole.denominator
        return v


def mellin_moment(f: Callable | Integrand, N: int, prec: int = 25) -> mpmath.mpf:
    """``int_0^1 x^N f(x) dx`` by tanh-sinh quadrature (endpoint singularities allowed)."""
    if N < 0:
        raise ValueError("N must be non-negative")
    with mpmath.workdps(prec + 5):
        val, err = mpmath.quad(lambda x: x**N * f(x), [0, mpmath.mpf(1) / 2, 1], error=True)
        if not mpmath.isfinite(val) or err > mpmath.mpf(10) ** (-prec // 2):
            raise ArithmeticError(f"moment did not converge (error estimate {err})")
    return bigfloat(val, prec)


def sigma_m211_closed_form(prec: int = 30) -> mpmath.mpf:
    """``-Li4(1/2) - ln^4 2/24 + ln^2 2 zeta2/4 - 7 ln2 zeta3/8 + zeta2^2/8``."""
    with mpmath.workdps(prec + 10):
        l2, z2, z3 = mpmath.log(2), mpmath.zeta(2), mpmath.zeta(3)
        v = (-mpmath.polylog(4, mpmath.mpf(1) / 2) - l2**4 / 24 + l2**2 * z2 / 4
             - 7 * l2 * z3 / 8 + z2**2 / 8)
    return bigfloat(v, prec)


def mellin_identity_sides(N: int, prec: int = 25):
    """Exact S_{-2,1,1}(N) and the numeric Mellin-space representation of it."""
    if not 1 <= N <= 8:
        raise ValueError("N must be in 1..8")
    lhs = eval_harmonic((-2, 1, 1), N)
    with mpmath.workdps(prec + 5):
        sgn = -1 if N % 2 else 1
        m1 = mellin_moment(Integrand(word=(0, 1, 1), pole=Fraction(-1)), N, prec + 5)
        m2 = mellin_moment(Integrand(pole=Fraction(-1)), N, prec + 5)
        rhs = -sgn * m1 + sgn * mpmath.zeta(3) * m2 + sigma_m211_closed_form(prec + 5)
    return lhs, bigfloat(rhs, prec)


def verify_mellin_identity(N: int, tol: float = 1e-8) -> bool:
    lhs, rhs = mellin_identity_sides(N)
    return bool(abs(bigfloat(lhs, 30) - rhs) < tol)


# ---------------------------------------------------------------- elliptic


def _T_raw(x):
    # y = x + (1-x) sin^2(t) removes both inverse square roots:
    # T(x) = int_0^{pi/2} 2 dt / sqrt(x cos^2 t + sin^2 t) = pi / agm(sqrt(x), 1)
    return mpmath.pi / mpmath.agm(mpmath.sqrt(x), 1)


def eval_T(x, prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """``T(x) = int_x^1 dy/y (1-y)^(-1/2) (1-x/y)^(-1/2)`` for 0 < x < 1."""
    with mpmath.workdps(prec + 10):
        xv = _to_mpf(x)
        if not 0 < xv < 1:
            raise ValueError("eval_T needs 0 < x < 1")
        v = _T_raw(xv)
    return bigfloat(v, prec)


def elliptic_moment_exact(N: int) -> Fraction:
    """``4^(2N) / (C(2N,N)^2 (N+1/2)^2)`` as an exact rational."""
    return Fraction(16**N * 4, binomial(2 * N, N) ** 2 * (2 * N + 1) ** 2)
