"""Series engine for iterated integrals with root letters.

``G(a_1, ..., a_n; x) = int_0^x dt/(t - a_1) G(a_2, ..., a_n; t)`` with
``G(;x) = 1`` and the usual convention ``G(0,...,0; x) = ln^n(x)/n!``.

Evaluation strategy:

* trailing zeros are split off with the shuffle algebra;
* if ``x`` lies well inside the disk of convergence around 0 the nested
  Taylor series is summed directly;
* for the alphabet {0, 1, -1} and 1/2 < x < 1 the path is routed through
  the singular point 1, using the expansion in ``1 - x`` and shuffle
  regularized values at 1 (computed with the Hölder convolution at 1/2).

All routines run at the ambient mpmath precision.
"""
from __future__ import annotations

import math
import threading
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import mpmath

Letter = object
Word = tuple


def _mpf(a) -> mpmath.mpf:
    if isinstance(a, Fraction):
        return mpmath.mpf(a.numerator) / a.denominator
    return mpmath.mpf(a)


@lru_cache(maxsize=4096)
def strip_right(word: Word, z) -> tuple[tuple[int, Word, Fraction], ...]:
    """Split trailing letters ``z`` off ``word``.

    Returns terms ``(j, w, c)`` with ``G(word) = sum c * G(z)^j * G(w)``,
    where no ``w`` ends in ``z``.  Exact identity in the shuffle algebra.
    """
    k = 0
    while k < len(word) and word[len(word) - 1 - k] == z:
        k += 1
    if k == 0:
        return ((0, word, Fraction(1)),)
    u = word[: len(word) - k]
    if not u:
        return ((k, (), Fraction(1, math.factorial(k))),)
    acc: dict[tuple[int, Word], Fraction] = {}

    def add(key, c):
        v = acc.get(key, 0) + c
        if v:
            acc[key] = v
        else:
            acc.pop(key, None)

    inv_k = Fraction(1, k)
    # u z^(k-1) shuffled with z: k copies of u z^k plus insertions into u
    for j, w, c in strip_right(u + (z,) * (k - 1), z):
        add((j + 1, w), c * inv_k)
    tail = (z,) * (k - 1)
    for i in range(len(u)):
        ins = u[:i] + (z,) + u[i:] + tail
        for j, w, c in strip_right(ins, z):
            add((j, w), -c * inv_k)
    return tuple((j, w, c) for (j, w), c in sorted(acc.items(), key=repr))


def strip_left(word: Word, z) -> tuple[tuple[int, Word, Fraction], ...]:
    """Split leading letters ``z`` off ``word`` (mirror of :func:`strip_right`)."""
    return tuple((j, w[::-1], c) for j, w, c in strip_right(word[::-1], z))


def _terms_needed(ratio: float, depth: int, dps: int) -> int:
    if ratio <= 0:
        return 1
    if ratio >= 1:
        raise ValueError("series does not converge")
    target = (dps + 5) * math.log(10)
    k = max(8, depth + 2)
    while k * (-math.log(ratio)) - depth * math.log(k) < target:
        k = int(k * 1.25) + 1
        if k > 200000:
            raise ValueError("series converges too slowly")
    return k


def series_at_zero(word: Sequence, x) -> mpmath.mpf:
    """Nested Taylor series of G(word; x) around 0; word must not end in 0."""
    if not word:
        return mpmath.mpf(1)
    if word[-1] == 0:
        raise ValueError("word has a trailing zero letter")
    x = _mpf(x)
    if x == 0:
        return mpmath.mpf(0)
    scaled = [(_mpf(a) / x) if a != 0 else None for a in word]
    rmin = min(abs(b) for b in scaled if b is not None)
    ratio = float(1 / rmin)
    K = _terms_needed(ratio, len(word), mpmath.mp.dps)
    # coefficients of the innermost function: constant 1
    g = [mpmath.mpf(0)] * (K + 1)
    g[0] = mpmath.mpf(1)
    for b in reversed(scaled):
        f = [mpmath.mpf(0)] * (K + 1)
        if b is None:
            for m in range(1, K + 1):
                if g[m]:
                    f[m] = g[m] / m
        else:
            binv = 1 / b
            h = mpmath.mpf(0)
            for m in range(K):
                h = (h - g[m]) * binv
                f[m + 1] = h / (m + 1)
        g = f
    return mpmath.fsum(g)


def _letters_are_harmonic(word) -> bool:
    return all(a in (0, 1, -1) for a in word)


class _ConstCache:
    def __init__(self):
        self._lock = threading.Lock()
        self._data: dict = {}

    def get(self, key):
        with self._lock:
            return self._data.get(key)

    def put(self, key, value):
        with self._lock:
            self._data[key] = value


_at_one = _ConstCache()


def G(word: Sequence, x) -> mpmath.mpf:
    """Evaluate G(word; x) for real 0 < x.

    Supported: any real letters when ``x`` is at most half the smallest
    nonzero |letter|; letters in {0, 1, -1} for all 0 < x < 1.
    """
    word = tuple(word)
    if not word:
        return mpmath.mpf(1)
    x = _mpf(x)
    if x <= 0:
        raise ValueError("G is evaluated for x > 0 only")
    total = mpmath.mpf(0)
    lx = None
    for j, w, c in strip_right(word, 0):
        if j:
            if lx is None:
                lx = mpmath.log(x)
            term = lx ** j
        else:
            term = mpmath.mpf(1)
        if w:
            term *= _G_no_trailing(w, x)
        total += _mpf(c) * term
    return total


def _G_no_trailing(word: Word, x) -> mpmath.mpf:
    nonzero = [abs(_mpf(a)) for a in word if a != 0]
    rmin = min(nonzero)
    if x <= rmin / 2:
        return series_at_zero(word, x)
    if _letters_are_harmonic(word) and x < 1:
        return _G_via_one(word, x)
    raise ValueError(
        f"G{word} at x={mpmath.nstr(x, 8)} is outside the series domain"
    )


def _G_via_one(word: Word, x) -> mpmath.mpf:
    # Chen's identity along 0 -> 1 -> x, both factors shuffle regularized at 1
    s = 1 - x
    total = mpmath.mpf(0)
    n = len(word)
    for cut in range(n + 1):
        u, v = word[:cut], word[cut:]
        right = G_at_one_reg(v)
        if not right:
            continue
        left = G(tuple(1 - a for a in u), s) if u else mpmath.mpf(1)
        total += left * right
    return total


def G_at_one_reg(word: Sequence) -> mpmath.mpf:
    """Shuffle-regularized G(word; 1) for letters in {0, 1, -1}.

    Regularization sets G(1; 1) = 0 and G(0; 1) = ln 1 = 0.
    """
    word = tuple(word)
    if not word:
        return mpmath.mpf(1)
    if not _letters_are_harmonic(word):
        raise ValueError("regularized values at 1 need letters in {0, 1, -1}")
    key = (word, mpmath.mp.prec)
    hit = _at_one.get(key)
    if hit is not None:
        return hit
    total = mpmath.mpf(0)
    for j, w, c in strip_left(word, 1):
        if j or not w:
            if not j and not w:
                total += _mpf(c)
            continue
        for j2, w2, c2 in strip_right(w, 0):
            if j2:
                continue
            if not w2:
                total += _mpf(c * c2)
            else:
                total += _mpf(c * c2) * _holder_at_one(w2)
    _at_one.put(key, total)
    return total


def _holder_at_one(word: Word) -> mpmath.mpf:
    # convergent word: first letter != 1, last letter != 0
    half = mpmath.mpf(1) / 2
    n = len(word)
    total = mpmath.mpf(0)
    for j in range(n + 1):
        left = tuple(1 - a for a in reversed(word[:j]))
        right = word[j:]
        lv = series_at_zero(left, half) if left else mpmath.mpf(1)
        rv = series_at_zero(right, half) if right else mpmath.mpf(1)
        total += (-1) ** j * lv * rv
    return total
