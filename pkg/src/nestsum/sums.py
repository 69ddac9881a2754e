"""Exact evaluation of nested sums at integer argument and numeric limits."""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import mpmath

from .algebra import CyclotomicIndex, GeneralIndex, HarmonicIndex
from .exact import DEFAULT_PREC, as_rational, bigfloat, binomial

__all__ = [
    "eval_harmonic",
    "eval_ssum",
    "eval_cyclotomic",
    "eval_cyclotomic_single",
    "BinomialLevel",
    "BinomialSumSpec",
    "eval_binomial_nested",
    "binomial_nested_example",
    "duplication_check",
    "LimitResult",
    "limit_to_infinity",
    "partial_sums",
]


def _as_harmonic(idx) -> HarmonicIndex:
    return idx if isinstance(idx, HarmonicIndex) else HarmonicIndex(tuple(idx))


# letter -> (k -> term), one per family
def _harmonic_term(a: int) -> Callable[[int], Fraction]:
    p, neg = abs(a), a < 0

    def term(k: int) -> Fraction:
        return Fraction(-1 if (neg and k % 2) else 1, k**p)

    return term


def _general_term(letter) -> Callable[[int], Fraction]:
    m, x = letter

    def term(k: int) -> Fraction:
        return x**k / k**m

    return term


def _cyclotomic_term(letter) -> Callable[[int], Fraction]:
    (a, b, c), s = letter

    def term(k: int) -> Fraction:
        return s**k / Fraction(a * k + b) ** c

    return term


_TERMS = {"h": _harmonic_term, "g": _general_term, "c": _cyclotomic_term}


class _PrefixTable:
    """Memo of ``S_word(k)`` for k = 0..N, filled in one pass and extended on demand."""

    def __init__(self):
        self._lock = threading.Lock()
        self._data: dict[tuple, list[Fraction]] = {}

    def values(self, family: str, word: tuple, N: int) -> list[Fraction]:
        key = (family, word)
        with self._lock:
            have = self._data.get(key)
            if have is not None and len(have) > N:
                return have
        if not word:
            vals = [Fraction(1)] * (N + 1)
        else:
            inner = self.values(family, word[1:], N)
            term = _TERMS[family](word[0])
            vals = [Fraction(0)] if have is None else list(have)
            acc = vals[-1]
            for k in range(len(vals), N + 1):
                acc = acc + term(k) * inner[k]
                vals.append(acc)
        with self._lock:
            cur = self._data.get(key)
            if cur is None or len(cur) < len(vals):
                self._data[key] = vals
        return vals


_table = _PrefixTable()


def _check_N(N: int) -> None:
    if not isinstance(N, int) or isinstance(N, bool) or N < 0:
        raise ValueError(f"N must be a non-negative integer, got {N!r}")


def eval_harmonic(idx, N: int) -> Fraction:
    """Exact ``S_idx(N)`` for a harmonic index (sequence of nonzero ints)."""
    _check_N(N)
    return _table.values("h", _as_harmonic(idx).entries, N)[N]


def eval_ssum(idx: GeneralIndex, N: int) -> Fraction:
    """Exact generalized sum ``S_{m_1..}(x_1..; N)``."""
    _check_N(N)
    if not isinstance(idx, GeneralIndex):
        idx = GeneralIndex(tuple(idx))
    if all(abs(x) == 1 for x in idx.weights):
        # degenerate weights +-1: share the harmonic table
        h = tuple(m if x > 0 else -m for m, x in idx.entries)
        return eval_harmonic(h, N)
    return _table.values("g", idx.entries, N)[N]


def eval_cyclotomic(idx: CyclotomicIndex, N: int) -> Fraction:
    """Exact nested cyclotomic sum; the outer index runs over k = 1..N."""
    _check_N(N)
    if not isinstance(idx, CyclotomicIndex):
        idx = CyclotomicIndex(tuple(idx))
    return _table.values("c", idx.entries, N)[N]


def eval_cyclotomic_single(l: int, m: int, n: int, N: int) -> Fraction:
    """Single cyclotomic sum ``sum_{k=0}^N sign(n)^k / (l k + m)^|n|`` (starts at k = 0)."""
    _check_N(N)
    if not l > m >= 1:
        raise ValueError(f"single cyclotomic sum needs l > m >= 1, got l={l}, m={m}")
    if n == 0:
        raise ValueError("n must be nonzero")
    p = abs(n)
    total = Fraction(0)
    for k in range(N + 1):
        t = Fraction(1, (l * k + m) ** p)
        total += -t if (n < 0 and k % 2) else t
    return total


# ------------------------------------------------------------- binomial sums


@dataclass(frozen=True)
class BinomialLevel:
    """One summation level: prefactor * base^i * C(2i,i)^(+-1) / (a i + b)^power."""

    binomial: str | None = None  # None, "num" or "den"
    base: Fraction = Fraction(1)
    prefactor: Fraction = Fraction(1)
    den: tuple[int, int] = (1, 0)
    power: int = 0

    def __post_init__(self):
        if self.binomial not in (None, "num", "den"):
            raise ValueError("binomial must be None, 'num' or 'den'")
        object.__setattr__(self, "base", as_rational(self.base))
        object.__setattr__(self, "prefactor", as_rational(self.prefactor))
        a, b = self.den
        if self.power and (a < 0 or a + b <= 0 or (a == 0 and b == 0)):
            raise ValueError("denominator linear form must be positive for i >= 1")

    def term(self, i: int) -> Fraction:
        t = self.prefactor * self.base**i
        if self.binomial == "num":
            t *= binomial(2 * i, i)
        elif self.binomial == "den":
            t /= binomial(2 * i, i)
        if self.power:
            a, b = self.den
            t /= Fraction(a * i + b) ** self.power
        return t


@dataclass(frozen=True)
class BinomialSumSpec:
    """``sum_{i_1<=N} L_1(i_1) sum_{i_2<=i_1} L_2(i_2) ... S_inner(i_last)``."""

    levels: tuple[BinomialLevel, ...]
    inner: GeneralIndex | None = None

    def __post_init__(self):
        if not self.levels:
            raise ValueError("nesting depth must be >= 1")


def binomial_nested_example() -> BinomialSumSpec:
    """The nested binomial sum
    ``sum_i C(2i,i) (-2)^i sum_{j<=i} 1/(j C(2j,j)) S_{1,2}(1/2,-1; j)``."""
    return BinomialSumSpec(
        levels=(
            BinomialLevel(binomial="num", base=Fraction(-2)),
            BinomialLevel(binomial="den", den=(1, 0), power=1),
        ),
        inner=GeneralIndex(((1, Fraction(1, 2)), (2, Fraction(-1)))),
    )


def eval_binomial_nested(spec: BinomialSumSpec, N: int) -> Fraction:
    _check_N(N)
    if spec.inner is not None:
        vals = [eval_ssum(spec.inner, k) for k in range(N + 1)]
    else:
        vals = [Fraction(1)] * (N + 1)
    for level in reversed(spec.levels):
        acc, out = Fraction(0), [Fraction(0)]
        for i in range(1, N + 1):
            acc += level.term(i) * vals[i]
            out.append(acc)
        vals = out
    return vals[N]


def duplication_check(a: int, N: int, rhs_offset=0) -> bool:
    """Exact check of ``S_a(2N) + S_-a(2N) = 2^(1-a) S_a(N)`` (a taken as |a|)."""
    if a == 0 or N < 1:
        raise ValueError("need a != 0 and N >= 1")
    p = abs(a)
    lhs = eval_harmonic((p,), 2 * N) + eval_harmonic((-p,), 2 * N)
    rhs = Fraction(2) ** (1 - p) * eval_harmonic((p,), N) + as_rational(rhs_offset)
    return lhs == rhs


# ------------------------------------------------------------------ limits


@dataclass
class LimitResult:
    """Outcome of :func:`limit_to_infinity`.

    Convergent: ``value`` and ``error`` set, ``iterates`` lists the
    successive accelerated estimates.  Divergent: ``converged`` is False
    and ``reason``/``symbol`` describe the divergence.
    """

    converged: bool
    value: mpmath.mpf | None = None
    error: mpmath.mpf | None = None
    iterates: list = field(default_factory=list)
    method: str = ""
    reason: str = ""
    symbol: str | None = None


def _normalize_limit_index(idx):
    """Return (letters as (exponent, weight) pairs, harmonic?)"""
    if isinstance(idx, GeneralIndex):
        return idx.entries
    if isinstance(idx, HarmonicIndex):
        return tuple((abs(a), Fraction(1 if a > 0 else -1)) for a in idx.entries)
    seq = tuple(idx)
    if seq and isinstance(seq[0], tuple):
        return GeneralIndex(seq).entries
    return _normalize_limit_index(HarmonicIndex(seq))


def partial_sums(letters: Sequence[tuple[int, Fraction]], Nmax: int) -> list:
    """Floating partial sums S(0..Nmax) at the ambient mpmath precision."""
    vals = [mpmath.mpf(1)] * (Nmax + 1)
    for m, x in reversed(letters):
        xf = bigfloat(x, mpmath.mp.dps)
        out = [mpmath.mpf(0)] * (Nmax + 1)
        acc = mpmath.mpf(0)
        xp = mpmath.mpf(1)
        for k in range(1, Nmax + 1):
            xp *= xf
            acc += xp * vals[k] / mpmath.mpf(k) ** m
            out[k] = acc
        vals = out
    return vals


def limit_to_infinity(idx, prec: int = DEFAULT_PREC) -> LimitResult:
    """Numeric value of ``lim_{N->inf} S_idx(N)`` or a divergence report.

    Harmonic or generalized indices are accepted.  Leading letter 1 with
    weight 1 diverges like the harmonic series (symbol ``sigma0``); any
    |weight| > 1 is reported as divergent.
    """
    letters = _normalize_limit_index(idx)
    m1, x1 = letters[0]
    if any(abs(x) > 1 for _, x in letters):
        return LimitResult(False, reason="a weight has |x| > 1; the sum is not convergent",
                           method="none")
    if m1 == 1 and x1 == 1:
        return LimitResult(False, reason="leading index 1 diverges like the harmonic series",
                           symbol="sigma0", method="none")
    with mpmath.workdps(prec + 20):
        if abs(x1) < 1:
            res = _limit_geometric(letters, prec)
        elif x1 == -1 and all(x == 1 for _, x in letters[1:]):
            res = _limit_euler(letters, prec)
        else:
            res = _limit_richardson(letters, prec)
    res.value = bigfloat(res.value, prec)
    return res


def _limit_geometric(letters, prec):
    # |x_1| < 1: terms decay geometrically; sum until the tail bound is met
    r = float(abs(letters[0][1]))
    depth = len(letters)
    eps = 10.0 ** (-prec - 5)
    N = 16
    while r**N * N ** depth / (1 - r) > eps:
        N = int(N * 1.3) + 1
    s = partial_sums(letters, N)
    return LimitResult(True, s[N], mpmath.mpf(r) ** N * N**depth / (1 - r),
                       [s[N // 2], s[N]], method="direct")


def _limit_euler(letters, prec, N0: int = 200, levels: int = 60):
    # alternating outer sum with smooth inner factor: repeated averaging of
    # consecutive partial sums (Euler / van Wijngaarden acceleration)
    s = partial_sums(letters, N0 + levels)
    row = s[N0:]
    iterates = [row[-1]]
    for _ in range(levels):
        row = [(row[i] + row[i + 1]) / 2 for i in range(len(row) - 1)]
        iterates.append(row[-1])
    err = abs(iterates[-1] - iterates[-2])
    return LimitResult(True, iterates[-1], err, iterates[-6:], method="euler")


def _limit_richardson(letters, prec, N0: int = 1000, ratio: float = 1.3, kmax: int = 6):
    # least-squares-free extrapolation of
    #   S(N) = sigma + sum_{k,j} (c_kj + e_kj (-1)^N) ln^j N / N^k
    # solved exactly on geometrically spaced sample points, one order at a time
    depth = len(letters)
    logs = min(depth, 1 + sum(1 for m, _ in letters[1:] if m == 1))
    oscillating = any(x < 0 for _, x in letters)
    per_order = logs * (2 if oscillating else 1)

    def basis(N, K):
        lnN = mpmath.log(N)
        row = [mpmath.mpf(1)]
        for k in range(1, K + 1):
            for j in range(logs):
                v = lnN**j / mpmath.mpf(N) ** k
                row.append(v)
                if oscillating:
                    row.append(-v if N % 2 else v)
        return row

    def points(nunk):
        nb = nunk if not oscillating else (nunk + 1) // 2
        bases = [int(N0 * ratio**i) for i in range(nb)]
        if not oscillating:
            return bases
        return [n for b in bases for n in (b, b + 1)][:nunk]

    top = max(points(1 + kmax * per_order))
    s = partial_sums(letters, top)
    iterates = []
    for K in range(1, kmax + 1):
        pts = points(1 + K * per_order)
        A = mpmath.matrix([basis(n, K) for n in pts])
        y = mpmath.matrix([s[n] for n in pts])
        iterates.append(mpmath.lu_solve(A, y)[0])
    err = abs(iterates[-1] - iterates[-2])
    return LimitResult(True, iterates[-1], err, iterates, method="richardson")
