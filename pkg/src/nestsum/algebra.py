"""Index words, shuffle and quasi-shuffle products, Lyndon words, counting.

Harmonic letters are nonzero ints; generalized letters are
``(exponent, weight)`` pairs with a Fraction weight.  Words are tuples,
outermost summation index first.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Hashable, Iterable, Iterator, Mapping, Sequence

from .exact import as_rational, divisors, mobius

__all__ = [
    "HarmonicIndex",
    "GeneralIndex",
    "CyclotomicIndex",
    "LinComb",
    "stuffle",
    "shuffle",
    "harmonic_order_key",
    "is_lyndon",
    "lyndon_factorization",
    "lyndon_words",
    "harmonic_alphabet",
    "count_all",
    "count_A",
    "count_D",
    "count_H",
    "count_ADH",
    "necklace_formula",
    "reduce_to_basis",
    "eval_polynomial",
    "MAX_REDUCE_WEIGHT",
]


def _sign(a: int) -> int:
    return 1 if a > 0 else -1


@dataclass(frozen=True)
class HarmonicIndex:
    entries: tuple[int, ...]

    def __post_init__(self):
        e = tuple(int(a) for a in self.entries)
        if not e:
            raise ValueError("harmonic index must be nonempty")
        if any(a == 0 for a in e):
            raise ValueError("harmonic index entries must be nonzero")
        object.__setattr__(self, "entries", e)

    @property
    def weight(self) -> int:
        return sum(abs(a) for a in self.entries)

    @property
    def depth(self) -> int:
        return len(self.entries)

    @property
    def convergent(self) -> bool:
        """True iff the sum has a finite limit at infinity (first entry != 1)."""
        return self.entries[0] != 1

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __str__(self):
        return "S[" + ",".join(map(str, self.entries)) + "]"


@dataclass(frozen=True)
class GeneralIndex:
    """Index of a generalized (S-)sum: ``((m_1, x_1), ..., (m_k, x_k))``."""

    entries: tuple[tuple[int, Fraction], ...]

    def __post_init__(self):
        e = tuple((int(m), as_rational(x)) for m, x in self.entries)
        if not e:
            raise ValueError("generalized index must be nonempty")
        for m, x in e:
            if m < 1:
                raise ValueError("exponents must be >= 1")
            if x == 0:
                raise ValueError("weights must be nonzero")
        object.__setattr__(self, "entries", e)

    @classmethod
    def from_lists(cls, exponents: Sequence[int], weights: Sequence) -> "GeneralIndex":
        if len(exponents) != len(weights):
            raise ValueError("exponent and weight lists differ in length")
        return cls(tuple(zip(exponents, weights)))

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(m for m, _ in self.entries)

    @property
    def weights(self) -> tuple[Fraction, ...]:
        return tuple(x for _, x in self.entries)

    @property
    def weight(self) -> int:
        return sum(self.exponents)

    @property
    def depth(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __str__(self):
        ws = ",".join(str(x) for x in self.weights)
        return "S[" + ",".join(map(str, self.exponents)) + "]({" + ws + "})"


@dataclass(frozen=True)
class CyclotomicIndex:
    """Entries ``((a, b, c), s)`` for the denominator ``(a k + b)^c`` and weight ``s^k``."""

    entries: tuple[tuple[tuple[int, int, int], Fraction], ...]

    def __post_init__(self):
        e = []
        for (a, b, c), s in self.entries:
            a, b, c, s = int(a), int(b), int(c), as_rational(s)
            if not a > b >= 0:
                raise ValueError(f"cyclotomic triple needs a > b >= 0, got ({a},{b},{c})")
            if c < 1:
                raise ValueError("cyclotomic power c must be >= 1")
            if s == 0:
                raise ValueError("weights must be nonzero")
            e.append(((a, b, c), s))
        if not e:
            raise ValueError("cyclotomic index must be nonempty")
        object.__setattr__(self, "entries", tuple(e))

    @property
    def weight(self) -> int:
        return sum(c for (_, _, c), _ in self.entries)

    @property
    def depth(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


class LinComb(Mapping):
    """Finite linear combination ``{key: Fraction}`` with zero terms pruned."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | Iterable[tuple[Hashable, object]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for k, c in items:
            c = as_rational(c) if not isinstance(c, Fraction) else c
            v = acc.get(k, 0) + c
            if v:
                acc[k] = v
            else:
                acc.pop(k, None)
        self._terms = acc

    @classmethod
    def single(cls, key, coeff=1) -> "LinComb":
        return cls([(key, coeff)])

    def __getitem__(self, key) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def __contains__(self, key):
        return key in self._terms

    def __iter__(self) -> Iterator:
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __add__(self, other: "LinComb") -> "LinComb":
        return LinComb(list(self._terms.items()) + list(other.items()))

    def __neg__(self) -> "LinComb":
        return LinComb((k, -c) for k, c in self._terms.items())

    def __sub__(self, other: "LinComb") -> "LinComb":
        return self + (-other)

    def __mul__(self, scalar) -> "LinComb":
        s = as_rational(scalar)
        return LinComb((k, c * s) for k, c in self._terms.items())

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, LinComb):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        body = ", ".join(f"{c}*{k}" for k, c in self._terms.items())
        return f"LinComb({body})"

    def map_keys(self, f: Callable) -> "LinComb":
        return LinComb((f(k), c) for k, c in self._terms.items())

    def to_json(self) -> dict:
        terms = [
            {"coeff": _frac_str(c), "word": _key_to_json(k)}
            for k, c in sorted(self._terms.items(), key=lambda kc: repr(kc[0]))
        ]
        return {"terms": terms}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data, key_from_json: Callable = None) -> "LinComb":
        if isinstance(data, str):
            data = json.loads(data)
        conv = key_from_json or _key_from_json
        return cls((conv(t["word"]), Fraction(t["coeff"])) for t in data["terms"])


def _frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _letter_to_json(a):
    if isinstance(a, tuple):
        return [_letter_to_json(x) for x in a]
    if isinstance(a, Fraction):
        return _frac_str(a)
    return a


def _key_to_json(k):
    if isinstance(k, (HarmonicIndex, GeneralIndex)):
        k = k.entries
    if isinstance(k, tuple) and k and isinstance(k[0], (HarmonicIndex, GeneralIndex)):
        return [_key_to_json(f) for f in k]
    return [_letter_to_json(a) for a in k]


def _key_from_json(word):
    """Decode harmonic words and products of harmonic words."""
    if word and isinstance(word[0], list):
        return tuple(HarmonicIndex(tuple(f)) for f in word)
    return HarmonicIndex(tuple(word)) if word else ()


# ---------------------------------------------------------------- products


def _merge_harmonic(a: int, b: int) -> int:
    return _sign(a) * _sign(b) * (abs(a) + abs(b))


def _merge_general(a, b):
    return (a[0] + b[0], a[1] * b[1])


@lru_cache(maxsize=None)
def _qsh(u: tuple, v: tuple, general: bool) -> tuple:
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    merge = _merge_general if general else _merge_harmonic
    acc: dict = {}
    a, b = u[0], v[0]
    for w, c in _qsh(u[1:], v, general):
        acc[(a,) + w] = acc.get((a,) + w, 0) + c
    for w, c in _qsh(u, v[1:], general):
        acc[(b,) + w] = acc.get((b,) + w, 0) + c
    m = merge(a, b)
    for w, c in _qsh(u[1:], v[1:], general):
        acc[(m,) + w] = acc.get((m,) + w, 0) - c
    return tuple((w, c) for w, c in acc.items() if c)


def stuffle(u, v) -> LinComb:
    """Quasi-shuffle product of two nested-sum indices.

    For the non-strictly nested sums ``S`` the contraction terms enter with
    a minus sign: ``S_a * S_b = S_{a,b} + S_{b,a} - S_{a^b}``.
    """
    if isinstance(u, HarmonicIndex) and isinstance(v, HarmonicIndex):
        return LinComb((HarmonicIndex(w), c) for w, c in _qsh(u.entries, v.entries, False))
    if isinstance(u, GeneralIndex) and isinstance(v, GeneralIndex):
        return LinComb((GeneralIndex(w), c) for w, c in _qsh(u.entries, v.entries, True))
    raise TypeError("stuffle needs two indices of the same family")


def stuffle_words(u: tuple, v: tuple) -> LinComb:
    """Quasi-shuffle on raw harmonic words (empty words allowed)."""
    return LinComb(_qsh(tuple(u), tuple(v), False))


@lru_cache(maxsize=None)
def _sh(u: tuple, v: tuple) -> tuple:
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    acc: dict = {}
    for w, c in _sh(u[1:], v):
        acc[(u[0],) + w] = acc.get((u[0],) + w, 0) + c
    for w, c in _sh(u, v[1:]):
        acc[(v[0],) + w] = acc.get((v[0],) + w, 0) + c
    return tuple(acc.items())


def shuffle(u: Sequence, v: Sequence) -> LinComb:
    """Shuffle product; each interleaving is counted with its multiplicity."""
    return LinComb(_sh(tuple(u), tuple(v)))


# ----------------------------------------------------------------- Lyndon


def harmonic_order_key(a: int) -> tuple[int, int]:
    """Letter order 1 < -1 < 2 < -2 < ..."""
    return (abs(a), 0 if a > 0 else 1)


def _keyed(word, key):
    return tuple(key(a) for a in word)


def is_lyndon(word: Sequence, key: Callable = harmonic_order_key) -> bool:
    w = _keyed(word, key)
    if not w:
        raise ValueError("the empty word is not a Lyndon word")
    return all(w < w[i:] + w[:i] for i in range(1, len(w)))


def lyndon_factorization(word: Sequence, key: Callable = harmonic_order_key) -> list[tuple]:
    """Chen-Fox-Lyndon factorization (Duval): nonincreasing Lyndon factors."""
    word = tuple(word)
    s = _keyed(word, key)
    n, i = len(s), 0
    out = []
    while i < n:
        j, k = i + 1, i
        while j < n and s[k] <= s[j]:
            k = i if s[k] < s[j] else k + 1
            j += 1
        while i <= k:
            out.append(word[i : i + j - k])
            i += j - k
    return out


def harmonic_alphabet(max_weight: int) -> list[tuple[int, int]]:
    """``(letter, weight)`` pairs ordered 1, -1, 2, -2, ..."""
    out = []
    for m in range(1, max_weight + 1):
        out += [(m, m), (-m, m)]
    return out


def _words_of_weight(alphabet, weight: int):
    if weight == 0:
        yield ()
        return
    for letter, w in alphabet:
        if w <= weight:
            for rest in _words_of_weight(alphabet, weight - w):
                yield (letter,) + rest


def lyndon_words(
    alphabet: Sequence[tuple[Hashable, int]] | None, weight: int, key: Callable = None
) -> list[tuple]:
    """All Lyndon words of the given total weight, in lexicographic order.

    ``alphabet`` is an ordered list of ``(letter, letter_weight)``; the list
    order defines the letter order.  ``None`` means the harmonic alphabet.
    """
    if weight < 1:
        raise ValueError("weight must be >= 1")
    if alphabet is None:
        alphabet = harmonic_alphabet(weight)
    if key is None:
        rank = {letter: i for i, (letter, _) in enumerate(alphabet)}
        key = rank.__getitem__
    return [w for w in _words_of_weight(alphabet, weight) if is_lyndon(w, key)]


# --------------------------------------------------------------- counting


def _check_weight(w: int, minimum: int = 1) -> None:
    if not isinstance(w, int) or w < minimum:
        raise ValueError(f"weight must be an integer >= {minimum}, got {w!r}")


def necklace_formula(base: int, w: int) -> int:
    """``(1/w) sum_{d|w} mu(w/d) base^d``: aperiodic necklaces of length w."""
    _check_weight(w)
    total = sum(mobius(w // d) * base**d for d in divisors(w))
    q, r = divmod(total, w)
    assert r == 0
    return q


def count_all(w: int) -> int:
    """Number of harmonic sums of weight w."""
    _check_weight(w)
    return 2 * 3 ** (w - 1)


def count_A(w: int) -> int:
    """Number of sums of weight w left independent by the algebraic relations.

    Equals the necklace count ``(1/w) sum mu(w/d) 3^d`` for w >= 2.  At w = 1
    that expression gives 3 although only S_1 and S_-1 exist; the count
    returned there is 2.
    """
    _check_weight(w)
    if w == 1:
        return 2
    return necklace_formula(3, w)


def count_D(w: int) -> int:
    """Independent sums under the differentiation relations (w >= 2)."""
    _check_weight(w, 2)
    return 4 * 3 ** (w - 2)


def count_H(w: int) -> int:
    """Independent sums under the duplication relations."""
    _check_weight(w)
    return 2 * 3 ** (w - 1) - 2 ** (w - 1)


def _adh_part(w: int) -> int:
    total = sum(mobius(w // d) * (3**d - 2**d) for d in divisors(w))
    q, r = divmod(total, w)
    assert r == 0
    return q


def count_ADH(w: int) -> int:
    """Independent sums under algebraic, differentiation and duplication relations."""
    _check_weight(w, 2)
    return _adh_part(w) - _adh_part(w - 1)


# -------------------------------------------------------- basis reduction

MAX_REDUCE_WEIGHT = 5


def _word_rank(word: tuple):
    return (len(word), _keyed(word, harmonic_order_key))


def _monomial(factors: Iterable[tuple]) -> tuple:
    return tuple(sorted(factors, key=lambda f: _keyed(f, harmonic_order_key)))


@lru_cache(maxsize=None)
def _reduce(word: tuple) -> tuple:
    if is_lyndon(word):
        return (((word,), Fraction(1)),)
    factors = lyndon_factorization(word)
    prod = LinComb([((), Fraction(1))])
    for f in factors:
        prod = LinComb(
            (w, c1 * c2)
            for u, c1 in prod.items()
            for w, c2 in _qsh(u, f, False)
        )
    lead = prod[word]
    if not lead:
        raise AssertionError(f"leading word {word} missing from its factor product")
    acc = LinComb.single(_monomial(factors), 1 / lead)
    rank = _word_rank(word)
    for w, c in prod.items():
        if w == word:
            continue
        if _word_rank(w) >= rank:
            raise AssertionError(f"reduction of {word} produced larger word {w}")
        acc = acc - LinComb((m, c * d / lead) for m, d in _reduce(w))
    return tuple(acc.items())


def reduce_to_basis(idx: HarmonicIndex, max_weight: int = MAX_REDUCE_WEIGHT) -> LinComb:
    """Express ``S_idx`` as a polynomial in sums with Lyndon indices.

    Keys of the result are tuples of :class:`HarmonicIndex` (a monomial,
    factors sorted); coefficients are exact.  Only quasi-shuffle relations
    are used.
    """
    if not isinstance(idx, HarmonicIndex):
        idx = HarmonicIndex(tuple(idx))
    if idx.weight > max_weight:
        raise ValueError(f"weight {idx.weight} exceeds the configured maximum {max_weight}")
    return LinComb(
        (tuple(HarmonicIndex(f) for f in mono), c) for mono, c in _reduce(idx.entries)
    )


def eval_polynomial(poly: LinComb, N: int) -> Fraction:
    """Exact value at N of a polynomial in harmonic sums (as from reduce_to_basis)."""
    from .sums import eval_harmonic

    total = Fraction(0)
    for mono, c in poly.items():
        term = c
        for f in mono:
            term *= eval_harmonic(f, N)
        total += term
    return total
