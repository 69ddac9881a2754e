import json
from collections import Counter
from fractions import Fraction
from itertools import product
from math import comb

import pytest
from hypothesis import given, strategies as st

from nestsum.algebra import (
    CyclotomicIndex,
    GeneralIndex,
    HarmonicIndex,
    LinComb,
    count_A,
    count_ADH,
    count_all,
    count_D,
    count_H,
    eval_polynomial,
    harmonic_alphabet,
    is_lyndon,
    lyndon_factorization,
    lyndon_words,
    necklace_formula,
    reduce_to_basis,
    shuffle,
    stuffle,
    stuffle_words,
)
from nestsum.sums import eval_harmonic, eval_ssum

import oracles

letters = st.integers(-3, 3).filter(bool)
hwords = st.lists(letters, min_size=1, max_size=3).map(lambda w: HarmonicIndex(tuple(w)))


def H(*a):
    return HarmonicIndex(a)


# ------------------------------------------------------------- index types


def test_harmonic_index_properties():
    idx = H(-2, 1, 1)
    assert idx.weight == 4 and idx.depth == 3 and idx.convergent
    assert not H(1, 2).convergent
    with pytest.raises(ValueError):
        H(0, 1)
    with pytest.raises(ValueError):
        HarmonicIndex(())


def test_general_and_cyclotomic_index_validation():
    g = GeneralIndex.from_lists([1, 2], ["1/2", -1])
    assert g.weights == (Fraction(1, 2), Fraction(-1)) and g.weight == 3
    with pytest.raises(ValueError):
        GeneralIndex(((0, 1),))
    with pytest.raises(ValueError):
        GeneralIndex(((1, 0),))
    with pytest.raises(ValueError):
        CyclotomicIndex((((1, 1, 1), 1),))
    with pytest.raises(ValueError):
        CyclotomicIndex((((2, 1, 0), 1),))


def test_lincomb_prunes_zero_and_is_a_vector_space():
    a = LinComb({"x": 1, "y": 2})
    b = LinComb({"x": -1, "z": Fraction(1, 3)})
    s = a + b
    assert "x" not in s and s["z"] == Fraction(1, 3)
    assert (a - a) == LinComb()
    assert 2 * (a + b) == 2 * a + 2 * b
    assert a * 0 == LinComb()


def test_lincomb_json_roundtrip():
    lc = stuffle(H(2), H(-3))
    data = json.loads(lc.dumps())
    assert all(set(t) == {"coeff", "word"} for t in data["terms"])
    assert LinComb.from_json(data) == lc
    poly = reduce_to_basis(H(1, 1, -1))
    assert LinComb.from_json(poly.dumps()) == poly


# ------------------------------------------------------------------ stuffle


def test_stuffle_examples():
    assert stuffle(H(2), H(3)) == LinComb({H(2, 3): 1, H(3, 2): 1, H(5): -1})
    assert stuffle(H(1), H(1)) == LinComb({H(1, 1): 2, H(2): -1})
    assert stuffle(H(-2), H(1)) == LinComb({H(-2, 1): 1, H(1, -2): 1, H(-3): -1})


@pytest.mark.parametrize("u,v", [((2,), (3,)), ((1,), (1,)), ((-2,), (1,))])
def test_stuffle_examples_against_direct_summation(u, v):
    lc = stuffle(H(*u), H(*v))
    for N in range(1, 21):
        lhs = oracles.harmonic(u, N) * oracles.harmonic(v, N)
        assert lhs == sum(c * oracles.harmonic(w.entries, N) for w, c in lc.items())


@given(hwords, hwords)
def test_stuffle_exact_identity(u, v):
    lc = stuffle(u, v)
    for N in (1, 2, 5, 9):
        assert eval_harmonic(u, N) * eval_harmonic(v, N) == sum(
            c * eval_harmonic(w, N) for w, c in lc.items())


@given(hwords, hwords, hwords)
def test_stuffle_commutative_associative(u, v, w):
    assert stuffle(u, v) == stuffle(v, u)
    left = LinComb()
    for x, c in stuffle(u, v).items():
        left = left + stuffle(x, w) * c
    right = LinComb()
    for x, c in stuffle(v, w).items():
        right = right + stuffle(u, x) * c
    assert left == right


def test_general_stuffle_exact():
    u = GeneralIndex(((1, Fraction(1, 2)),))
    v = GeneralIndex(((2, Fraction(-1)), (1, Fraction(3))))
    lc = stuffle(u, v)
    for N in range(1, 12):
        assert eval_ssum(u, N) * eval_ssum(v, N) == sum(c * eval_ssum(w, N) for w, c in lc.items())


def test_stuffle_rejects_mixed_families():
    with pytest.raises(TypeError):
        stuffle(H(1), GeneralIndex(((1, 2),)))


def test_stuffle_words_empty_identity():
    assert stuffle_words((), (1, 2)) == LinComb({(1, 2): 1})


# ------------------------------------------------------------------ shuffle


def test_shuffle_examples():
    assert shuffle("a", "bcd") == LinComb({tuple("abcd"): 1, tuple("bacd"): 1,
                                          tuple("bcad"): 1, tuple("bcda"): 1})
    assert shuffle("a", "") == LinComb({("a",): 1})
    assert shuffle("a", "a") == LinComb({("a", "a"): 2})


words01 = st.lists(st.sampled_from([0, 1, -1]), max_size=4).map(tuple)


@given(words01, words01)
def test_shuffle_multiplicity_and_commutativity(u, v):
    lc = shuffle(u, v)
    assert sum(lc.values()) == comb(len(u) + len(v), len(u))
    assert lc == shuffle(v, u)
    # each term is an interleaving: letter multiset is preserved
    for w in lc:
        assert Counter(w) == Counter(u) + Counter(v)


@given(words01, words01, words01)
def test_shuffle_associative(u, v, w):
    left = LinComb()
    for x, c in shuffle(u, v).items():
        left = left + shuffle(x, w) * c
    right = LinComb()
    for x, c in shuffle(v, w).items():
        right = right + shuffle(u, x) * c
    assert left == right


# ------------------------------------------------------------------- Lyndon


def test_is_lyndon_examples():
    order = {1: 0, 2: 1}.__getitem__
    assert is_lyndon((1, 2), order)
    assert not is_lyndon((2, 1), order)
    assert not is_lyndon((1, 1), order)
    with pytest.raises(ValueError):
        is_lyndon(())


def _brute_lyndon(word, key):
    # strictly smaller than every proper rotation, compared letterwise
    w = [key(a) for a in word]
    return all(w < w[i:] + w[:i] for i in range(1, len(w)))


@given(st.lists(letters, min_size=1, max_size=6))
def test_factorization_is_nonincreasing_lyndon(word):
    from nestsum.algebra import harmonic_order_key as key

    fs = lyndon_factorization(word)
    assert sum(fs, ()) == tuple(word)
    assert all(is_lyndon(f) for f in fs)
    ks = [[key(a) for a in f] for f in fs]
    assert all(ks[i] >= ks[i + 1] for i in range(len(ks) - 1))


def test_lyndon_words_small_weights():
    assert len(lyndon_words(None, 1)) == 2
    assert len(lyndon_words(None, 2)) == 3
    assert len(lyndon_words(None, 3)) == 8


def test_lyndon_words_match_exhaustive_filter():
    for w in range(1, 5):
        alpha = harmonic_alphabet(w)
        rank = {a: i for i, (a, _) in enumerate(alpha)}
        brute = []
        for n in range(1, w + 1):
            for word in product([a for a, _ in alpha], repeat=n):
                if sum(abs(a) for a in word) == w and _brute_lyndon(word, rank.__getitem__):
                    brute.append(word)
        assert sorted(brute) == sorted(lyndon_words(None, w))


@pytest.mark.parametrize("w", range(1, 7))
def test_lyndon_count_equals_count_A(w):
    assert len(lyndon_words(None, w)) == count_A(w)


# ----------------------------------------------------------------- counting


def test_count_examples():
    assert count_all(8) == 4374
    assert count_ADH(8) == 486
    assert count_A(2) == 3
    assert [count_all(w) for w in range(1, 11)] == [2 * 3 ** (w - 1) for w in range(1, 11)]


def test_count_formulas_brute_enumeration_of_all():
    # every composition of w into signed parts
    for w in range(1, 8):
        n = 0
        for k in range(1, w + 1):
            for parts in product(range(1, w + 1), repeat=k):
                if sum(parts) == w:
                    n += 2**k
        assert n == count_all(w)


def test_count_variants():
    assert count_D(2) == 4 and count_D(5) == 108
    assert count_H(3) == 14
    assert necklace_formula(3, 1) == 3  # literal formula value at w = 1
    assert count_A(1) == 2
    with pytest.raises(ValueError):
        count_D(1)
    with pytest.raises(ValueError):
        count_ADH(1)
    with pytest.raises(ValueError):
        count_all(0)


def test_count_ordering():
    for w in range(2, 11):
        assert count_ADH(w) <= min(count_A(w), count_D(w), count_H(w)) <= count_all(w)


# --------------------------------------------------------------- reduction


def test_reduce_examples():
    assert reduce_to_basis(H(1, 1)) == LinComb({(H(1), H(1)): Fraction(1, 2), (H(2),): Fraction(1, 2)})
    assert reduce_to_basis(H(2)) == LinComb({(H(2),): 1})


def _all_words(w):
    out = []
    for k in range(1, w + 1):
        for parts in product(range(1, w + 1), repeat=k):
            if sum(parts) == w:
                for signs in product((1, -1), repeat=k):
                    out.append(tuple(p * s for p, s in zip(parts, signs)))
    return out


def test_reduce_weight4_exact_and_basis_size():
    basis = set()
    for word in _all_words(4):
        poly = reduce_to_basis(HarmonicIndex(word))
        for mono in poly:
            for f in mono:
                assert is_lyndon(f.entries)
                if f.weight == 4:
                    basis.add(f)
        for N in (1, 2, 3, 7, 30):
            assert eval_polynomial(poly, N) == eval_harmonic(word, N)
    assert len(basis) == count_A(4) == 18


@given(hwords.filter(lambda i: i.weight <= 5))
def test_reduce_idempotent_on_basis(idx):
    for mono in reduce_to_basis(idx):
        for f in mono:
            assert reduce_to_basis(f) == LinComb({(f,): 1})


def test_reduce_rejects_large_weight():
    with pytest.raises(ValueError):
        reduce_to_basis(H(3, 3))
