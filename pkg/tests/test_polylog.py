import random
from fractions import Fraction
from itertools import product

import mpmath
import pytest

from nestsum.polylog import (
    CyclotomicLetter,
    Integrand,
    RootLetter,
    SqrtLetter,
    arg_transform_rhs_at_one,
    arg_transform_sides,
    elliptic_moment_exact,
    eval_T,
    hpl_at_one,
    hpl_eval,
    hpl_eval_general,
    hpl_letters,
    hstar_eval,
    mellin_identity_sides,
    mellin_moment,
    verify_arg_transform,
    verify_mellin_identity,
    verify_shuffle,
)

import oracles

mp = mpmath.mpf


def close(a, b, tol):
    with mpmath.workdps(40):
        return abs(mp(a) - mp(b)) < tol


def q(x):
    return mp(Fraction(x).numerator) / Fraction(x).denominator


# ---------------------------------------------------------------- examples


def test_hpl_weight_one_and_two():
    with mpmath.workdps(40):
        assert close(hpl_eval((0,), "1/2"), mpmath.log(q("1/2")), 1e-30)
        assert close(hpl_eval((-1,), "3/10"), mpmath.log(q("13/10")), 1e-30)
        assert close(hpl_eval((1,), "3/10"), -mpmath.log(q("7/10")), 1e-30)
        assert close(hpl_eval((0, 1), "1/2"), oracles.li(2, mp(1) / 2, 200), 1e-30)


def test_hpl_li3_and_trailing_zero_words():
    with mpmath.workdps(40):
        assert close(hpl_eval((0, 0, 1), "1/2"), oracles.li(3, mp(1) / 2, 200), 1e-30)
        for k in range(1, 6):
            x = mp(3) / 10
            assert close(hpl_eval((0,) * k, "3/10"), mpmath.log(x) ** k / mpmath.factorial(k), 1e-12)


def test_hpl_domain():
    with pytest.raises(ValueError):
        hpl_eval((0, 1), 1.5)
    with pytest.raises(ValueError):
        hpl_eval((2,), 0.5)
    with pytest.raises(ValueError):
        hpl_eval((0,) * 6, 0.5)
    with pytest.raises(ValueError):
        hpl_at_one((1, 0))


def test_hpl_at_one_mzvs():
    with mpmath.workdps(40):
        assert close(hpl_at_one((0, 1)), mpmath.zeta(2), 1e-30)
        assert close(hpl_at_one((0, 0, 1)), mpmath.zeta(3), 1e-30)
        assert close(hpl_at_one((-1,)), mpmath.log(2), 1e-30)
        # H_{0,1,1}(1) = zeta(3)
        assert close(hpl_at_one((0, 1, 1)), mpmath.zeta(3), 1e-30)


def test_general_letters_closed_forms():
    assert close(hpl_eval_general([CyclotomicLetter(4, 1)], 1), mpmath.log(2) / 2, 1e-11)
    assert close(hpl_eval_general([CyclotomicLetter(4, 0)], 1), mpmath.pi / 4, 1e-11)
    assert close(hpl_eval_general([RootLetter(2)], "1/2"), mpmath.log(q("3/4")), 1e-11)
    # y/(1+y^2) twice, integrated: (ln(1+x^2)/2)^2 / 2
    v = hpl_eval_general([CyclotomicLetter(4, 1), CyclotomicLetter(4, 1)], "1/2")
    assert close(v, (mpmath.log(q("5/4")) / 2) ** 2 / 2, 1e-11)


def test_letter_validation():
    with pytest.raises(ValueError):
        CyclotomicLetter(4, 2)
    with pytest.raises(ValueError):
        SqrtLetter("w99")
    with pytest.raises(ValueError):
        hpl_eval_general([RootLetter(Fraction(1, 4))], "1/2")


def test_hpl_letters_sign():
    sign, letters = hpl_letters((0, 1, 1, -1))
    assert sign == 1 and letters[1] == RootLetter(1)
    assert hpl_letters((1,))[0] == -1


def test_evaluators_agree_on_harmonic_words():
    rng = random.Random(7)
    words = [w for n in range(1, 4) for w in product((0, 1, -1), repeat=n) if w[-1] != 0]
    for w in rng.sample(words, 12) + [(0, 1, 0), (1, 0, 0)]:
        for x in ("3/10", "7/10", "19/20"):
            sign, letters = hpl_letters(w)
            a = hpl_eval(w, x)
            b = sign * hpl_eval_general(letters, x)
            assert close(a, b, 1e-10), (w, x)


def test_derivative_check():
    rng = random.Random(11)
    f = {0: lambda x: 1 / x, 1: lambda x: 1 / (1 - x), -1: lambda x: 1 / (1 + x)}
    h = mp("1e-5")
    with mpmath.workdps(40):
        for _ in range(20):
            n = rng.randint(1, 4)
            w = tuple(rng.choice((0, 1, -1)) for _ in range(n))
            for x in (mp("0.3"), mp("0.6")):
                fd = (hpl_eval(w, x + h, 40) - hpl_eval(w, x - h, 40)) / (2 * h)
                rest = hpl_eval(w[1:], x, 40) if len(w) > 1 else 1
                assert abs(fd - f[w[0]](x) * rest) < 1e-6, (w, x)


def test_derivative_check_root_letter():
    h = mp("1e-5")
    with mpmath.workdps(30):
        w = [RootLetter(3), CyclotomicLetter(3, 1)]
        x = mp("0.6")
        fd = (hpl_eval_general(w, x + h) - hpl_eval_general(w, x - h)) / (2 * h)
        assert abs(fd - hpl_eval_general(w[1:], x) / (x - 3)) < 1e-6


# ----------------------------------------------------------------- shuffle


def test_shuffle_examples():
    assert verify_shuffle((-1,), (0, 1), 0.5)
    assert verify_shuffle((), (1,), 0.37)
    assert verify_shuffle((-1,), (0, 1, -1), 0.3)


def test_shuffle_all_pairs_weight_le_4():
    words = [w for n in range(0, 4) for w in product((0, 1, -1), repeat=n)]
    for u in words:
        for v in words:
            if 1 <= len(u) + len(v) <= 4 and len(u) <= len(v):
                assert verify_shuffle(u, v, "1/2", 1e-10), (u, v)


# --------------------------------------------------------- argument relation


@pytest.mark.parametrize("x", ["1/10", "3/10", "7/10"])
def test_arg_transform(x):
    assert verify_arg_transform(x)


def test_arg_transform_limit_at_one():
    assert abs(arg_transform_rhs_at_one()) < 1e-8
    lhs, rhs = arg_transform_sides("999/1000")
    assert abs(lhs) < 1e-3 and abs(lhs - rhs) < 1e-10


# ------------------------------------------------------------------ Mellin


def test_mellin_simple_moments():
    with mpmath.workdps(30):
        assert close(mellin_moment(Integrand(pole=Fraction(-1)), 0), mpmath.log(2), 1e-20)
        assert close(mellin_moment(Integrand(power=3), 1), mp(1) / 5, 1e-12)
        for k in range(0, 4):
            for N in range(0, 5):
                assert close(mellin_moment(lambda x, k=k: x**k, N), mp(1) / (N + k + 1), 1e-12)


def test_mellin_h011_moment():
    # integrate x^2 H_{0,1,1}(x)/(1+x) at higher precision as the oracle
    f = Integrand(word=(0, 1, 1), pole=Fraction(-1))
    with mpmath.workdps(40):
        ref = mpmath.quad(lambda x: x**2 * hpl_eval((0, 1, 1), x, 40) / (1 + x), [0, 1])
        assert close(mellin_moment(f, 2), ref, 1e-15)


def test_integrand_validation():
    with pytest.raises(ValueError):
        Integrand(pole=Fraction(1, 2))
    with pytest.raises(ValueError):
        Integrand(power=-1)
    with pytest.raises(ValueError):
        mellin_moment(Integrand(), -1)


@pytest.mark.parametrize("N", [1, 2, 5])
def test_mellin_identity(N):
    assert verify_mellin_identity(N)


def test_mellin_identity_lhs_values():
    assert mellin_identity_sides(1)[0] == -1
    assert mellin_identity_sides(2)[0] == Fraction(-9, 16)


# --------------------------------------------------------------- elliptic


def test_T_positive_and_matches_definition():
    for x in ("1/10", "1/2", "9/10"):
        assert eval_T(x) > 0
    with mpmath.workdps(30):
        x = mp("0.3")
        direct = mpmath.quad(lambda y: 1 / (y * mpmath.sqrt(1 - y) * mpmath.sqrt(1 - x / y)), [x, 1])
        assert close(eval_T(x), direct, 1e-12)
        # complete elliptic integral, parameter m = 1 - x
        assert close(eval_T(x), 2 * mpmath.ellipk(1 - x), 1e-25)


def test_elliptic_moments():
    assert elliptic_moment_exact(0) == 4
    assert elliptic_moment_exact(1) == Fraction(16, 9)
    for N in range(0, 5):
        ex = elliptic_moment_exact(N)
        assert close(mellin_moment(Integrand(elliptic=True), N), q(ex), 1e-6)


# ------------------------------------------------------------ H* integrals


def test_hstar_sqrt_letter_closed_form():
    with mpmath.workdps(30):
        x = mp("0.3")
        ref = mpmath.asin(mp(-3) / 4) - mpmath.asin((x - 4) / 4)
        assert close(hstar_eval([SqrtLetter("w12")], "3/10"), ref, 1e-11)
        ref17 = mpmath.quad(lambda y: 1 / mpmath.sqrt(y * (8 + y)), [x, 1])
        assert close(hstar_eval([SqrtLetter("w17")], "3/10"), ref17, 1e-11)


def test_hstar_nested():
    # int_x^1 dy/y int_y^1 dz/z = ln^2(x)/2
    with mpmath.workdps(30):
        v = hstar_eval([RootLetter(0), RootLetter(0)], "1/2")
        assert close(v, mpmath.log(2) ** 2 / 2, 1e-11)
