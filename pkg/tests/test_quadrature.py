from fractions import Fraction

import mpmath
from hypothesis import given, strategies as st

from nestsum.algebra import LinComb, shuffle
from nestsum.gpl import G, series_at_zero, strip_left, strip_right
from nestsum.quadrature import gauss_legendre, iterated_integral, make_panels


def test_gauss_legendre_exact_on_polynomials():
    with mpmath.workdps(30):
        nodes, weights, M = gauss_legendre(8)
        for k in range(16):
            exact = mpmath.mpf(0) if k % 2 else mpmath.mpf(2) / (k + 1)
            assert abs(mpmath.fsum(w * x**k for x, w in zip(nodes, weights)) - exact) < 1e-25
        # cumulative matrix integrates x^3 from -1 to each node
        for i, x in enumerate(nodes):
            v = mpmath.fsum(M[i][j] * nodes[j] ** 3 for j in range(8))
            assert abs(v - (x**4 - 1) / 4) < 1e-25


def test_panels_grade_towards_singularity():
    panels = make_panels(1, [1.0 + 1e-6j], rho=0.5)
    assert panels[0][0] == 0 and panels[-1][1] == 1
    assert all(a < b for a, b in panels)
    widths = [b - a for a, b in panels]
    assert widths[-1] < widths[0] / 1000


def test_iterated_constants():
    with mpmath.workdps(30):
        one = lambda y: mpmath.mpf(1)  # noqa: E731
        for n in range(1, 5):
            v = iterated_integral([one] * n, mpmath.mpf(2), [], 12)
            assert abs(v - mpmath.mpf(2) ** n / mpmath.factorial(n)) < 1e-25


def _expand(terms, z):
    out = LinComb()
    for j, w, c in terms:
        prod = LinComb({tuple(w): c})
        for _ in range(j):
            nxt = LinComb()
            for u, cu in prod.items():
                nxt = nxt + shuffle(u, (z,)) * cu
            prod = nxt
        # G(z)^j = j! G(z^j) appears as j-fold shuffle of (z,)
        out = out + prod
    return out


words = st.lists(st.sampled_from([0, 1, -1, 2]), min_size=1, max_size=5).map(tuple)


@given(words)
def test_strip_right_is_exact_shuffle_identity(word):
    terms = strip_right(word, 0)
    assert all(not w or w[-1] != 0 for _, w, _ in terms)
    assert _expand(terms, 0) == LinComb({word: 1})


@given(words)
def test_strip_left_is_exact_shuffle_identity(word):
    terms = strip_left(word, 1)
    assert all(not w or w[0] != 1 for _, w, _ in terms)
    assert _expand(terms, 1) == LinComb({word: 1})


def test_series_and_G():
    with mpmath.workdps(30):
        x = mpmath.mpf("0.25")
        # G(2; x) = ln(1 - x/2)
        assert abs(series_at_zero((2,), x) - mpmath.log(1 - x / 2)) < 1e-25
        assert abs(G((0, 0), x) - mpmath.log(x) ** 2 / 2) < 1e-25
        # G(0,1;x) = -Li2(x)
        assert abs(G((0, 1), mpmath.mpf("0.8")) + mpmath.polylog(2, mpmath.mpf("0.8"))) < 1e-25
        assert abs(G((Fraction(3),), x) - mpmath.log(1 - x / 3)) < 1e-25
