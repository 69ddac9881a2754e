"""Cumulative Gauss-Legendre panels for iterated integrals.

The path ``[0, L]`` is cut into panels whose half-length is at most
``rho`` times the distance to the nearest singularity of any letter, so
the panels grade geometrically towards nearby singular points.  On each
panel the running integral is carried at the nodes through a spectral
integration matrix, which makes every nesting level cost O(n^2) per
panel.
"""
from __future__ import annotations

import threading
from typing import Callable, Sequence

import mpmath

_rule_cache: dict = {}
_rule_lock = threading.Lock()


def gauss_legendre(n: int):
    """Nodes, weights and cumulative integration matrix on [-1, 1]."""
    key = (n, mpmath.mp.prec)
    with _rule_lock:
        hit = _rule_cache.get(key)
    if hit is not None:
        return hit
    nodes, weights = [], []
    for i in range(1, n + 1):
        x = mpmath.cos(mpmath.pi * (i - mpmath.mpf(1) / 4) / (n + mpmath.mpf(1) / 2))
        for _ in range(100):
            p0, p1 = mpmath.mpf(1), x
            for k in range(2, n + 1):
                p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
            dp = n * (x * p1 - p0) / (x * x - 1)
            dx = p1 / dp
            x -= dx
            if abs(dx) < mpmath.eps * 4:
                break
        p0, p1 = mpmath.mpf(1), x
        for k in range(2, n + 1):
            p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
        dp = n * (x * p1 - p0) / (x * x - 1)
        nodes.append(x)
        weights.append(2 / ((1 - x * x) * dp * dp))
    nodes = nodes[::-1]
    weights = weights[::-1]

    def legendre_table(t):
        P = [mpmath.mpf(1), t]
        for k in range(2, n + 1):
            P.append(((2 * k - 1) * t * P[-1] - (k - 1) * P[-2]) / k)
        return P

    Pn = [legendre_table(x) for x in nodes]
    # integral of P_k from -1 to node_i
    IP = []
    for i, t in enumerate(nodes):
        P = Pn[i]
        row = [t + 1]
        for k in range(1, n):
            row.append((P[k + 1] - P[k - 1]) / (2 * k + 1))
        IP.append(row)
    M = [[mpmath.mpf(0)] * n for _ in range(n)]
    for j in range(n):
        coef = [(2 * k + 1) * weights[j] * Pn[j][k] / 2 for k in range(n)]
        for i in range(n):
            M[i][j] = mpmath.fsum(c * ip for c, ip in zip(coef, IP[i]))
    rule = (nodes, weights, M)
    with _rule_lock:
        _rule_cache[key] = rule
    return rule


def make_panels(length, singularities: Sequence[complex], rho=0.5, max_panels: int = 2000):
    """Breakpoints of [0, length] graded against the given singular points."""
    length = mpmath.mpf(length)

    def dist(a, b):
        d = mpmath.inf
        for s in singularities:
            s = mpmath.mpc(s)
            re = min(max(s.real, a), b)
            d = min(d, abs(s - re))
        return d

    out = []
    stack = [(mpmath.mpf(0), length)]
    while stack:
        a, b = stack.pop()
        d = dist(a, b)
        if (b - a) / 2 <= rho * d or len(out) + len(stack) > max_panels:
            out.append((a, b))
        else:
            m = (a + b) / 2
            stack.append((m, b))
            stack.append((a, m))
    out.sort()
    return out


def iterated_integral(fns: Sequence[Callable], length, singularities, n: int, rho=0.5):
    """``int_0^L f_1(t_1) int_0^{t_1} f_2(t_2) ... dt`` with f_1 outermost."""
    if not fns:
        return mpmath.mpf(1)
    panels = make_panels(length, singularities, rho)
    nodes, weights, M = gauss_legendre(n)
    pts = []
    for a, b in panels:
        h = (b - a) / 2
        c = (a + b) / 2
        pts.append([c + h * x for x in nodes])
    # values of the current inner function at every node
    inner = [[mpmath.mpf(1)] * n for _ in panels]
    total = mpmath.mpf(0)
    for f in reversed(fns):
        start = mpmath.mpf(0)
        new = []
        for (a, b), ys, vals in zip(panels, pts, inner):
            h = (b - a) / 2
            g = [f(y) * v for y, v in zip(ys, vals)]
            new.append([start + h * mpmath.fdot(M[i], g) for i in range(n)])
            start += h * mpmath.fdot(weights, g)
        inner = new
        total = start
    return total
