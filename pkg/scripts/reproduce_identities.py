#!/usr/bin/env python3
"""Recompute every checkable identity and print the residuals."""
import argparse
import time
from fractions import Fraction

import mpmath

from nestsum.algebra import HarmonicIndex
from nestsum.polylog import (
    Integrand,
    arg_transform_rhs_at_one,
    arg_transform_sides,
    elliptic_moment_exact,
    sigma_m211_closed_form,
    mellin_identity_sides,
    mellin_moment,
)
from nestsum.sums import binomial_nested_example, eval_binomial_nested, limit_to_infinity


def q(x):
    return mpmath.mpf(x.numerator) / x.denominator


def row(label, delta, t0):
    print(f"{label:<44} |Δ| = {mpmath.nstr(delta, 3):>10}   ({time.perf_counter() - t0:.2f}s)")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--prec", type=int, default=30)
    ap.add_argument("--max-N", type=int, default=6)
    args = ap.parse_args()
    mpmath.mp.dps = args.prec

    for N in range(1, args.max_N + 1):
        t0 = time.perf_counter()
        lhs, rhs = mellin_identity_sides(N)
        row(f"S_-2,1,1({N}) = Mellin representation", abs(q(lhs) - rhs), t0)

    t0 = time.perf_counter()
    r = limit_to_infinity(HarmonicIndex((-2, 1, 1)), args.prec)
    row(f"sigma_-2,1,1 = {mpmath.nstr(r.value, 15)} ({r.method})",
        abs(r.value - sigma_m211_closed_form(args.prec)), t0)

    for x in ("0.1", "0.3", "0.5", "0.7", "0.9"):
        t0 = time.perf_counter()
        lhs, rhs = arg_transform_sides(Fraction(x), args.prec)
        row(f"H_-1,0,1((1-x)/(1+x)) relation at x = {x}", abs(lhs - rhs), t0)
    t0 = time.perf_counter()
    row("same relation, right side at x = 1", abs(arg_transform_rhs_at_one(args.prec)), t0)

    for N in range(0, 5):
        t0 = time.perf_counter()
        ex = elliptic_moment_exact(N)
        num = mellin_moment(Integrand(elliptic=True), N, args.prec)
        row(f"Mellin moment of T, N = {N} (exact {ex})", abs(num - q(ex)), t0)

    print()
    print("nested binomial sum at N = 0..6:")
    for N in range(0, 7):
        print(f"  {N}: {eval_binomial_nested(binomial_nested_example(), N)}")


if __name__ == "__main__":
    main()
