#!/usr/bin/env python3
"""Print the shipped MZV reference data with numeric values of the basis."""
import argparse

import mpmath

from nestsum.constants import MZV_BASIS_COUNTS, MZV_BASIS_UP_TO_WEIGHT_7, DivergentConstantError


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--prec", type=int, default=20)
    args = ap.parse_args()

    print("basis size per weight (reference data, not derived):")
    print("  " + "  ".join(f"{w}:{n}" for w, n in sorted(MZV_BASIS_COUNTS.items())))
    print()
    print("basis elements up to weight 7:")
    for sym in MZV_BASIS_UP_TO_WEIGHT_7:
        try:
            val = mpmath.nstr(sym.evaluate(args.prec), args.prec)
        except DivergentConstantError:
            val = "(symbolic divergence)"
        print(f"  {str(sym):<24} {val}")


if __name__ == "__main__":
    main()
