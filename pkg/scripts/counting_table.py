#!/usr/bin/env python3
"""Table of basis sizes per weight, with the Lyndon count as a cross-check."""
import argparse

from nestsum.algebra import count_A, count_ADH, count_all, count_D, count_H, lyndon_words


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-weight", type=int, default=10)
    ap.add_argument("--lyndon-up-to", type=int, default=6,
                    help="enumerate Lyndon words explicitly up to this weight")
    args = ap.parse_args()

    print(f"{'w':>3} {'N_all':>8} {'N_A':>8} {'N_D':>8} {'N_H':>8} {'N_ADH':>8} {'Lyndon':>8}")
    for w in range(1, args.max_weight + 1):
        d = count_D(w) if w >= 2 else "-"
        adh = count_ADH(w) if w >= 2 else "-"
        ly = len(lyndon_words(None, w)) if w <= args.lyndon_up_to else "-"
        print(f"{w:>3} {count_all(w):>8} {count_A(w):>8} {d:>8} {count_H(w):>8} {adh:>8} {ly:>8}")


if __name__ == "__main__":
    main()
