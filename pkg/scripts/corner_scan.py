"""Sampled invariance over a grid of corners, written as CSV (theta1, theta2, invariant, screen).

Useful for looking at the shape of the corner part of the Wolff set, e.g.
the diagonal of the averaging map.
"""

import argparse
import csv
import math
import sys

from bidisc.dsl import load_map
from bidisc.hyperbolic import corner
from bidisc.wolff import corner_screen, verify_point


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("map")
    ap.add_argument("--n", type=int, default=24, help="angles per coordinate")
    ap.add_argument("--samples", type=int, default=256)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    f = load_map(args.map)
    w = csv.writer(sys.stdout)
    w.writerow(["theta1", "theta2", "invariant", "screen"])
    for i in range(args.n):
        for j in range(args.n):
            a, b = -math.pi + 2 * math.pi * (i + 1) / args.n, -math.pi + 2 * math.pi * (j + 1) / args.n
            bp = corner(a, b)
            try:
                screen = f"{corner_screen(f, bp):.6g}"
            except ArithmeticError:
                screen = ""
            v = verify_point(f, bp, n_samples=args.samples, seed=args.seed)
            w.writerow([f"{a:.6f}", f"{b:.6f}", int(v.invariant), screen])


if __name__ == "__main__":
    main()
