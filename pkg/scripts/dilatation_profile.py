"""Radial ratio profile (1-|g(r tau)|)/(1-r) for r = 1 - 2^-k.

Shows how quickly the boundary dilatation estimate settles; a parabolic
map converges much more slowly near the boundary point than a hyperbolic one.
"""

import argparse

from bidisc.dynamics import boundary_dilatation
from bidisc.hyperbolic import UnitBoundaryPoint


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("expr", help="one-variable DSL expression, e.g. '(3*x+1)/(x+3)'")
    ap.add_argument("--theta", type=float, default=0.0)
    args = ap.parse_args()
    est = boundary_dilatation(args.expr, UnitBoundaryPoint(args.theta))
    print("r,ratio")
    for r, ratio in est.samples:
        print(f"{r!r},{ratio!r}")
    print(f"# lambda = {est.lam:.8g} (tail window {est.window_min:.8g} .. {est.window_max:.8g})")


if __name__ == "__main__":
    main()
