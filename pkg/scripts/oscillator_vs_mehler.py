"""Three-factor oscillator propagator against the continuum Mehler kernel.

Scans omega*t for a fixed even scaling a; prints the largest deviation of
each method from the Mehler kernel.
"""

import argparse
import math
from fractions import Fraction

import numpy as np

from finite_qm.oscillator import METHODS, OscParams, osc_propagator


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--a", type=int, default=8)
    ap.add_argument("--mult", type=int, default=8)
    ap.add_argument("--steps", type=int, default=12)
    args = ap.parse_args()

    a, N = args.a, args.mult * args.a
    x0 = Fraction(a, N)
    print(f"a={a} N={N} x0={x0}")
    print(f"{'omega t':>8} " + " ".join(f"{m:>12}" for m in METHODS))
    for wt in np.linspace(0.1, math.pi - 0.1, args.steps):
        p = OscParams.unit_mode(a, float(wt))
        model = p.model(N)
        worst = {m: 0.0 for m in METHODS}
        for d in range(a - 1):
            for m in METHODS:
                worst[m] = max(worst[m], osc_propagator(model, p, x0, x0 + d, m).rel_dev)
        print(f"{wt:>8.4f} " + " ".join(f"{worst[m]:>12.1e}" for m in METHODS))


if __name__ == "__main__":
    main()
