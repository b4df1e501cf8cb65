"""Free-particle propagator for every end-point difference, all four methods.

    python scripts/free_particle_table.py --a 6 --mult 4
"""

import argparse

from finite_qm.free import METHODS, FreeParams, free_propagator


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--a", type=int, default=6)
    ap.add_argument("--mult", type=int, default=4, help="N = mult * a")
    ap.add_argument("--variant", default="standard", choices=["standard", "conjugate"])
    args = ap.parse_args()

    N = args.mult * args.a
    print(f"a={args.a}  N={N}  variant={args.variant}")
    print(f"{'D':>3} {'closed form':>26} {'|K|':>8} {'max spread':>11}")
    for d in range(args.a):
        p = FreeParams(args.a, 0, d, N, args.variant)
        res = {m: free_propagator(p.model(), p, m) for m in METHODS}
        z = res["closed_form"].value
        spread = max(abs(r.value - z) for r in res.values())
        print(f"{d:>3} {z.real:>12.8f}{z.imag:+.8f}j {abs(z):>8.5f} {spread:>11.1e}")


if __name__ == "__main__":
    main()
