"""Closed-form amplitudes against brute-force double quadrature on the dimensionless desk grid."""

import argparse
import time

from matterwave.oracle import QuadratureSpec, desk_sweep


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--rule", choices=("composite-simpson", "gauss-legendre"), default="composite-simpson")
    parser.add_argument("--max-phase-step", type=float, default=2.0)
    args = parser.parse_args()
    spec = QuadratureSpec(rule=args.rule, max_phase_step=args.max_phase_step)
    start = time.perf_counter()
    worst = 0.0
    for b, d, T, n, err in desk_sweep(spec):
        worst = max(worst, err)
        print(f"b={b:<5g} d={d:<3g} T={T:<4g} N={n}  max rel err {err:.2e}")
    print(f"worst {worst:.2e} in {time.perf_counter() - start:.1f} s")


if __name__ == "__main__":
    main()
