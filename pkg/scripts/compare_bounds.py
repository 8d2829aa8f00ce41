#!/usr/bin/env python3
"""Print the linear-probing error bounds for the five scenarios, plus the
removal and temperature crossover thresholds, for a chosen parameter set.

Usage:
    python scripts/compare_bounds.py [--n 4] [--r 1] [--n-d 1]
        [--alpha 0.8] [--beta 0.1] [--gamma 0.5] [--delta 0.01] [--k 2]
"""

import argparse

from simgraph import (GraphParams, compare_bounds, removal_crossover_threshold,
                      temperature_nd_threshold)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=4)
    parser.add_argument("--r", type=int, default=1)
    parser.add_argument("--n-d", type=int, default=1)
    parser.add_argument("--alpha", type=float, default=0.8)
    parser.add_argument("--beta", type=float, default=0.1)
    parser.add_argument("--gamma", type=float, default=0.5)
    parser.add_argument("--delta", type=float, default=0.01)
    parser.add_argument("--k", type=int, default=2)
    args = parser.parse_args()

    params = GraphParams(n=args.n, r=args.r, n_d=args.n_d, alpha=args.alpha,
                         beta=args.beta, gamma=args.gamma)
    params.validate()

    print(f"params: n={args.n} r={args.r} n_d={args.n_d} alpha={args.alpha} "
          f"beta={args.beta} gamma={args.gamma}  delta={args.delta} k={args.k}")
    print()
    print(f"{'scenario':<20} {'lambda_term':>14} {'bound':>12}")
    for report in compare_bounds(params, args.delta, args.k):
        print(f"{report.scenario:<20} {report.lambda_term:>14.7f} "
              f"{report.bound_value:>12.7f}")
    print()
    print("removal crossover (gamma - beta):   "
          f"{removal_crossover_threshold(params):.7f}")
    print("temperature crossover (n_d scale):  "
          f"{temperature_nd_threshold(params):.7f}")


if __name__ == "__main__":
    main()
