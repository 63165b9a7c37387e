"""Scan the pairwise gap of random states under local depolarizing noise.

Prints the mean ratio Gamma(noisy) / Gamma(clean) against the predicted
factor (1-p)^2 (1-q)^2 on a (p, q) grid.
"""

import argparse

import numpy as np

from bargmann.certify import gamma
from bargmann.states import depolarize, random_density


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dim", type=int, default=3)
    ap.add_argument("--pairs", type=int, default=200)
    ap.add_argument("--steps", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    pairs = [(random_density(args.dim, rng), random_density(args.dim, rng)) for _ in range(args.pairs)]
    clean = np.array([gamma(r, s) for r, s in pairs])
    grid = np.linspace(0, 0.9, args.steps)
    print(f"{'p':>6}{'q':>6}{'mean ratio':>14}{'predicted':>12}{'max abs err':>14}")
    for p in grid:
        for q in grid:
            noisy = np.array([gamma(depolarize(r, p), depolarize(s, q)) for r, s in pairs])
            pred = (1 - p) ** 2 * (1 - q) ** 2
            err = np.max(np.abs(noisy - pred * clean))
            print(f"{p:6.2f}{q:6.2f}{np.mean(noisy / clean):14.8f}{pred:12.8f}{err:14.2e}")


if __name__ == "__main__":
    main()
