"""Histogram how random qubit pairs fall into the second-order region classes."""

import argparse
from collections import Counter

import numpy as np

from bargmann.certify import commutator_oracle
from bargmann.invariants import evaluate, scenario_w2
from bargmann.loworder import QubitW2Tuple, qubit_w2_classify
from bargmann.states import StateFamily, random_commuting_family, random_density


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=5000)
    ap.add_argument("--commuting-fraction", type=float, default=0.5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    counts = Counter()
    for _ in range(args.count):
        if rng.random() < args.commuting_fraction:
            fam = random_commuting_family(2, 2, rng)
        else:
            fam = StateFamily([random_density(2, rng), random_density(2, rng)])
        region = qubit_w2_classify(QubitW2Tuple.from_invariants(evaluate(scenario_w2(), fam)))
        counts[region.value, commutator_oracle(fam)] += 1
    print(f"{'region':<12}{'commuting':>10}{'count':>8}")
    for (region, comm), k in sorted(counts.items()):
        print(f"{region:<12}{str(comm):>10}{k:>8}")


if __name__ == "__main__":
    main()
