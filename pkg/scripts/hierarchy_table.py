"""Print which scenario levels separate the constructed commuting/noncommuting pairs.

For every construction, each level reports whether its data differ between
the two families (a level can only certify coherence if they do).
"""

import argparse

import numpy as np

from bargmann.certify import commutator_oracle, total_gap
from bargmann.counterexamples import (
    appendix_d4_family,
    appendix_qutrit_family,
    prop_d4_w3,
    prop_qutrit_w2,
)
from bargmann.invariants import evaluate, scenario_w2n, scenario_w4n, scenario_wle3n


def separates(sc, a, b, tol):
    return float(np.max(np.abs(evaluate(sc, a).as_array() - evaluate(sc, b).as_array()))) > tol


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[2, 3, 5])
    ap.add_argument("--tol", type=float, default=1e-12)
    args = ap.parse_args()

    pairs = [prop_qutrit_w2(), prop_d4_w3()]
    for n in args.n:
        pairs += [appendix_qutrit_family(n), appendix_d4_family(n)]

    print(f"{'construction':<18}{'n':>3}{'d':>3}  {'W2':>5} {'W<=3':>5} {'W4':>5}  {'gap':>10}")
    for p in pairs:
        n, d = len(p.commuting), p.commuting.dim
        assert commutator_oracle(p.commuting) and not commutator_oracle(p.coherent)
        cols = [separates(sc(n), p.commuting, p.coherent, args.tol)
                for sc in (scenario_w2n, scenario_wle3n, scenario_w4n)]
        marks = "  ".join(f"{'yes' if c else 'no':>4}" for c in cols)
        print(f"{p.name:<18}{n:>3}{d:>3}  {marks}  {total_gap(p.coherent):10.3e}")


if __name__ == "__main__":
    main()
