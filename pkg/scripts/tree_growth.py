#!/usr/bin/env python3
"""Measure evaluation-tree growth against the 2^n bound.

For each number of atom occurrences n, samples random constant-free formulas
and reports the largest observed leaf count of the evaluation tree next to
the theoretical bound 2^n (attained by nested disjunctions of fresh atoms).

    python3 scripts/tree_growth.py --max-occurrences 16 --samples 50
"""

import argparse
import random

from sclsat.eval_tree import leaf_profile, se
from sclsat.formula_core import Con, Dis, Lit, Neg


def random_constant_free(rng, n, atoms):
    if n == 1:
        f = Lit(rng.choice(atoms))
    else:
        split = rng.randrange(1, n)
        f = (Con if rng.randrange(2) else Dis)(
            random_constant_free(rng, split, atoms),
            random_constant_free(rng, n - split, atoms),
        )
    return Neg(f) if rng.randrange(3) == 0 else f


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-occurrences", type=int, default=16)
    parser.add_argument("--samples", type=int, default=50)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    atoms = ["a", "b", "c", "d"]
    print(f"{'n':>3} {'max leaves':>11} {'2^n':>7}")
    for n in range(1, args.max_occurrences + 1):
        observed = max(
            leaf_profile(se(random_constant_free(rng, n, atoms))).leaf_count
            for _ in range(args.samples)
        )
        print(f"{n:>3} {observed:>11} {2**n:>7}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
