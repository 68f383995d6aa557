#!/usr/bin/env python3
"""Stress the residual/coderivation engine on seeded random families.

For each seed: draw a partially symmetric family on a small graded space,
suspend it, extend to a coderivation of the Perm coalgebra, and confirm

  * the hat pre-Lie residual is minus the suspended unhat residual,
  * the squared coderivation's cogenerator components equal the residuals,
  * square-zero up to the weight cap is equivalent to all residuals
    vanishing.

Usage: python scripts/coderivation_scan.py [count] [max_arity] [cap]
"""

import random
import sys
import time

sys.path.insert(0, "src")

from hopla.graded import GradedSpace
from hopla.verify import random_unhat_family, coderivation_correspondence_witness


def main():
    count = int(sys.argv[1]) if len(sys.argv) > 1 else 25
    n_max = int(sys.argv[2]) if len(sys.argv) > 2 else 5
    cap = int(sys.argv[3]) if len(sys.argv) > 3 else 5
    space = GradedSpace(("u", "v"), (0, 1))
    failures = 0
    t0 = time.monotonic()
    for seed in range(count):
        rng = random.Random(seed)
        family = random_unhat_family(rng, space, (1, 2, 3), symmetrize="partial")
        witness = coderivation_correspondence_witness(family, n_max, cap)
        status = "ok" if witness is None else f"FAIL {witness}"
        if witness is not None:
            failures += 1
        print(f"seed {seed:3d}  arities {family.arities()}  {status}")
    dt = time.monotonic() - t0
    print(f"{count} families, n <= {n_max}, cap {cap}: "
          f"{count - failures} ok, {failures} failures, {dt:.2f}s")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
