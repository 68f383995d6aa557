#!/usr/bin/env python3
"""Walk three concrete algebras through the commutator pipeline.

For each example the script checks the homotopy-associative equations,
applies the gamma symmetrization and checks the pre-Lie equations, then
applies beta and checks the Lie equations, in both degree conventions.
"""

import sys

sys.path.insert(0, "src")

from hopla.equations import ASSOC, LIE, PRELIE, EquationFlavor, residual
from hopla.functors import commutator, suspend_family
from hopla.graded import UNHAT, OperationFamily
from hopla.samples import dual_numbers, nilpotent_dga, upper_corner

MAX_ARITY = 4


def report(label, family):
    conv = family.convention
    print(f"== {label} ({conv})")
    for kind, fam in ((ASSOC, family),
                      (PRELIE, commutator(family, "gamma")),
                      (LIE, commutator(commutator(family, "gamma"), "beta"))):
        verdicts = []
        for n in range(1, MAX_ARITY + 1):
            res = residual(fam, EquationFlavor(kind, conv), n, check_symmetry=False)
            verdicts.append("0" if res.vanishes() else "X")
        print(f"   {kind:<7} residuals n=1..{MAX_ARITY}: {' '.join(verdicts)}")


def main():
    examples = []
    for name, (sp, mu) in (("dual numbers K[t]/(t^2)", dual_numbers()),
                           ("matrix corner span{E11, E12}", upper_corner())):
        examples.append((name, OperationFamily(UNHAT, sp, MAX_ARITY, {2: mu})))
    examples.append(("three-dimensional dga", nilpotent_dga()))

    for name, family in examples:
        report(name, family)
        report(name + ", suspended", suspend_family(family))
    print("all residual columns above should read 0 everywhere")


if __name__ == "__main__":
    main()
