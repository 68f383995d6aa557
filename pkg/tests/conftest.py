"""Shared fixtures and independent test oracles.

The oracles here deliberately avoid the library's own code paths:

* `koszul_by_inversions` counts inversion pairs instead of decomposing into
  adjacent transpositions;
* `poly_mod_t2_product` multiplies truncated polynomials directly;
* `matrix_product` multiplies 2x2 matrices entrywise;
* `prelie_residual_shuffle_form` evaluates the element-level unshuffle
  expansion of the pre-Lie residuals (both conventions) rather than the
  composition form the library uses.
"""

import itertools
import random
from fractions import Fraction

import pytest

from hopla.graded import (HAT, GradedSpace, LinearCombination, Operation,
                          OperationFamily)
from hopla.permutations import sh, sign
from hopla.samples import dual_numbers, nilpotent_dga, upper_corner


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------

def koszul_by_inversions(sigma, degrees):
    """eps(sigma; x) as a product over inversion pairs of sigma."""
    eps = 1
    n = len(sigma)
    for i in range(n):
        for j in range(i + 1, n):
            if sigma[i] > sigma[j]:
                if degrees[sigma[i] - 1] % 2 and degrees[sigma[j] - 1] % 2:
                    eps = -eps
    return eps


def poly_mod_t2_product(p, q):
    """(a0 + a1 t)(b0 + b1 t) mod t^2, coefficients as pairs."""
    a0, a1 = p
    b0, b1 = q
    return (a0 * b0, a0 * b1 + a1 * b0)


# 2x2 matrices as 4-tuples (m00, m01, m10, m11); E11 and E12 span the corner.
E11 = (1, 0, 0, 0)
E12 = (0, 1, 0, 0)


def matrix_product(a, b):
    return (a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3])


def matrix_bracket(a, b):
    p, q = matrix_product(a, b), matrix_product(b, a)
    return tuple(x - y for x, y in zip(p, q))


def prelie_residual_shuffle_form(family, n):
    """Element-level unshuffle expansion of the arity-n pre-Lie residual.

    For a hat family this is

        sum_{i+j=n+1} [ sum over (j-1,1,i-2)-unshuffles s of the first n-1
            letters:  eps(s) mu_i(mu_j(x_{s(1)},...,x_{s(j)}), ..., x_n)
          + sum over (i-1,j-1)-unshuffles s:
            (-1)^(|x_{s(1)}|+...+|x_{s(i-1)}|) eps(s)
                mu_i(x_{s(1)},...,x_{s(i-1)}, mu_j(x_{s(i)},...,x_n)) ]

    and for an unhat family the same two sums with sgn(s) eps(s) and the
    prefactors (-1)^(j(i-1)) resp. (-1)^(i-1 + j(|x_{s(1)}|+...+|x_{s(i-1)}|)).

    Valid for partially symmetric families; used as a cross-check of the
    composition-form residual.
    """
    from hopla.permutations import koszul_sign

    sp = family.space
    hat = family.convention == HAT
    table = {}
    for word in itertools.product(range(sp.dim), repeat=n):
        degs = [sp.degree(i) for i in word[:-1]]
        acc = {}
        for i in range(1, n + 1):
            j = n + 1 - i
            if i not in family.ops or j not in family.ops:
                continue
            mu_i, mu_j = family.ops[i], family.ops[j]
            for s in sh(j - 1, 1, i - 2):
                eps = koszul_sign(s, degs)
                coeff = Fraction(eps)
                if not hat:
                    coeff *= sign(s)
                    if (j * (i - 1)) % 2:
                        coeff = -coeff
                mapped = [word[t - 1] for t in s]
                inner = mu_j.evaluate(tuple(mapped[:j]))
                for mid, c_in in inner:
                    outer = mu_i.evaluate(tuple([mid] + mapped[j:] + [word[-1]]))
                    for out, c_out in outer:
                        key = out
                        acc[key] = acc.get(key, Fraction(0)) + coeff * c_in * c_out
            for s in sh(i - 1, j - 1):
                eps = koszul_sign(s, degs)
                mapped = [word[t - 1] for t in s]
                prefix = sum(sp.degree(x) for x in mapped[:i - 1])
                if hat:
                    coeff = Fraction(eps)
                    if prefix % 2:
                        coeff = -coeff
                else:
                    coeff = Fraction(eps * sign(s))
                    if (i - 1 + j * prefix) % 2:
                        coeff = -coeff
                inner = mu_j.evaluate(tuple(mapped[i - 1:] + [word[-1]]))
                for mid, c_in in inner:
                    outer = mu_i.evaluate(tuple(mapped[:i - 1] + [mid]))
                    for out, c_out in outer:
                        acc[out] = acc.get(out, Fraction(0)) + coeff * c_in * c_out
        acc = {k: v for k, v in acc.items() if v}
        if acc:
            table[word] = LinearCombination(acc)
    degree = -2 if hat else n - 3
    return Operation(sp, n, degree, table)


def perm_square_two_sum_form(space, q_op, head, tail):
    """The two-sum expansion of the squared perm coderivation's weight
    (k -> k-n+1) component on one perm word, given the arity-n residual
    operation q_op.  Returns a dict keyed by perm words."""
    from hopla.coalgebra import wedge_normalize
    from hopla.permutations import koszul_sign

    n = q_op.arity
    k = len(head) + 1
    degs = [space.degree(x) for x in head]
    acc = {}
    for s in sh(n - 1, 1, k - n - 1):
        eps = koszul_sign(s, degs)
        mapped = [head[t - 1] for t in s]
        inner = q_op.evaluate(tuple(mapped[:n]))
        for mid, c in inner:
            ns, nh = wedge_normalize(space, tuple([mid] + mapped[n:]))
            if nh is None:
                continue
            key = (nh, tail)
            acc[key] = acc.get(key, Fraction(0)) + Fraction(eps * ns) * c
    for s in sh(k - n, n - 1):
        eps = koszul_sign(s, degs)
        mapped = [head[t - 1] for t in s]
        inner = q_op.evaluate(tuple(mapped[k - n:] + [tail]))
        for mid, c in inner:
            ns, nh = wedge_normalize(space, tuple(mapped[:k - n]))
            key = (nh, mid)
            acc[key] = acc.get(key, Fraction(0)) + Fraction(eps * ns) * c
    return {key: v for key, v in acc.items() if v}


# ---------------------------------------------------------------------------
# fixtures
# ---------------------------------------------------------------------------

@pytest.fixture
def flat2():
    return GradedSpace(("a", "b"), (0, 0))


@pytest.fixture
def graded2():
    return GradedSpace(("u", "v"), (0, 1))


@pytest.fixture
def kt2():
    return dual_numbers()


@pytest.fixture
def corner():
    return upper_corner()


@pytest.fixture
def dga():
    return nilpotent_dga()


@pytest.fixture
def rng():
    return random.Random(20240817)


def family_sum(a: OperationFamily, b: OperationFamily) -> OperationFamily:
    ops = {}
    for n in set(a.arities()) | set(b.arities()):
        ops[n] = a.operation(n) + b.operation(n)
    return OperationFamily(a.convention, a.space, max(a.max_arity, b.max_arity), ops)


def family_scale(a: OperationFamily, c) -> OperationFamily:
    ops = {n: op.scaled(c) for n, op in a.ops.items()}
    return OperationFamily(a.convention, a.space, a.max_arity, ops)
