"""Small concrete algebras used in tests, demos and fixtures."""

from __future__ import annotations

from .graded import (HAT, UNHAT, GradedSpace, LinearCombination, Operation,
                     OperationFamily, space)


def _product_operation(sp: GradedSpace, products: dict, arity: int = 2, degree: int = 0) -> Operation:
    table = {word: LinearCombination(combo) for word, combo in products.items()}
    return Operation(sp, arity, degree, table)


def dual_numbers() -> tuple:
    """K[t]/(t^2) in degree 0: unit e, nilpotent t."""
    sp = space(("e", 0), ("t", 0))
    e, t = 0, 1
    mu = _product_operation(sp, {
        (e, e): {e: 1},
        (e, t): {t: 1},
        (t, e): {t: 1},
    })
    return sp, mu


def upper_corner() -> tuple:
    """The associative span of the matrix units E11, E12: a*a = a, a*b = b,
    b*a = b*b = 0.  Noncommutative, so its commutator [a,b] = b is nonzero."""
    sp = space(("a", 0), ("b", 0))
    a, b = 0, 1
    mu = _product_operation(sp, {
        (a, a): {a: 1},
        (a, b): {b: 1},
    })
    return sp, mu


def commutator_bracket(sp: GradedSpace, mu: Operation) -> Operation:
    """[x, y] = mu(x, y) - mu(y, x) on a degree-0 space."""
    table = {}
    for x in range(sp.dim):
        for y in range(sp.dim):
            combo = mu.evaluate((x, y)) - mu.evaluate((y, x))
            if not combo.is_zero():
                table[(x, y)] = combo
    return Operation(sp, 2, 0, table)


def nilpotent_dga() -> OperationFamily:
    """A 3-dimensional unital associative algebra with a nonzero square-zero
    differential of degree -1, packaged as an unhat family:

        basis e (degree 0, unit), t (degree 0), s (degree -1)
        d(t) = s, all other differentials zero
        t*t = t*s = s*t = s*s = 0

    The Leibniz rule holds: d(e*t) = d(t) = s = d(e)t + e d(t).
    """
    sp = space(("e", 0), ("t", 0), ("s", -1))
    e, t, s = 0, 1, 2
    d = Operation(sp, 1, -1, {(t,): LinearCombination({s: 1})})
    mu = _product_operation(sp, {
        (e, e): {e: 1},
        (e, t): {t: 1},
        (t, e): {t: 1},
        (e, s): {s: 1},
        (s, e): {s: 1},
    })
    return OperationFamily(UNHAT, sp, 4, {1: d, 2: mu})


def associative_family(sp: GradedSpace, mu: Operation, max_arity: int = 4) -> OperationFamily:
    """Wrap a degree-0 binary product as an unhat family (single arity 2)."""
    return OperationFamily(UNHAT, sp, max_arity, {2: mu})
