"""Degree-shift and commutator functors between the algebra flavors.

Suspension mediates the two degree conventions: an arity-n map of degree
n-2 on V corresponds to an arity-n map of degree -1 on the shifted space sV
(degrees raised by one) via a parity-dependent sign:

    n even:   hat(s x_1, ..., s x_n) =  (-1)^(|x_1|+|x_3|+...+|x_{n-1}|) s unhat(x_1, ..., x_n)
    n odd:    hat(s x_1, ..., s x_n) = -(-1)^(|x_2|+|x_4|+...+|x_{n-1}|) s unhat(x_1, ..., x_n)

with |x_i| taken in the unshifted space.  The leading minus for odd arities
belongs to the bijection and is applied in both directions, so the round
trip is the identity.

The commutators are (partial) symmetrizations applied arity-wise:
alpha sums over the whole symmetric group, beta over the (n-1,1)-unshuffles,
gamma over the group of the first n-1 slots; hat families symmetrize with
the Koszul action, unhat families with the signed Koszul action.  They send
homotopy associative structures to homotopy pre-Lie ones (gamma), homotopy
pre-Lie to homotopy Lie (beta), and homotopy associative to homotopy Lie
(alpha), with gamma then beta matching alpha term by term.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConventionError, GradingError, SymmetryError
from .graded import (HAT, UNHAT, GradedSpace, Operation, OperationFamily,
                     family_degree)
from .permutations import (MODE_FULL, MODE_PARTIAL, MODE_SHUFFLE, RHO1, RHO2,
                           failing_symmetry_generator, precompose_symmetrized)


def suspended_space(space: GradedSpace) -> GradedSpace:
    return GradedSpace(space.labels, tuple(d + 1 for d in space.degrees))


def desuspended_space(space: GradedSpace) -> GradedSpace:
    return GradedSpace(space.labels, tuple(d - 1 for d in space.degrees))


def suspension_sign(arity: int, base_degrees) -> int:
    """Sign of the degree-shift bijection on one input word; `base_degrees`
    are the degrees before shifting."""
    if arity % 2 == 0:
        s = sum(base_degrees[p] for p in range(0, arity, 2))
        return -1 if s % 2 else 1
    s = sum(base_degrees[p] for p in range(1, arity, 2))
    return 1 if s % 2 else -1


def _shift_operation(op: Operation, target_space: GradedSpace,
                     base_degrees_of, target_degree: int) -> Operation:
    table = {}
    for word, combo in op.table.items():
        sign = suspension_sign(op.arity, [base_degrees_of(i) for i in word])
        table[word] = combo.scaled(sign)
    return Operation(target_space, op.arity, target_degree, table)


def suspend_family(family: OperationFamily) -> OperationFamily:
    """unhat family on V  ->  hat family on sV."""
    if family.convention != UNHAT:
        raise ConventionError("suspend_family expects an unhat family")
    sV = suspended_space(family.space)
    base = family.space
    ops = {n: _shift_operation(op, sV, base.degree, -1)
           for n, op in family.ops.items()}
    return OperationFamily(HAT, sV, family.max_arity, ops)


def desuspend_family(family: OperationFamily) -> OperationFamily:
    """hat family on W  ->  unhat family on the downshifted space."""
    if family.convention != HAT:
        raise ConventionError("desuspend_family expects a hat family")
    base = desuspended_space(family.space)
    ops = {n: _shift_operation(op, base, base.degree, family_degree(UNHAT, n))
           for n, op in family.ops.items()}
    return OperationFamily(UNHAT, base, family.max_arity, ops)


def suspend_operation(op: Operation) -> Operation:
    """Shift a single arity-n map of any degree d to degree d - n + 1 on sV.

    Used to compare residuals across the two conventions: residuals are not
    family members but still transport along the same sign rule.
    """
    sV = suspended_space(op.space)
    return _shift_operation(op, sV, op.space.degree, op.degree - op.arity + 1)


COMMUTATOR_MODES = {"alpha": MODE_FULL, "beta": MODE_SHUFFLE, "gamma": MODE_PARTIAL}


def commutator(family: OperationFamily, name: str) -> OperationFamily:
    """Apply one of the three symmetrization functors arity-wise.

    No precondition is verified here (the theorems are of the form "if the
    input satisfies X the output satisfies Y"); the CLI layer checks input
    symmetry by default.
    """
    if name not in COMMUTATOR_MODES:
        raise ValueError(f"commutator name must be one of {sorted(COMMUTATOR_MODES)}")
    mode = COMMUTATOR_MODES[name]
    variant = RHO1 if family.convention == HAT else RHO2
    ops = {n: precompose_symmetrized(op, variant, mode)
           for n, op in family.ops.items()}
    return OperationFamily(family.convention, family.space, family.max_arity, ops)


# ---------------------------------------------------------------------------
# n-ary algebras as one-operation homotopy families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NaryEmbedding:
    """A plain n-ary algebra rebuilt as a graded one-operation family.

    The carrier has three copies of the base space, in degrees 0, n-2 and
    2n-4 (for n = 2 all three coincide).  `forgetful[i]` is the base index
    behind the i-th basis vector of the carrier.
    """

    n: int
    base: GradedSpace
    space: GradedSpace
    family: OperationFamily
    forgetful: tuple


def nary_embed(base: GradedSpace, mu: Operation, n: int,
               max_arity: int | None = None) -> NaryEmbedding:
    """Embed an n-ary operation on a degree-0 space as an unhat family with
    a single arity-n operation of degree n-2.

    The embedded operation returns mu of the forgetful images on input
    words of total degree 0 (landing in the degree n-2 copy) or total
    degree n-2 (landing in the degree 2n-4 copy), and zero otherwise.
    """
    if not base.is_concentrated_in_degree_zero():
        raise GradingError("nary_embed expects a base space concentrated in degree 0")
    if mu.arity != n:
        raise ValueError(f"operation arity {mu.arity} != n = {n}")
    cap = max_arity if max_arity is not None else 2 * n - 1
    dim = base.dim

    if n == 2:
        carrier = base
        forgetful = tuple(range(dim))
        op = Operation(carrier, 2, 0, dict(mu.table))
        family = OperationFamily(UNHAT, carrier, cap, {2: op})
        return NaryEmbedding(2, base, carrier, family, forgetful)

    copies = (0, n - 2, 2 * n - 4)
    labels = tuple(f"{lbl}@{d}" for d in copies for lbl in base.labels)
    degrees = tuple(d for d in copies for _ in range(dim))
    carrier = GradedSpace(labels, degrees)
    forgetful = tuple(i % dim for i in range(3 * dim))

    def in_copy(copy: int, base_index: int) -> int:
        return copy * dim + base_index

    table = {}
    for word, combo in mu.table.items():
        zero_word = tuple(in_copy(0, i) for i in word)
        table[zero_word] = combo.map_keys(lambda i: in_copy(1, i))
        for p in range(n):
            mixed = tuple(in_copy(1 if q == p else 0, i) for q, i in enumerate(word))
            existing = table.get(mixed)
            image = combo.map_keys(lambda i: in_copy(2, i))
            table[mixed] = image if existing is None else existing + image
    op = Operation(carrier, n, n - 2, table)
    family = OperationFamily(UNHAT, carrier, cap, {n: op})
    return NaryEmbedding(n, base, carrier, family, forgetful)


def nary_commutator_prelie(mu: Operation) -> Operation:
    """Antisymmetrize the first n-1 arguments with the sign of the
    permutation; partially associative input yields pre-Lie output."""
    if not mu.space.is_concentrated_in_degree_zero():
        raise GradingError("n-ary commutators live on degree-0 spaces")
    return precompose_symmetrized(mu, RHO2, MODE_PARTIAL)


def nary_commutator_lie(p: Operation, check_symmetry: bool = True) -> Operation:
    """Sum over the (n-1,1)-unshuffles with signs; pre-Lie input yields Lie
    output.  The full antisymmetrization over the whole symmetric group is
    (n-1)! times this."""
    if not p.space.is_concentrated_in_degree_zero():
        raise GradingError("n-ary commutators live on degree-0 spaces")
    if check_symmetry:
        bad = failing_symmetry_generator(p, RHO2, full=False)
        if bad is not None:
            raise SymmetryError(
                f"lie commutator expects a partially skew input; fails at {bad}",
                arity=p.arity, transposition=bad)
    return precompose_symmetrized(p, RHO2, MODE_SHUFFLE)
