"""Permutations, unshuffles, Koszul signs and the two signed actions on words.

Conventions pinned here and relied on everywhere else:

* A permutation is a tuple `p` of length n with 1-based values,
  `p[i] == sigma(i+1)`.
* The Koszul sign eps(sigma; x_1,...,x_n) is defined by
  x_1 ^ ... ^ x_n  =  eps * x_{sigma(1)} ^ ... ^ x_{sigma(n)},
  each adjacent swap of letters a, b contributing (-1)^(|a||b|).
* rho1_sigma(w) = eps(sigma) * (w_{sigma(1)}, ..., w_{sigma(n)});
  rho2_sigma(w) = sgn(sigma) * eps(sigma) * (same permuted word).
* As actions on elements these compose as a right action:
  acting by sigma and then by tau equals acting by sigma*tau
  (where (sigma*tau)(i) = sigma(tau(i))).  This is exactly the order
  forced by the composition law
  eps(sigma; w o tau) = eps(tau*sigma; w) * eps(tau; w).
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import BlockError, LengthError
from .graded import Operation, Word, accumulate, finish_combination

Perm = tuple  # tuple[int, ...], 1-based one-line notation

RHO1 = "rho1"
RHO2 = "rho2"

MODE_FULL = "full"          # sum over all of S_n
MODE_PARTIAL = "partial"    # sum over S_{n-1} acting on the first n-1 slots
MODE_SHUFFLE = "shuffle"    # sum over the (n-1,1)-unshuffles


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def compose(sigma: Perm, tau: Perm) -> Perm:
    """(sigma*tau)(i) = sigma(tau(i))."""
    if len(sigma) != len(tau):
        raise LengthError("cannot compose permutations of different lengths")
    return tuple(sigma[t - 1] for t in tau)


def inverse(sigma: Perm) -> Perm:
    inv = [0] * len(sigma)
    for i, s in enumerate(sigma):
        inv[s - 1] = i + 1
    return tuple(inv)


def _validate(sigma: Perm) -> None:
    if sorted(sigma) != list(range(1, len(sigma) + 1)):
        raise LengthError(f"{sigma} is not a permutation of 1..{len(sigma)}")


def sign(sigma: Perm) -> int:
    """Parity of sigma: +1 or -1."""
    _validate(sigma)
    sgn = 1
    seen = [False] * len(sigma)
    for start in range(len(sigma)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = sigma[k] - 1
            length += 1
        if length % 2 == 0:
            sgn = -sgn
    return sgn


def koszul_sign(sigma: Perm, degrees: Sequence[int]) -> int:
    """Koszul sign eps(sigma; x_1,...,x_n) for letters of the given degrees.

    Computed by decomposing sigma into adjacent transpositions, repeatedly
    moving the largest misplaced value into place; every adjacent swap of
    letters a, b contributes (-1)^(|a||b|).  The result does not depend on
    the decomposition (the tests cross-check with an inversion-pair count).
    """
    if len(sigma) != len(degrees):
        raise LengthError(f"permutation length {len(sigma)} != degree list length {len(degrees)}")
    line = list(sigma)
    eps = 1
    for value in range(len(line), 0, -1):
        pos = line.index(value)
        while pos < value - 1:
            a, b = line[pos], line[pos + 1]
            if degrees[a - 1] % 2 and degrees[b - 1] % 2:
                eps = -eps
            line[pos], line[pos + 1] = b, a
            pos += 1
    return eps


def permute_word(sigma: Perm, word: Word) -> Word:
    """The word (w_{sigma(1)}, ..., w_{sigma(n)})."""
    if len(sigma) != len(word):
        raise LengthError(f"permutation length {len(sigma)} != word length {len(word)}")
    return tuple(word[s - 1] for s in sigma)


def act(sigma: Perm, space, word: Word, variant: str):
    """Apply rho1 or rho2 to a word; returns (coefficient, permuted word)."""
    degrees = [space.degree(i) for i in word]
    coeff = koszul_sign(sigma, degrees)
    if variant == RHO2:
        coeff *= sign(sigma)
    elif variant != RHO1:
        raise ValueError(f"unknown action variant {variant!r}")
    return coeff, permute_word(sigma, word)


@lru_cache(maxsize=None)
def all_permutations(n: int) -> tuple:
    return tuple(itertools.permutations(range(1, n + 1)))


@lru_cache(maxsize=None)
def _unshuffles_cached(blocks: tuple) -> tuple:
    n = sum(blocks)
    results = []

    def fill(remaining: tuple, prefix: tuple, block_index: int):
        if block_index == len(blocks):
            results.append(prefix)
            return
        size = blocks[block_index]
        for chosen in itertools.combinations(remaining, size):
            rest = tuple(v for v in remaining if v not in chosen)
            fill(rest, prefix + chosen, block_index + 1)

    fill(tuple(range(1, n + 1)), (), 0)
    return tuple(sorted(results))


def unshuffles(blocks: Iterable[int]) -> list:
    """All (i_1,...,i_m)-unshuffles of S_n: increasing inside each block of
    positions.  Returned in lexicographic one-line order."""
    blocks = tuple(blocks)
    if not blocks:
        raise BlockError("at least one block is required")
    if any(b <= 0 for b in blocks):
        raise BlockError(f"block sizes must be positive, got {blocks}")
    return list(_unshuffles_cached(blocks))


def sh(*blocks: int) -> tuple:
    """Internal unshuffle enumeration tolerating degenerate block sizes:
    zero blocks are dropped, a negative block makes the sum empty."""
    if any(b < 0 for b in blocks):
        return ()
    kept = tuple(b for b in blocks if b > 0)
    if not kept:
        return ((),)  # S_0: the empty permutation
    return _unshuffles_cached(kept)


def extend_fixing_last(sigma: Perm, n: int) -> Perm:
    """View sigma in S_k as the element of S_n fixing the last n-k letters."""
    return tuple(sigma) + tuple(range(len(sigma) + 1, n + 1))


def _mode_permutations(mode: str, n: int) -> tuple:
    if mode == MODE_FULL:
        return all_permutations(n)
    if mode == MODE_PARTIAL:
        return tuple(extend_fixing_last(s, n) for s in all_permutations(n - 1))
    if mode == MODE_SHUFFLE:
        if n == 1:
            return (identity(1),)
        return sh(n - 1, 1)
    raise ValueError(f"unknown symmetrization mode {mode!r}")


def precompose_symmetrized(op: Operation, variant: str, mode: str) -> Operation:
    """Sum of op o rho_sigma over a family of permutations.

    mode 'full': sigma over S_n (the integral w_n);
    mode 'partial': sigma over S_{n-1} acting on the first n-1 slots;
    mode 'shuffle': sigma over the (n-1,1)-unshuffles.
    The variant picks rho1 or rho2.
    """
    n = op.arity
    perms = _mode_permutations(mode, n)
    sp = op.space
    acc = {}
    for sigma in perms:
        inv = inverse(sigma)
        for target_word, combo in op.table.items():
            word = permute_word(inv, target_word)
            degrees = [sp.degree(i) for i in word]
            coeff = koszul_sign(sigma, degrees)
            if variant == RHO2:
                coeff *= sign(sigma)
            elif variant != RHO1:
                raise ValueError(f"unknown action variant {variant!r}")
            slot = acc.setdefault(word, {})
            for out, c in combo:
                accumulate(slot, out, c * coeff)
    table = {w: finish_combination(d) for w, d in acc.items()}
    return Operation(sp, n, op.degree, table)


def _precompose_single(op: Operation, sigma: Perm, variant: str) -> Operation:
    """op o rho_sigma for one permutation, sparsely."""
    sp = op.space
    inv = inverse(sigma)
    acc = {}
    for target_word, combo in op.table.items():
        word = permute_word(inv, target_word)
        degrees = [sp.degree(i) for i in word]
        coeff = koszul_sign(sigma, degrees)
        if variant == RHO2:
            coeff *= sign(sigma)
        slot = acc.setdefault(word, {})
        for out, c in combo:
            accumulate(slot, out, c * coeff)
    return Operation(sp, op.arity, op.degree, {w: finish_combination(d) for w, d in acc.items()})


def _symmetry_generators(n_acted: int, full_length: int):
    """Adjacent transpositions generating S_{n_acted}, as elements of S_full."""
    for k in range(1, n_acted):
        tau = list(range(1, full_length + 1))
        tau[k - 1], tau[k] = tau[k], tau[k - 1]
        yield (k, k + 1), tuple(tau)


def failing_symmetry_generator(op: Operation, variant: str, full: bool):
    """First adjacent transposition under which op is not invariant, or None.

    `full=False` checks invariance on the first arity-1 slots only (the
    last slot rides along untouched); adjacent transpositions generate the
    whole group, so this is equivalent to checking every permutation.
    """
    n_acted = op.arity if full else op.arity - 1
    if n_acted <= 1:
        return None
    for label, tau in _symmetry_generators(n_acted, op.arity):
        if _precompose_single(op, tau, variant) != op:
            return label
    return None


def check_partial_symmetry(op: Operation, variant: str) -> bool:
    """True iff op o (rho_sigma (x) I_1) = op for all sigma in S_{arity-1}."""
    return failing_symmetry_generator(op, variant, full=False) is None


def check_full_symmetry(op: Operation, variant: str) -> bool:
    """True iff op o rho_sigma = op for all sigma in S_arity."""
    return failing_symmetry_generator(op, variant, full=True) is None

