"""Graded vector spaces, tensor words and sparse multilinear operations.

Everything is exact: coefficients are `fractions.Fraction` throughout, so
structure-equation residuals that end in factorial denominators either vanish
identically or carry an honest nonzero witness.  All containers are treated
as immutable after construction; functions return fresh objects.

A tensor word is a plain tuple of 0-based basis indices.  An Operation stores
structure constants sparsely: absent input words evaluate to zero, and there
is no notion of "undefined".
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .errors import ArityError, BasisIndexError, ConventionError, PositionError

Scalar = Fraction
Word = tuple  # tuple[int, ...], 0-based basis indices

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class GradedSpace:
    """Finite ordered basis with integer degrees.  Labels must be unique."""

    labels: tuple
    degrees: tuple

    def __post_init__(self):
        if len(self.labels) != len(self.degrees):
            raise ValueError("labels and degrees differ in length")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate basis labels")
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))

    @property
    def dim(self) -> int:
        return len(self.labels)

    def degree(self, index: int) -> int:
        if not 0 <= index < self.dim:
            raise BasisIndexError(f"basis index {index} out of range for dim {self.dim}")
        return self.degrees[index]

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise BasisIndexError(f"unknown basis label {label!r}") from None

    def is_concentrated_in_degree_zero(self) -> bool:
        return all(d == 0 for d in self.degrees)

    def words(self, arity: int) -> Iterator[Word]:
        """All tensor words of the given length, lexicographic order."""
        return itertools.product(range(self.dim), repeat=arity)


def space(*basis) -> GradedSpace:
    """Convenience constructor: space(("e", 0), ("t", 0))."""
    labels = tuple(b[0] for b in basis)
    degrees = tuple(b[1] for b in basis)
    return GradedSpace(labels, degrees)


def word_degree(sp: GradedSpace, word: Word) -> int:
    """Sum of the degrees of the word's entries."""
    return sum(sp.degree(i) for i in word)


class LinearCombination:
    """Sparse linear combination with exact coefficients.

    Keys may be anything hashable (basis indices, words, pairs of words);
    a single combination never mixes key shapes.  Zero coefficients are
    dropped eagerly so that `==` is semantic equality.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | Iterable | None = None):
        data = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for key, coeff in items:
                coeff = Fraction(coeff)
                if coeff:
                    c = data.get(key, ZERO) + coeff
                    if c:
                        data[key] = c
                    else:
                        data.pop(key, None)
        self.terms = data

    @classmethod
    def single(cls, key, coeff=ONE) -> "LinearCombination":
        return cls({key: coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, key) -> Fraction:
        return self.terms.get(key, ZERO)

    def __add__(self, other: "LinearCombination") -> "LinearCombination":
        out = dict(self.terms)
        for key, coeff in other.terms.items():
            c = out.get(key, ZERO) + coeff
            if c:
                out[key] = c
            else:
                out.pop(key, None)
        result = LinearCombination()
        result.terms = out
        return result

    def __sub__(self, other: "LinearCombination") -> "LinearCombination":
        return self + other.scaled(-1)

    def scaled(self, factor) -> "LinearCombination":
        factor = Fraction(factor)
        result = LinearCombination()
        if factor:
            result.terms = {k: c * factor for k, c in self.terms.items()}
        return result

    def map_keys(self, fn) -> "LinearCombination":
        return LinearCombination((fn(k), c) for k, c in self.terms.items())

    def __eq__(self, other) -> bool:
        return isinstance(other, LinearCombination) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{k}" for k, c in sorted(self.terms.items(), key=lambda t: repr(t[0])))


def combination_builder():
    """Mutable accumulator: dict key -> Fraction, finished by `finish_combination`."""
    return {}


def accumulate(acc: dict, key, coeff) -> None:
    c = acc.get(key, ZERO) + coeff
    if c:
        acc[key] = c
    else:
        acc.pop(key, None)


def finish_combination(acc: dict) -> LinearCombination:
    out = LinearCombination()
    out.terms = acc
    return out


@dataclass(frozen=True, eq=False)
class Operation:
    """Homogeneous multilinear map given by sparse structure constants.

    `table` maps input words (length = arity) to combinations over output
    basis indices.  Entries absent from the table are zero.  Homogeneity
    (output degree = input degree + `degree`) is *checked*, not enforced,
    by `check_homogeneous`.
    """

    space: GradedSpace
    arity: int
    degree: int
    table: Mapping = field(default_factory=dict)

    def __post_init__(self):
        if self.arity < 1:
            raise ArityError(f"arity must be >= 1, got {self.arity}")
        clean = {}
        for word, combo in self.table.items():
            word = tuple(word)
            if len(word) != self.arity:
                raise ArityError(f"table word {word} has length {len(word)}, arity is {self.arity}")
            for i in word:
                if not 0 <= i < self.space.dim:
                    raise BasisIndexError(f"basis index {i} out of range in word {word}")
            if not isinstance(combo, LinearCombination):
                combo = LinearCombination(combo)
            if not combo.is_zero():
                clean[word] = combo
        object.__setattr__(self, "table", clean)

    @classmethod
    def zero(cls, sp: GradedSpace, arity: int, degree: int) -> "Operation":
        return cls(sp, arity, degree, {})

    def evaluate(self, word: Word) -> LinearCombination:
        """Structure constants of the given input word (zero when absent)."""
        word = tuple(word)
        if len(word) != self.arity:
            raise ArityError(f"word length {len(word)} != arity {self.arity}")
        return self.table.get(word, LinearCombination())

    def evaluate_combination(self, words: LinearCombination) -> LinearCombination:
        """Linear extension of `evaluate` to a combination of input words."""
        acc = {}
        for word, coeff in words:
            for out, c in self.evaluate(word):
                accumulate(acc, out, c * coeff)
        return finish_combination(acc)

    def is_zero(self) -> bool:
        return not self.table

    def __add__(self, other: "Operation") -> "Operation":
        if self.space != other.space or self.arity != other.arity:
            raise ArityError("cannot add operations on different spaces or arities")
        acc = {w: dict(c.terms) for w, c in self.table.items()}
        for word, combo in other.table.items():
            slot = acc.setdefault(word, {})
            for out, c in combo:
                accumulate(slot, out, c)
        table = {w: finish_combination(d) for w, d in acc.items()}
        return Operation(self.space, self.arity, self.degree, table)

    def scaled(self, factor) -> "Operation":
        factor = Fraction(factor)
        if not factor:
            return Operation.zero(self.space, self.arity, self.degree)
        return Operation(self.space, self.arity, self.degree,
                         {w: c.scaled(factor) for w, c in self.table.items()})

    def __neg__(self) -> "Operation":
        return self.scaled(-1)

    def __sub__(self, other: "Operation") -> "Operation":
        return self + other.scaled(-1)

    def __eq__(self, other) -> bool:
        """Equality as maps: same space, arity and structure constants.

        The declared degree is deliberately not compared; a zero operation
        carries an arbitrary one.
        """
        return (isinstance(other, Operation)
                and self.space == other.space
                and self.arity == other.arity
                and self.table == other.table)

    def __repr__(self):
        return f"Operation(arity={self.arity}, degree={self.degree}, entries={len(self.table)})"

    def first_nonzero_entry(self):
        """Smallest input word with a nonzero value, or None.  Used for witnesses."""
        if not self.table:
            return None
        word = min(self.table)
        return word, self.table[word]


def check_homogeneous(op: Operation) -> bool:
    """True iff every stored entry satisfies output degree = input degree + op degree."""
    for word, combo in op.table.items():
        in_deg = word_degree(op.space, word)
        for out, _ in combo:
            if op.space.degree(out) != in_deg + op.degree:
                return False
    return True


def compose_insert(outer: Operation, inner: Operation, position: int) -> Operation:
    """outer o (I_position (x) inner (x) I_rest), with the Koszul sign of the
    tensor rule for maps: inner of odd degree picks up the parity of whatever
    it moves past.

    On a word (x_1, ..., x_{i+j-1}) the result is
    (-1)^(|inner| * (|x_1|+...+|x_position|)) *
    outer(x_1, ..., x_position, inner(next j letters), remaining letters).
    """
    if outer.space != inner.space:
        raise ArityError("compose_insert requires operations on the same space")
    if not 0 <= position < outer.arity:
        raise PositionError(f"position {position} out of range 0..{outer.arity - 1}")
    sp = outer.space
    i, j = outer.arity, inner.arity
    inner_odd = inner.degree % 2 != 0
    acc = {}
    for wout, cout in outer.table.items():
        target = wout[position]
        for win, cin in inner.table.items():
            c = cin[target]
            if not c:
                continue
            word = wout[:position] + win + wout[position + 1:]
            sign = 1
            if inner_odd and word_degree(sp, word[:position]) % 2:
                sign = -1
            slot = acc.setdefault(word, {})
            for out, co in cout:
                accumulate(slot, out, co * c * sign)
    table = {w: finish_combination(d) for w, d in acc.items()}
    return Operation(sp, i + j - 1, outer.degree + inner.degree, table)


HAT = "hat"
UNHAT = "unhat"


def family_degree(convention: str, arity: int) -> int:
    """Declared degree of the arity-n member: -1 under hat, n-2 under unhat."""
    if convention == HAT:
        return -1
    if convention == UNHAT:
        return arity - 2
    raise ValueError(f"unknown convention {convention!r}")


@dataclass(frozen=True, eq=False)
class OperationFamily:
    """Arity-indexed family of operations under one degree convention.

    `max_arity` is the explicit truncation cap: residuals at n <= max_arity
    treat any absent arity (and every arity beyond the cap) as the zero
    operation.
    """

    convention: str
    space: GradedSpace
    max_arity: int
    ops: Mapping = field(default_factory=dict)

    def __post_init__(self):
        if self.convention not in (HAT, UNHAT):
            raise ValueError(f"convention must be 'hat' or 'unhat', got {self.convention!r}")
        if self.max_arity < 1:
            raise ArityError("max_arity must be >= 1")
        clean = {}
        for n, op in self.ops.items():
            if not 1 <= n <= self.max_arity:
                raise ArityError(f"arity {n} outside 1..{self.max_arity}")
            if op.space != self.space:
                raise ArityError(f"operation at arity {n} lives on a different space")
            if op.arity != n:
                raise ArityError(f"operation of arity {op.arity} filed under {n}")
            expected = family_degree(self.convention, n)
            if op.degree != expected:
                raise ConventionError(
                    f"{self.convention} family requires degree {expected} at arity {n}, got {op.degree}")
            if not op.is_zero():
                clean[n] = op
        object.__setattr__(self, "ops", clean)

    def operation(self, arity: int) -> Operation:
        if arity in self.ops:
            return self.ops[arity]
        return Operation.zero(self.space, arity, family_degree(self.convention, arity))

    def arities(self):
        return sorted(self.ops)

    def __eq__(self, other) -> bool:
        return (isinstance(other, OperationFamily)
                and self.convention == other.convention
                and self.space == other.space
                and self.ops == other.ops)

    def __repr__(self):
        return f"OperationFamily({self.convention}, arities={self.arities()}, cap={self.max_arity})"
