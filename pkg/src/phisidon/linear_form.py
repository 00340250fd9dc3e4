"""Integer linear forms ``c_1 x_1 + ... + c_h x_h`` and property N.

Positions are 1-based throughout.  Subsets of positions are bitmasks where
bit ``i - 1`` stands for position ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Optional

from .exceptions import BudgetExceeded, PreconditionError

DEFAULT_MAX_ARITY = 20


@dataclass(frozen=True)
class IndexSet:
    """A subset of the positions ``{1, ..., h}``."""

    mask: int
    h: int

    def __post_init__(self):
        if self.h < 0:
            raise PreconditionError("arity must be nonnegative")
        if self.mask < 0 or self.mask >> self.h:
            raise PreconditionError(
                f"mask {self.mask:#b} is not a subset of 1..{self.h}"
            )

    @classmethod
    def from_indices(cls, indices: Iterable[int], h: int) -> "IndexSet":
        mask = 0
        for i in indices:
            if not 1 <= i <= h:
                raise PreconditionError(f"index {i} outside 1..{h}")
            mask |= 1 << (i - 1)
        return cls(mask, h)

    @classmethod
    def full(cls, h: int) -> "IndexSet":
        return cls((1 << h) - 1, h)

    @property
    def cardinality(self) -> int:
        return bin(self.mask).count("1")

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.h) if self.mask >> i & 1)

    def complement(self) -> "IndexSet":
        return IndexSet(((1 << self.h) - 1) ^ self.mask, self.h)

    def isdisjoint(self, other: "IndexSet") -> bool:
        return not self.mask & other.mask

    def __len__(self):
        return self.cardinality

    def __iter__(self):
        return iter(self.indices)

    def __repr__(self):
        return "{" + ",".join(map(str, self.indices)) + "}"


@dataclass(frozen=True)
class LinearForm:
    """A linear form with nonzero integer coefficients.

    ``positions`` records where the coefficients sat in a parent form when
    this form is a contraction; it is metadata and ignored by ``==``.
    """

    coeffs: tuple[int, ...]
    positions: Optional[tuple[int, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        if not coeffs:
            raise PreconditionError("a linear form needs at least one coefficient")
        for c in coeffs:
            if isinstance(c, bool) or not isinstance(c, int):
                raise PreconditionError(f"coefficient {c!r} is not an integer")
        if 0 in coeffs:
            raise PreconditionError(
                "zero coefficient: distinct tuples differing only in that "
                "position always collide, so no phi-Sidon set has two elements"
            )
        object.__setattr__(self, "coeffs", coeffs)
        if self.positions is not None and len(self.positions) != len(coeffs):
            raise PreconditionError("positions must match the coefficients")

    @property
    def h(self) -> int:
        return len(self.coeffs)

    @cached_property
    def norm(self) -> int:
        """Coefficient norm ``C = sum |c_i|``."""
        return sum(abs(c) for c in self.coeffs)

    @cached_property
    def subset_sums(self) -> tuple[int, ...]:
        """All ``2**h`` subset sums, indexed by mask."""
        sums = [0] * (1 << self.h)
        for mask in range(1, 1 << self.h):
            low = mask & -mask
            sums[mask] = sums[mask ^ low] + self.coeffs[low.bit_length() - 1]
        return tuple(sums)

    @cached_property
    def property_N(self) -> bool:
        return has_property_N(self)[0]

    @cached_property
    def nondegenerate(self) -> bool:
        """True iff all ``2**h`` subset sums are pairwise distinct.

        This is property N plus the absence of a nonempty subset summing to
        zero; it is exactly what makes every translate denominator
        ``s(J2^c) - s(J1^c)`` nonzero.
        """
        return len(set(self.subset_sums)) == len(self.subset_sums)

    def __call__(self, *xs: int) -> int:
        if len(xs) != self.h:
            raise PreconditionError(f"expected {self.h} arguments, got {len(xs)}")
        return sum(c * x for c, x in zip(self.coeffs, xs))

    def __str__(self):
        return ",".join(map(str, self.coeffs))


@dataclass(frozen=True)
class NWitness:
    """Disjoint nonempty position sets with equal coefficient sums."""

    I1: IndexSet
    I2: IndexSet
    common_sum: int

    def to_json(self) -> dict:
        return {
            "I1": list(self.I1.indices),
            "I2": list(self.I2.indices),
            "sum": str(self.common_sum),
        }


def parse_form(text: str) -> LinearForm:
    """Parse ``"1,-2,4"`` into a :class:`LinearForm`."""
    tokens = [t.strip() for t in str(text).split(",")]
    if tokens == [""]:
        raise PreconditionError("empty coefficient list")
    coeffs = []
    for tok in tokens:
        try:
            coeffs.append(int(tok))
        except ValueError:
            raise PreconditionError(f"coefficient {tok!r} is not an integer") from None
    return LinearForm(tuple(coeffs))


def _as_index_set(form: LinearForm, I) -> IndexSet:
    if isinstance(I, IndexSet):
        if I.h != form.h:
            raise PreconditionError(f"index set over 1..{I.h}, form has arity {form.h}")
        return I
    return IndexSet.from_indices(I, form.h)


def subset_sum(form: LinearForm, I) -> int:
    """Sum of the coefficients at positions ``I``; zero for the empty set."""
    return form.subset_sums[_as_index_set(form, I).mask]


def _orient(form: LinearForm, m1: int, m2: int) -> NWitness:
    # smaller set first, ties broken by the smallest position
    if (bin(m2).count("1"), m2 & -m2) < (bin(m1).count("1"), m1 & -m1):
        m1, m2 = m2, m1
    return NWitness(IndexSet(m1, form.h), IndexSet(m2, form.h), form.subset_sums[m1])


def has_property_N(
    form: LinearForm, max_arity: int = DEFAULT_MAX_ARITY
) -> tuple[bool, Optional[NWitness]]:
    """Decide property N, returning a witness when it fails.

    Assignments of positions to (neither, I1, I2) are walked as a ternary
    counter with position 1 as the least significant digit.  The first
    pair found is reported with the smaller set as ``I1`` (ties: the set
    holding the smallest position).
    """
    h = form.h
    if h > max_arity:
        raise BudgetExceeded(
            "arity too large for exhaustive check", 3**h, f"arity <= {max_arity}"
        )
    if form.nondegenerate:
        return True, None
    coeffs = form.coeffs
    # product() yields (d_h, ..., d_1) in lexicographic order == counter order
    for digits in product((0, 1, 2), repeat=h):
        m1 = m2 = 0
        diff = 0
        for pos, d in enumerate(reversed(digits)):
            if d == 1:
                m1 |= 1 << pos
                diff += coeffs[pos]
            elif d == 2:
                m2 |= 1 << pos
                diff -= coeffs[pos]
        if m1 and m2 and diff == 0:
            return False, _orient(form, m1, m2)
    return True, None


def vanishing_subset(form: LinearForm) -> Optional[IndexSet]:
    """First nonempty position set (by mask) whose coefficients sum to 0.

    Such a set does not break property N, but it rules out phi-Sidon sets
    with two or more elements; reported as a diagnostic.
    """
    for mask, s in enumerate(form.subset_sums):
        if mask and s == 0:
            return IndexSet(mask, form.h)
    return None


def contraction(form: LinearForm, J) -> LinearForm:
    """The form restricted to the positions in ``J``."""
    J = _as_index_set(form, J)
    if not J.mask:
        raise PreconditionError("the contraction to the empty set is the constant 0")
    parent = form.positions or tuple(range(1, form.h + 1))
    return LinearForm(
        tuple(form.coeffs[i - 1] for i in J.indices),
        positions=tuple(parent[i - 1] for i in J.indices),
    )
