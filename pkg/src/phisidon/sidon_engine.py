"""phi-images, brute-force Sidon verification and one-element extension.

Tuples over a set ``A`` are enumerated as an odometer over the elements of
``A`` in increasing order with the last coordinate moving fastest.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Optional

from .exceptions import BudgetExceeded, NotSidonError, PreconditionError
from .linear_form import IndexSet, LinearForm

DEFAULT_BUDGET = 10**8

# below this many tuples a process pool costs more than it saves
PARALLEL_MIN_TUPLES = 200_000


class FiniteSet:
    """An immutable, strictly increasing collection of distinct integers."""

    __slots__ = ("elements", "_members")

    def __init__(self, elements: Iterable[int]):
        elems = []
        for x in elements:
            if isinstance(x, bool) or not isinstance(x, int):
                try:
                    x = _exact_int(x)
                except (TypeError, ValueError):
                    raise PreconditionError(f"set element {x!r} is not an integer") from None
            elems.append(x)
        members = frozenset(elems)
        if len(members) != len(elems):
            raise PreconditionError("set elements must be distinct")
        if not elems:
            raise PreconditionError("set must be nonempty")
        self.elements = tuple(sorted(elems))
        self._members = members

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self._members

    def __eq__(self, other):
        if isinstance(other, FiniteSet):
            return self.elements == other.elements
        return NotImplemented

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        return f"FiniteSet({list(self.elements)})"

    def union(self, *xs: int) -> "FiniteSet":
        return FiniteSet(self.elements + xs)


def _exact_int(x) -> int:
    # numpy integer scalars and the like
    i = int(x)
    if i != x:
        raise ValueError
    return i


def _as_set(A) -> FiniteSet:
    return A if isinstance(A, FiniteSet) else FiniteSet(A)


@dataclass(frozen=True)
class PhiImage:
    values: frozenset
    total: int

    @property
    def distinct(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class CollisionWitness:
    """Two different tuples with the same phi-value.

    ``tuple1`` is where the collision was detected; ``tuple2`` is the
    earlier tuple (in enumeration order) carrying the same value.
    """

    tuple1: tuple[int, ...]
    tuple2: tuple[int, ...]
    value: int

    def to_json(self) -> dict:
        return {
            "tuple1": [str(x) for x in self.tuple1],
            "tuple2": [str(x) for x in self.tuple2],
            "value": str(self.value),
        }


@dataclass(frozen=True)
class ExtensionConflict:
    """Two translates that share ``value``.

    ``tuple1``/``tuple2`` are the full h-tuples over ``A | {b}`` producing
    it: positions outside ``J`` hold ``b``.
    """

    J1: IndexSet
    J2: IndexSet
    value: int
    tuple1: tuple[int, ...]
    tuple2: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "J1": list(self.J1.indices),
            "J2": list(self.J2.indices),
            "value": str(self.value),
            "tuple1": [str(x) for x in self.tuple1],
            "tuple2": [str(x) for x in self.tuple2],
        }


def _check_budget(what, needed, budget):
    if budget is not None and needed > budget:
        raise BudgetExceeded(what, needed, budget)


def _scan_block(coeffs, elements, lead):
    """Scan the tuples whose first coordinate is ``elements[lead]``.

    Returns the value -> first-tuple map of the block and the block's
    first internal collision as ``(tuple, earlier_tuple, value)``.
    """
    seen = {}
    first = None
    head = coeffs[0] * elements[lead]
    rest = coeffs[1:]
    for tail in product(elements, repeat=len(rest)):
        v = head + sum(c * x for c, x in zip(rest, tail))
        if v in seen:
            if first is None:
                first = ((elements[lead],) + tail, seen[v], v)
        else:
            seen[v] = (elements[lead],) + tail
    return seen, first


def _resolve_jobs(n_jobs):
    if n_jobs is None or n_jobs == 1:
        return 1
    if n_jobs < 0:
        return max(1, (os.cpu_count() or 1) + 1 + n_jobs)
    return n_jobs


def _scan(form, A, n_jobs, stop_early):
    """Shared enumeration behind :func:`phi_image` and :func:`is_sidon`.

    The parallel path splits on the leading coordinate and merges blocks in
    order, which reproduces the sequential first collision exactly.
    """
    coeffs, elements = form.coeffs, A.elements
    total = len(elements) ** form.h
    jobs = _resolve_jobs(n_jobs)
    if jobs > 1 and total >= PARALLEL_MIN_TUPLES and len(elements) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            blocks = list(pool.map(
                _scan_block,
                [coeffs] * len(elements),
                [elements] * len(elements),
                range(len(elements)),
            ))
    else:
        blocks = (_scan_block(coeffs, elements, lead) for lead in range(len(elements)))
    seen = {}
    witness = None
    for block_seen, block_first in blocks:
        if witness is None:
            # earliest tuple of this block whose value already occurred
            cands = [(t, seen[v], v) for v, t in block_seen.items() if v in seen]
            if block_first is not None:
                cands.append(block_first)
            if cands:
                witness = CollisionWitness(*min(cands))
                if stop_early:
                    break
        for v, t in block_seen.items():
            seen.setdefault(v, t)
    return seen, witness, total


def phi_image(form: LinearForm, A, budget: Optional[int] = DEFAULT_BUDGET, n_jobs=1) -> PhiImage:
    """All values ``phi(a_1, ..., a_h)`` over ``A**h``."""
    A = _as_set(A)
    _check_budget(f"phi-image over |A|^h = {len(A)}^{form.h}", len(A) ** form.h, budget)
    seen, _, total = _scan(form, A, n_jobs, stop_early=False)
    return PhiImage(frozenset(seen), total)


def is_sidon(
    form: LinearForm, A, budget: Optional[int] = DEFAULT_BUDGET, n_jobs=1
) -> tuple[bool, Optional[CollisionWitness]]:
    """Brute-force phi-Sidon test via a hash of all ``|A|**h`` values."""
    A = _as_set(A)
    _check_budget(f"Sidon check over |A|^h = {len(A)}^{form.h}", len(A) ** form.h, budget)
    _, witness, _ = _scan(form, A, n_jobs, stop_early=True)
    return witness is None, witness


def _contraction_values(form: LinearForm, A: FiniteSet, mask: int) -> dict:
    """value -> tuple over the positions of ``mask`` for ``phi_J(A)``.

    Raises NotSidonError on a repeated value.
    """
    positions = [i for i in range(form.h) if mask >> i & 1]
    cs = [form.coeffs[i] for i in positions]
    out = {}
    for tup in product(A.elements, repeat=len(positions)):
        v = sum(c * x for c, x in zip(cs, tup))
        if v in out:
            raise NotSidonError(
                f"A is not phi-Sidon: repeated value {v} in the contraction to "
                f"{IndexSet(mask, form.h)!r}"
            )
        out[v] = tup
    return out


def translate_family(form: LinearForm, A, b: int) -> dict:
    """Map each ``J`` to the translate ``phi_J(A) + s(J^c) * b``."""
    A = _as_set(A)
    if b in A:
        raise PreconditionError(f"b = {b} already belongs to A")
    full = (1 << form.h) - 1
    family = {}
    for mask in range(1 << form.h):
        positions = [i for i in range(form.h) if mask >> i & 1]
        cs = [form.coeffs[i] for i in positions]
        shift = form.subset_sums[full ^ mask] * b
        family[IndexSet(mask, form.h)] = frozenset(
            shift + sum(c * x for c, x in zip(cs, tup))
            for tup in product(A.elements, repeat=len(positions))
        )
    return family


class ExtensionChecker:
    """Repeated ``can_extend`` queries against one fixed phi-Sidon set.

    The contraction images ``phi_J(A)`` do not depend on ``b`` and are
    computed once; building the checker verifies that ``A`` is phi-Sidon.
    """

    def __init__(self, form: LinearForm, A, budget: Optional[int] = DEFAULT_BUDGET):
        self.form = form
        self.A = _as_set(A)
        _check_budget(
            f"extension test over (|A|+1)^h = {len(self.A) + 1}^{form.h}",
            (len(self.A) + 1) ** form.h,
            budget,
        )
        full = (1 << form.h) - 1
        self._parts = [
            (mask, form.subset_sums[full ^ mask], _contraction_values(form, self.A, mask))
            for mask in range(1 << form.h)
        ]

    def _full_tuple(self, mask, partial, b):
        it = iter(partial)
        return tuple(next(it) if mask >> i & 1 else b for i in range(self.form.h))

    def check(self, b: int) -> tuple[bool, Optional[ExtensionConflict]]:
        if b in self.A:
            raise PreconditionError(f"b = {b} already belongs to A")
        owner = {}
        for mask, s_comp, values in self._parts:
            shift = s_comp * b
            for v, tup in values.items():
                w = v + shift
                prev = owner.get(w)
                if prev is not None:
                    pmask, ptup = prev
                    h = self.form.h
                    return False, ExtensionConflict(
                        IndexSet(pmask, h),
                        IndexSet(mask, h),
                        w,
                        self._full_tuple(pmask, ptup, b),
                        self._full_tuple(mask, tup, b),
                    )
                owner[w] = (mask, tup)
        return True, None


def can_extend(
    form: LinearForm, A, b: int, budget: Optional[int] = DEFAULT_BUDGET
) -> tuple[bool, Optional[ExtensionConflict]]:
    """Whether ``A | {b}`` stays phi-Sidon, for phi-Sidon ``A``.

    True iff the ``2**h`` translates are pairwise disjoint.  Raises
    NotSidonError when ``A`` itself is not phi-Sidon.
    """
    A = _as_set(A)
    if b in A:
        raise PreconditionError(f"b = {b} already belongs to A")
    return ExtensionChecker(form, A, budget).check(b)


def forbidden_values(form: LinearForm, A, budget: Optional[int] = DEFAULT_BUDGET) -> set:
    """Every integer ``b`` solving some translate-overlap equation.

    For each ordered pair of distinct position sets ``J1 != J2`` and each
    choice of tuples over them, ``b = (phi_J1(x) - phi_J2(y)) /
    (s(J2^c) - s(J1^c))`` is collected when the division is exact.  Slow on
    purpose: it is the independent check for :func:`can_extend`.
    """
    A = _as_set(A)
    if not form.nondegenerate:
        raise PreconditionError(
            "form has equal subset sums (property N fails or a subset sums to 0); "
            "translate denominators can vanish"
        )
    n, h = len(A), form.h
    _check_budget(
        "forbidden-value enumeration",
        (n + 1) ** (2 * h) - (n * n + 1) ** h,
        budget,
    )
    full = (1 << h) - 1
    sums = form.subset_sums

    def values(mask):
        cs = [form.coeffs[i] for i in range(h) if mask >> i & 1]
        return [
            sum(c * x for c, x in zip(cs, tup))
            for tup in product(A.elements, repeat=len(cs))
        ]

    images = [values(mask) for mask in range(1 << h)]
    out = set()
    for m1 in range(1 << h):
        for m2 in range(1 << h):
            if m1 == m2:
                continue
            denom = sums[full ^ m2] - sums[full ^ m1]
            for x in images[m1]:
                for y in images[m2]:
                    q, r = divmod(x - y, denom)
                    if not r:
                        out.add(q)
    return out
