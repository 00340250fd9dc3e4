"""Perturbing an integer sequence into a phi-Sidon set.

Two constructions:

* :func:`construct_poly` works for any input sequence.  Each new term is
  the valid integer nearest to ``b_k``; the deviation at step ``k`` stays
  below ``4**h (k-1)**(2h-1) + (k-1)``, hence below ``k**(4h)``.
* :func:`construct_bounded` needs fast growth,
  ``b_1 > m`` and ``b_{k+1} > C b_k + (C+1) m``.  Then *every* integer
  within ``m0 <= m`` of ``b_k`` is a valid choice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Iterator, Optional, Sequence

from .bound_analysis import greedy_radius
from .exceptions import ConstructionError, PreconditionError
from .linear_form import LinearForm, has_property_N, vanishing_subset
from .sidon_engine import DEFAULT_BUDGET, ExtensionChecker, FiniteSet
from .trace import ConstructionTrace, TraceStep


def _prefix(B, K) -> tuple[int, ...]:
    if K < 0:
        raise PreconditionError(f"term count {K} < 0")
    if hasattr(B, "prefix"):
        return B.prefix(K)
    values = tuple(B)
    if len(values) < K:
        raise PreconditionError(f"sequence has {len(values)} terms, need {K}")
    return values[:K]


def require_nondegenerate(form: LinearForm):
    """Reject forms for which no two-element phi-Sidon set exists."""
    ok, witness = has_property_N(form)
    if not ok:
        raise PreconditionError(
            f"form {form} lacks property N: positions {witness.I1!r} and "
            f"{witness.I2!r} both sum to {witness.common_sum}"
        )
    zero = vanishing_subset(form)
    if zero is not None:
        raise PreconditionError(
            f"form {form}: coefficients at {zero!r} sum to 0, so phi(a,...,a) "
            "collides for every a"
        )


def scan_offsets() -> Iterator[int]:
    """0, -1, +1, -2, +2, ...: nearest first, smaller value on ties."""
    yield 0
    d = 1
    while True:
        yield -d
        yield d
        d += 1


def construct_poly(form: LinearForm, B, K: int, budget: Optional[int] = DEFAULT_BUDGET) -> ConstructionTrace:
    """Greedy nearest-valid construction of ``a_1, ..., a_K``.

    ``B`` may be any integer sequence (repeats and negative values
    included).  Deterministic; the length-``K`` trace is a prefix of the
    length-``K+1`` trace.
    """
    require_nondegenerate(form)
    b = _prefix(B, K)
    h = form.h
    steps = []
    A: list[int] = []
    for k, target in enumerate(b, 1):
        n = k - 1
        if n == 0:
            steps.append(TraceStep(1, target, target, 0, 0, 1, 1))
            A.append(target)
            continue
        radius = greedy_radius(h, n)
        checker = ExtensionChecker(form, FiniteSet(A), budget)
        members = set(A)
        examined = 0
        for off in scan_offsets():
            if abs(off) >= radius:
                raise ConstructionError(
                    f"step {k}: no valid integer within distance {radius} of {target}"
                )
            cand = target + off
            examined += 1
            if cand in members:
                continue
            if checker.check(cand)[0]:
                break
        steps.append(TraceStep(k, target, cand, abs(off), radius, k ** (4 * h), examined))
        A.append(cand)
    return ConstructionTrace(tuple(steps))


@dataclass(frozen=True)
class GrowthCheck:
    """Result of checking ``b_1 > m`` and ``b_{k+1} > C b_k + (C+1) m``.

    ``first_violation`` is ``0`` when ``b_1 <= m`` and ``k`` when the
    inequality for ``b_{k+1}`` fails.
    """

    C: int
    m: int
    first_violation: Optional[int] = None

    @property
    def passed(self) -> bool:
        return self.first_violation is None

    def to_json(self) -> dict:
        return {
            "C": str(self.C),
            "m": str(self.m),
            "pass": self.passed,
            "first_violation": self.first_violation,
        }


def _growth_values(b: Sequence[int]):
    for k, x in enumerate(b, 1):
        if x <= 0:
            raise PreconditionError(f"b_{k} = {x} is not positive")
        if k > 1 and x <= b[k - 2]:
            raise PreconditionError(f"sequence not strictly increasing at b_{k}")


def check_growth(form: LinearForm, B, m: int, K: int) -> GrowthCheck:
    if m < 0:
        raise PreconditionError("m must be >= 0")
    b = _prefix(B, K)
    _growth_values(b)
    C = form.norm
    if b and b[0] <= m:
        return GrowthCheck(C, m, 0)
    for k in range(1, len(b)):
        if b[k] <= C * b[k - 1] + (C + 1) * m:
            return GrowthCheck(C, m, k)
    return GrowthCheck(C, m, None)


def _resolve_m0(m: int, m0) -> Fraction:
    if m0 is None:
        return Fraction(max(m, 1))
    m0 = Fraction(m0)
    if m0 <= 0:
        raise PreconditionError("m0 must be positive")
    if m0 > max(m, 1):
        raise PreconditionError(f"m0 = {m0} exceeds the allowed maximum {max(m, 1)}")
    return m0


def interval_choices(center: int, m0, positive: bool = True) -> list[int]:
    """Integers ``a`` with ``|a - center| < m0`` (and ``a > 0``)."""
    m0 = Fraction(m0)
    r = math.ceil(m0) - 1
    return [a for a in range(center - r, center + r + 1) if not positive or a > 0]


def construct_bounded(
    form: LinearForm,
    B,
    m: int,
    K: int,
    m0=None,
    choose: Optional[Callable[[int, int, list], int]] = None,
    budget: Optional[int] = DEFAULT_BUDGET,
) -> ConstructionTrace:
    """Bounded perturbation of a fast-growing sequence.

    ``a_1 = b_1``; for ``k >= 2``, ``a_k = choose(k, b_k, allowed)`` where
    ``allowed`` lists the positive integers within ``m0`` of ``b_k``
    (default choice: ``b_k``).  ``m0`` defaults to ``max(m, 1)``; at
    ``m = 0`` that forces ``a_k = b_k``.  Every step is re-verified with
    the extension test and a failure raises ConstructionError.
    """
    require_nondegenerate(form)
    m0 = _resolve_m0(m, m0)
    growth = check_growth(form, B, m, K)
    if not growth.passed:
        raise PreconditionError(f"growth condition fails at k={growth.first_violation}")
    b = _prefix(B, K)
    bound = math.ceil(m0)
    steps = []
    A: list[int] = []
    for k, target in enumerate(b, 1):
        if k == 1:
            a = target
        else:
            allowed = interval_choices(target, m0)
            a = target if choose is None else choose(k, target, allowed)
            if a not in allowed:
                raise PreconditionError(f"step {k}: choice {a} not in {allowed}")
            if a in A or not ExtensionChecker(form, FiniteSet(A), budget).check(a)[0]:
                raise ConstructionError(f"step {k}: {a} does not extend the phi-Sidon set")
        steps.append(TraceStep(k, target, a, abs(a - target), bound, bound, 1))
        A.append(a)
    return ConstructionTrace(tuple(steps))


def iter_bounded_choices(b: Sequence[int], m0, fix_first: bool = False) -> Iterator[tuple[int, ...]]:
    """Every positive integer vector ``a`` with ``|a_k - b_k| < m0``.

    With ``fix_first`` the first term is pinned to ``b_1``.
    """
    pools = [interval_choices(x, m0) for x in b]
    if fix_first and b:
        pools[0] = [b[0]]
    return product(*pools)
