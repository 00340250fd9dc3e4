"""Counting certificates against bounded perturbations, and the numeric
inequalities behind the greedy construction.

Certificates rule out perturbations with a fixed bound ``m0`` only; a
perturbation whose deviation grows with ``k`` is not covered by them.
Everything here is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exceptions import PreconditionError
from .linear_form import LinearForm


def greedy_radius(h: int, n: int) -> int:
    """``4**h * n**(2h-1) + n``: more than the number of integers that
    cannot extend an ``n``-element phi-Sidon set of arity ``h``."""
    return 4**h * n ** (2 * h - 1) + n


def greedy_bound_holds(h: int, n: int) -> bool:
    """``4**h n**(2h-1) + n < (n+1)**(4h)``, evaluated exactly."""
    if h < 1 or n < 1:
        raise PreconditionError("need h >= 1 and n >= 1")
    return greedy_radius(h, n) < (n + 1) ** (4 * h)


def sweep_greedy_bound(max_h: int, max_n: int) -> Optional[tuple[int, int]]:
    """First ``(h, n)`` where :func:`greedy_bound_holds` fails, else None."""
    for h in range(1, max_h + 1):
        for n in range(1, max_n + 1):
            if not greedy_bound_holds(h, n):
                return h, n
    return None


def _prefix(B, K):
    if hasattr(B, "prefix"):
        return B.prefix(K)
    values = tuple(B)
    if len(values) < K:
        raise PreconditionError(f"sequence has {len(values)} terms, need {K}")
    return values[:K]


def _require_increasing(b, what="sequence"):
    for k in range(1, len(b)):
        if b[k] <= b[k - 1]:
            raise PreconditionError(
                f"{what} is not strictly increasing at k={k}: b_{k}={b[k - 1]}, b_{k + 1}={b[k]}"
            )


def as_fraction(eps) -> Fraction:
    try:
        return Fraction(eps)
    except (TypeError, ValueError, ZeroDivisionError):
        raise PreconditionError(f"not a rational number: {eps!r}") from None


@dataclass(frozen=True)
class DensityCheck:
    epsilon: Fraction
    violations: tuple[tuple[int, int], ...]

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "epsilon": str(self.epsilon),
            "pass": self.passed,
            "violations": [list(v) for v in self.violations],
        }


def gap_exceeds_power(gap: int, base: int, h: int, eps: Fraction) -> bool:
    """Whether ``gap > base ** (h - eps)`` for positive ``gap``, ``base``."""
    p, q = eps.numerator, eps.denominator
    e = h * q - p
    if e >= 0:
        return gap**q > base**e
    return gap**q * base ** (-e) > 1


def density_check(B, h: int, epsilon, K: int) -> DensityCheck:
    """All pairs ``s < t <= K`` with ``b_t - b_s > (t-s+1)**(h-eps)``."""
    eps = as_fraction(epsilon)
    if eps <= 0:
        raise PreconditionError("epsilon must be positive")
    if h < 1:
        raise PreconditionError("h must be >= 1")
    b = _prefix(B, K)
    _require_increasing(b)
    bad = []
    for s in range(1, K + 1):
        for t in range(s + 1, K + 1):
            if gap_exceeds_power(b[t - 1] - b[s - 1], t - s + 1, h, eps):
                bad.append((s, t))
    return DensityCheck(eps, tuple(bad))


@dataclass(frozen=True)
class WindowCertificate:
    """Counting bound on the window ``a_s, ..., a_t``.

    A phi-Sidon window has ``lhs = (t-s+1)**h`` distinct phi-values, all
    inside an integer range holding at most ``rhs = C(b_t - b_s + 2 m0) - 1``
    of them when every ``|a_k - b_k| < m0``.  ``lhs > rhs`` refutes every
    such perturbation.
    """

    s: int
    t: int
    lhs: int
    rhs: int
    m0: int

    @property
    def contradiction(self) -> bool:
        return self.lhs > self.rhs

    def to_json(self) -> dict:
        return {
            "s": self.s,
            "t": self.t,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "m0": str(self.m0),
            "contradiction": self.contradiction,
        }


def _check_m0(m0):
    if isinstance(m0, bool) or not isinstance(m0, int):
        raise PreconditionError(f"m0 must be a positive integer, got {m0!r}")
    if m0 <= 0:
        raise PreconditionError("m0 must be positive: a bounded perturbation needs m0 > 0")


def _certificate(form, b, m0, s, t):
    return WindowCertificate(
        s, t, (t - s + 1) ** form.h, form.norm * (b[t - 1] - b[s - 1] + 2 * m0) - 1, m0
    )


def window_certificate(form: LinearForm, B, m0: int, s: int, t: int) -> WindowCertificate:
    _check_m0(m0)
    if s < 1 or t <= s:
        raise PreconditionError(f"need 1 <= s < t, got s={s}, t={t}")
    b = _prefix(B, t)
    _require_increasing(b[s - 1 : t], f"sequence window [{s},{t}]")
    return _certificate(form, b, m0, s, t)


def refute_bounded(form: LinearForm, B, m0: int, K: int) -> Optional[WindowCertificate]:
    """First contradicting window with ``t <= K``; widths ``t - s`` are
    tried in increasing order, then ``s`` increasing."""
    _check_m0(m0)
    b = _prefix(B, K)
    _require_increasing(b)
    for width in range(1, K):
        for s in range(1, K - width + 1):
            cert = _certificate(form, b, m0, s, s + width)
            if cert.contradiction:
                return cert
    return None
