"""Input validation for the estimator layer.

Values stay Python ints end to end: numpy integer dtypes overflow long
before the quantities this package handles, so arrays are only accepted
as containers and converted element by element.
"""

from __future__ import annotations

import numbers

import numpy as np

from .exceptions import PreconditionError
from .linear_form import LinearForm, parse_form


def check_form(form) -> LinearForm:
    """Accept a LinearForm, a ``"1,3"`` string or a sequence of ints."""
    if isinstance(form, LinearForm):
        return form
    if isinstance(form, str):
        return parse_form(form)
    try:
        coeffs = tuple(_to_int(c, "coefficient") for c in form)
    except TypeError:
        raise PreconditionError(f"cannot interpret {form!r} as a linear form") from None
    return LinearForm(coeffs)


def _to_int(x, what="value") -> int:
    if isinstance(x, (bool, np.bool_)):
        raise PreconditionError(f"{what} {x!r} is a boolean, not an integer")
    if isinstance(x, numbers.Integral):
        return int(x)
    raise PreconditionError(f"{what} {x!r} is not an integer")


def check_integer_sequence(X, *, min_length=1, strictly_increasing=False, positive=False):
    """Validate a 1-D integer sequence and return it as a tuple of ints.

    A 2-D array with a single column is flattened, matching the
    ``(n_samples, 1)`` layout scikit-learn pipelines hand to transformers.
    Floating-point input is rejected rather than rounded.
    """
    if hasattr(X, "prefix") and hasattr(X, "finite"):
        X = X.all()
    if isinstance(X, np.ndarray):
        if X.ndim == 2 and X.shape[1] == 1:
            X = X[:, 0]
        elif X.ndim != 1:
            raise PreconditionError(f"expected a 1-D sequence, got shape {X.shape}")
        if X.dtype.kind == "f":
            raise PreconditionError("floating-point input; pass integers")
        X = X.tolist()
    elif isinstance(X, (str, bytes)):
        raise PreconditionError("expected a sequence of integers, got a string")
    values = []
    for x in X:
        if isinstance(x, (list, tuple)) and len(x) == 1:
            x = x[0]
        values.append(_to_int(x))
    if len(values) < min_length:
        raise PreconditionError(f"need at least {min_length} terms, got {len(values)}")
    if positive and any(v <= 0 for v in values):
        raise PreconditionError("all terms must be positive")
    if strictly_increasing and any(b <= a for a, b in zip(values, values[1:])):
        raise PreconditionError("sequence must be strictly increasing")
    return tuple(values)
