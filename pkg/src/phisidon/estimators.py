"""scikit-learn style wrappers.

``SidonPerturbation`` is a transformer mapping an integer sequence to a
nearby phi-Sidon sequence; ``PerturbationRefuter`` searches a sequence for
a window certificate ruling out bounded perturbations.  Both keep
``get_params``/``set_params``/``clone`` semantics so they drop into
pipelines and grid searches.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .bound_analysis import refute_bounded
from .constructor import construct_bounded, construct_poly
from .exceptions import PreconditionError
from .sidon_engine import DEFAULT_BUDGET
from .validation import check_form, check_integer_sequence


class SidonPerturbation(TransformerMixin, BaseEstimator):
    """Perturb an integer sequence into a phi-Sidon set.

    Parameters
    ----------
    form : str, sequence of int or LinearForm
        Coefficients of the linear form, e.g. ``"1,3"``.
    mode : {"poly", "bounded"}
        ``"poly"`` runs the nearest-valid greedy construction on any
        sequence. ``"bounded"`` requires the growth condition for ``m`` and
        keeps every term within ``m0`` of the input.
    m : int
        Growth slack for ``mode="bounded"``.
    m0 : int, Fraction or None
        Perturbation bound for ``mode="bounded"``; defaults to ``max(m, 1)``.
    budget : int or None
        Cap on tuple enumerations per extension test.

    Attributes
    ----------
    form_ : LinearForm
    trace_ : ConstructionTrace
    sidon_set_ : tuple of int
        The constructed terms ``a_1, ..., a_K``.
    max_deviation_ : int
    """

    def __init__(self, form="1,3", mode="poly", m=0, m0=None, budget=DEFAULT_BUDGET):
        self.form = form
        self.mode = mode
        self.m = m
        self.m0 = m0
        self.budget = budget

    def _construct(self, b):
        if self.mode == "poly":
            return construct_poly(self.form_, b, len(b), budget=self.budget)
        if self.mode == "bounded":
            return construct_bounded(
                self.form_, b, self.m, len(b), m0=self.m0, budget=self.budget
            )
        raise PreconditionError(f"unknown mode {self.mode!r}; use 'poly' or 'bounded'")

    def fit(self, X, y=None):
        b = check_integer_sequence(X, positive=self.mode == "bounded")
        self.form_ = check_form(self.form)
        self.trace_ = self._construct(b)
        self._fit_input = b
        self.sidon_set_ = self.trace_.elements
        self.max_deviation_ = self.trace_.max_deviation
        self.n_features_in_ = 1
        return self

    def transform(self, X):
        check_is_fitted(self, "trace_")
        b = check_integer_sequence(X, positive=self.mode == "bounded")
        if b == self._fit_input:
            elements = self.sidon_set_
        else:
            elements = self._construct(b).elements
        return np.array(elements, dtype=object)

    def fit_transform(self, X, y=None, **fit_params):
        return np.array(self.fit(X).sidon_set_, dtype=object)


class PerturbationRefuter(BaseEstimator):
    """Search for a window certificate refuting bounded perturbations.

    Parameters
    ----------
    form : str, sequence of int or LinearForm
    m0 : int
        Perturbation bound to refute; must be positive.
    limit : int or None
        Largest window end ``t`` searched; defaults to the input length.

    Attributes
    ----------
    certificate_ : WindowCertificate or None
    refuted_ : bool
    """

    def __init__(self, form="1,3", m0=1, limit=None):
        self.form = form
        self.m0 = m0
        self.limit = limit

    def fit(self, X, y=None):
        b = check_integer_sequence(X, min_length=2, strictly_increasing=True)
        self.form_ = check_form(self.form)
        limit = len(b) if self.limit is None else min(self.limit, len(b))
        self.certificate_ = refute_bounded(self.form_, b, self.m0, limit)
        self.refuted_ = self.certificate_ is not None
        return self
