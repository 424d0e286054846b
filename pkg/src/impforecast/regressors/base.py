"""Shared estimator surface and input validation helpers.

All five regressors follow the familiar fit/predict estimator contract:
constructor keyword arguments are the hyperparameters (introspectable via
``get_params``/``set_params``), ``fit(X, y)`` returns ``self``, and fitted
state lives in trailing-underscore attributes. No scikit-learn dependency;
the algorithms are implemented here from scratch.
"""

from __future__ import annotations

import inspect
from typing import ClassVar

import numpy as np

from ..domain import ModelKind
from ..errors import DegenerateInputError, DimensionMismatchError

__all__ = ["BaseRegressor", "as_matrix", "as_vector", "check_fit_inputs"]


def as_matrix(X) -> np.ndarray:
    """Coerce to a 2-D float64 array."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise DimensionMismatchError(f"expected a 2-D matrix, got ndim={X.ndim}")
    return X


def as_vector(y) -> np.ndarray:
    y = np.asarray(y, dtype=float)
    if y.ndim != 1:
        raise DimensionMismatchError(f"expected a 1-D vector, got ndim={y.ndim}")
    return y


def check_fit_inputs(X, y) -> tuple[np.ndarray, np.ndarray]:
    """Validate a training pair: shapes agree, n >= 2, targets finite."""
    X, y = as_matrix(X), as_vector(y)
    if X.shape[0] != y.shape[0]:
        raise DimensionMismatchError(
            f"X has {X.shape[0]} rows but y has {y.shape[0]} entries"
        )
    if X.shape[0] < 2:
        raise DegenerateInputError(f"need at least 2 samples, got {X.shape[0]}")
    if X.shape[1] < 1:
        raise DimensionMismatchError("X must have at least one feature")
    if not np.all(np.isfinite(X)):
        raise DegenerateInputError("X contains non-finite values")
    if not np.all(np.isfinite(y)):
        raise DegenerateInputError("y contains non-finite values")
    return X, y


class BaseRegressor:
    """Base class providing get_params/set_params and prediction plumbing."""

    kind: ClassVar[ModelKind]

    def get_params(self) -> dict:
        """Constructor arguments, by introspection of ``__init__``."""
        names = [
            p.name
            for p in inspect.signature(type(self).__init__).parameters.values()
            if p.name != "self"
        ]
        return {name: getattr(self, name) for name in names}

    def set_params(self, **params):
        known = self.get_params()
        for name, value in params.items():
            if name not in known:
                raise ValueError(f"unknown parameter {name!r} for {type(self).__name__}")
            setattr(self, name, value)
        return self

    # -- fitted-state helpers -------------------------------------------------

    @property
    def is_fitted(self) -> bool:
        return getattr(self, "n_features_", None) is not None

    def _check_predict_input(self, X) -> np.ndarray:
        if not self.is_fitted:
            raise DegenerateInputError(f"{type(self).__name__} is not fitted")
        X = as_matrix(X)
        if X.shape[1] != self.n_features_:
            raise DimensionMismatchError(
                f"model was fit with {self.n_features_} features, got {X.shape[1]}"
            )
        return X

    def fit(self, X, y):
        raise NotImplementedError

    def predict(self, X) -> np.ndarray:
        raise NotImplementedError

    # -- serialization --------------------------------------------------------

    def fitted_params(self) -> dict:
        """Kind-specific fitted state as JSON-ready plain types."""
        raise NotImplementedError

    def load_fitted_params(self, params: dict, standardizer) -> None:
        """Restore fitted state produced by :meth:`fitted_params`."""
        raise NotImplementedError

    def __repr__(self) -> str:
        args = ", ".join(f"{k}={v!r}" for k, v in self.get_params().items())
        return f"{type(self).__name__}({args})"
