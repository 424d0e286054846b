"""Column standardization fitted on training features only."""

from __future__ import annotations

import numpy as np

from ..errors import DimensionMismatchError, EmptyMatrixError
from .base import as_matrix

# Floor for column standard deviations; zero-variance columns are clamped
# here so transformed values stay finite.
STD_FLOOR = 1e-9


class Standardizer:
    """Center and scale columns to zero mean / unit (population) stdev."""

    def __init__(self, std_floor: float = STD_FLOOR):
        self.std_floor = float(std_floor)
        self.means_ = None
        self.stdevs_ = None

    def fit(self, X) -> "Standardizer":
        X = as_matrix(X)
        if X.shape[0] == 0:
            raise EmptyMatrixError("cannot fit a standardizer on 0 rows")
        self.means_ = X.mean(axis=0)
        self.stdevs_ = np.maximum(X.std(axis=0), self.std_floor)
        return self

    def transform(self, X) -> np.ndarray:
        if self.means_ is None:
            raise EmptyMatrixError("standardizer is not fitted")
        X = as_matrix(X)
        if X.shape[1] != self.means_.shape[0]:
            raise DimensionMismatchError(
                f"standardizer was fit on {self.means_.shape[0]} columns, got {X.shape[1]}"
            )
        return (X - self.means_) / self.stdevs_

    def fit_transform(self, X) -> np.ndarray:
        return self.fit(X).transform(X)

    def to_dict(self) -> dict:
        return {"means": self.means_.tolist(), "stdevs": self.stdevs_.tolist()}

    @classmethod
    def from_dict(cls, d: dict) -> "Standardizer":
        s = cls()
        s.means_ = np.asarray(d["means"], dtype=float)
        s.stdevs_ = np.asarray(d["stdevs"], dtype=float)
        return s
