"""Decision forest regression: bagged variance-reduction trees."""

from __future__ import annotations

import math

import numpy as np

from ..domain import ModelKind
from .base import BaseRegressor, check_fit_inputs
from .scaling import Standardizer
from .tree import RegressionTree, build_tree


class DecisionForestRegressor(BaseRegressor):
    """Average of ``trees`` CART trees, each grown on a bootstrap resample.

    ``feature_subset`` features are considered at every split (default
    ceil(sqrt(d))). Predictions are the plain mean over trees, so they can
    never leave [min(y_train), max(y_train)].
    """

    kind = ModelKind.DFR

    def __init__(
        self,
        trees: int = 100,
        max_depth: int = 8,
        min_leaf: int = 2,
        feature_subset: int | None = None,
        bootstrap: bool = True,
        seed: int = 0,
    ):
        self.trees = int(trees)
        self.max_depth = int(max_depth)
        self.min_leaf = int(min_leaf)
        self.feature_subset = feature_subset
        self.bootstrap = bool(bootstrap)
        self.seed = int(seed)
        self.n_features_ = None

    def fit(self, X, y):
        X, y = check_fit_inputs(X, y)
        self.standardizer_ = Standardizer().fit(X)
        Xs = self.standardizer_.transform(X)
        n, d = Xs.shape
        subset = (
            math.ceil(math.sqrt(d)) if self.feature_subset is None else int(self.feature_subset)
        )
        rng = np.random.default_rng(self.seed)
        self.trees_: list[RegressionTree] = []
        for _ in range(self.trees):
            if self.bootstrap:
                sample = rng.integers(0, n, size=n)
                Xt, yt = Xs[sample], y[sample]
            else:
                Xt, yt = Xs, y
            self.trees_.append(
                build_tree(
                    Xt,
                    yt,
                    max_depth=self.max_depth,
                    min_leaf=self.min_leaf,
                    feature_subset=subset if subset < d else None,
                    rng=rng,
                )
            )
        self.n_features_ = d
        return self

    def predict(self, X) -> np.ndarray:
        X = self._check_predict_input(X)
        Xs = self.standardizer_.transform(X)
        if Xs.shape[0] == 0:
            return np.empty(0, dtype=float)
        acc = np.zeros(Xs.shape[0], dtype=float)
        for tree in self.trees_:
            acc += tree.predict(Xs)
        return acc / len(self.trees_)

    def fitted_params(self) -> dict:
        return {"trees": [t.to_dict() for t in self.trees_]}

    def load_fitted_params(self, params, standardizer):
        self.trees_ = [RegressionTree.from_dict(t) for t in params["trees"]]
        self.standardizer_ = standardizer
        self.n_features_ = standardizer.means_.shape[0]
