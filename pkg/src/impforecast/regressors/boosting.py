"""Least-squares gradient boosting over shallow regression trees."""

from __future__ import annotations

from typing import Iterator

import numpy as np

from ..domain import ModelKind
from .base import BaseRegressor, check_fit_inputs
from .scaling import Standardizer
from .tree import RegressionTree, build_tree


class BoostedTreesRegressor(BaseRegressor):
    """Stagewise additive model: start at mean(y), fit each tree to the
    current residuals, add it scaled by ``learning_rate``.

    Training is fully deterministic (no subsampling), so the seed is only
    kept for interface uniformity.
    """

    kind = ModelKind.BDTR

    def __init__(
        self,
        trees: int = 200,
        max_depth: int = 3,
        learning_rate: float = 0.1,
        min_leaf: int = 2,
        seed: int = 0,
    ):
        self.trees = int(trees)
        self.max_depth = int(max_depth)
        self.learning_rate = float(learning_rate)
        self.min_leaf = int(min_leaf)
        self.seed = int(seed)
        self.n_features_ = None

    def fit(self, X, y):
        X, y = check_fit_inputs(X, y)
        self.standardizer_ = Standardizer().fit(X)
        Xs = self.standardizer_.transform(X)
        self.base_value_ = float(y.mean())
        residual = y - self.base_value_
        self.trees_: list[RegressionTree] = []
        stage_pred = np.empty(Xs.shape[0], dtype=float)
        for _ in range(self.trees):
            tree = build_tree(
                Xs,
                residual,
                max_depth=self.max_depth,
                min_leaf=self.min_leaf,
                train_pred=stage_pred,
            )
            residual = residual - self.learning_rate * stage_pred
            self.trees_.append(tree)
        self.tree_weights_ = [self.learning_rate] * len(self.trees_)
        self.n_features_ = Xs.shape[1]
        return self

    def predict(self, X) -> np.ndarray:
        X = self._check_predict_input(X)
        Xs = self.standardizer_.transform(X)
        acc = np.full(Xs.shape[0], self.base_value_, dtype=float)
        for w, tree in zip(self.tree_weights_, self.trees_):
            acc += w * tree.predict(Xs)
        return acc

    def staged_predict(self, X) -> Iterator[np.ndarray]:
        """Predictions after 1, 2, ..., T trees (copies)."""
        X = self._check_predict_input(X)
        Xs = self.standardizer_.transform(X)
        acc = np.full(Xs.shape[0], self.base_value_, dtype=float)
        for w, tree in zip(self.tree_weights_, self.trees_):
            acc += w * tree.predict(Xs)
            yield acc.copy()

    def fitted_params(self) -> dict:
        return {
            "base_value": self.base_value_,
            "tree_weights": list(self.tree_weights_),
            "trees": [t.to_dict() for t in self.trees_],
        }

    def load_fitted_params(self, params, standardizer):
        self.base_value_ = float(params["base_value"])
        self.tree_weights_ = [float(w) for w in params["tree_weights"]]
        self.trees_ = [RegressionTree.from_dict(t) for t in params["trees"]]
        self.standardizer_ = standardizer
        self.n_features_ = standardizer.means_.shape[0]
