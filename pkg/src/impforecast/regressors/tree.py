"""Binary regression trees with variance-reduction (squared error) splits.

The builder is shared by the decision forest and the boosted ensemble.
Split search per feature runs on sorted values with cumulative sums, so a
node costs O(d_sub * n log n). Tie-breaking is deterministic: among
equal-gain splits the lowest feature index wins, then the lowest
threshold.
"""

from __future__ import annotations

import numpy as np


class RegressionTree:
    """Flat-array binary tree: node i is a leaf iff ``feature[i] < 0``."""

    __slots__ = ("feature", "threshold", "left", "right", "value")

    def __init__(self, feature, threshold, left, right, value):
        self.feature = np.asarray(feature, dtype=np.int64)
        self.threshold = np.asarray(threshold, dtype=float)
        self.left = np.asarray(left, dtype=np.int64)
        self.right = np.asarray(right, dtype=np.int64)
        self.value = np.asarray(value, dtype=float)

    @property
    def n_nodes(self) -> int:
        return self.feature.shape[0]

    def predict(self, X: np.ndarray) -> np.ndarray:
        out = np.empty(X.shape[0], dtype=float)
        for i in range(X.shape[0]):
            node = 0
            while self.feature[node] >= 0:
                if X[i, self.feature[node]] <= self.threshold[node]:
                    node = self.left[node]
                else:
                    node = self.right[node]
            out[i] = self.value[node]
        return out

    def to_dict(self) -> dict:
        return {
            "feature": self.feature.tolist(),
            "threshold": self.threshold.tolist(),
            "left": self.left.tolist(),
            "right": self.right.tolist(),
            "value": self.value.tolist(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "RegressionTree":
        return cls(d["feature"], d["threshold"], d["left"], d["right"], d["value"])


def _best_split(X, y, idx, feature_ids, min_leaf):
    """Best (gain, feature, threshold) over candidate features, or None.

    Gain is the decrease in summed squared error; only strictly positive
    gains qualify. ``feature_ids`` must be ascending for deterministic
    tie-breaking.
    """
    n = idx.shape[0]
    y_node = y[idx]
    total = y_node.sum()
    parent_score = total * total / n
    best = None  # (gain, feature, threshold)
    for f in feature_ids:
        x = X[idx, f]
        order = np.argsort(x)
        xs = x[order]
        csum = np.cumsum(y_node[order])
        # split after position i (1-based left count); both sides >= min_leaf
        counts = np.arange(min_leaf, n - min_leaf + 1)
        if counts.size == 0:
            continue
        boundary = xs[counts - 1] < xs[counts]  # only between distinct values
        counts = counts[boundary]
        if counts.size == 0:
            continue
        left_sum = csum[counts - 1]
        right_sum = total - left_sum
        score = left_sum**2 / counts + right_sum**2 / (n - counts)
        k = int(np.argmax(score))  # first max -> lowest threshold on ties
        gain = float(score[k]) - parent_score
        if gain <= 0.0:
            continue
        if best is None or gain > best[0]:
            lo, hi = xs[counts[k] - 1], xs[counts[k]]
            thr = 0.5 * (lo + hi)
            if not thr < hi:  # midpoint rounded up to hi: fall back to lo
                thr = lo
            best = (gain, int(f), float(thr))
    return best


def build_tree(
    X: np.ndarray,
    y: np.ndarray,
    *,
    max_depth: int,
    min_leaf: int,
    feature_subset: int | None = None,
    rng: np.random.Generator | None = None,
    train_pred: np.ndarray | None = None,
) -> RegressionTree:
    """Grow a depth-first CART tree on (X, y).

    ``feature_subset`` limits how many features are considered per split
    (drawn without replacement from ``rng``); None means all. When
    ``train_pred`` is given it is filled in place with the leaf value of
    every training row.
    """
    n, d = X.shape
    features = np.arange(d)
    subset = d if feature_subset is None else min(int(feature_subset), d)

    feature, threshold, left, right, value = [], [], [], [], []

    def new_node():
        feature.append(-1)
        threshold.append(0.0)
        left.append(-1)
        right.append(-1)
        value.append(0.0)
        return len(feature) - 1

    def grow(idx: np.ndarray, depth: int) -> int:
        node = new_node()
        y_node = y[idx]
        mean = float(y_node.mean())
        splittable = (
            depth < max_depth
            and idx.shape[0] >= 2 * min_leaf
            and y_node.min() < y_node.max()
        )
        best = None
        if splittable:
            if subset < d:
                feats = np.sort(rng.choice(d, size=subset, replace=False))
            else:
                feats = features
            best = _best_split(X, y, idx, feats, min_leaf)
        if best is None:
            value[node] = mean
            if train_pred is not None:
                train_pred[idx] = mean
            return node
        _, f, thr = best
        feature[node] = f
        threshold[node] = thr
        mask = X[idx, f] <= thr
        left[node] = grow(idx[mask], depth + 1)
        right[node] = grow(idx[~mask], depth + 1)
        return node

    grow(np.arange(n), 0)
    return RegressionTree(feature, threshold, left, right, value)
