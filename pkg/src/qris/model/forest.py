"""Random forest of classification trees with per-split feature
subsampling and optional bootstrap bagging.

Splits minimize the weighted child impurity (Gini or entropy; the
"logloss" criterion name is accepted as an alias of entropy, to which it
is equivalent for split ranking).  Leaves store the class-1 fraction of
their training rows; the forest prediction is the mean leaf probability
across trees.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .. import _kernels
from ..errors import SingleClassData
from .tree import FlatTree, _TreeBuilder

_CRITERION_CODES = {"gini": 0, "entropy": 1, "logloss": 1}


@dataclass(frozen=True)
class ForestParams:
    n_estimators: int = 300
    max_depth: int = 20
    min_samples_split: int = 2
    min_samples_leaf: int = 1
    max_features: str = "sqrt"  # "sqrt" | "log2" | "all"
    bootstrap: bool = True
    criterion: str = "gini"  # "gini" | "entropy" | "logloss"

    def as_dict(self) -> dict:
        return {
            "n_estimators": self.n_estimators,
            "max_depth": self.max_depth,
            "min_samples_split": self.min_samples_split,
            "min_samples_leaf": self.min_samples_leaf,
            "max_features": self.max_features,
            "bootstrap": self.bootstrap,
            "criterion": self.criterion,
        }


def _num_split_features(max_features: str, n_features: int) -> int:
    if max_features == "sqrt":
        return max(1, int(math.sqrt(n_features)))
    if max_features == "log2":
        return max(1, int(math.log2(n_features)))
    if max_features in ("all", None):
        return n_features
    raise ValueError(f"unknown max_features {max_features!r}")


def _grow(builder: _TreeBuilder, X: np.ndarray, y: np.ndarray,
          idx: np.ndarray, depth: int, params: ForestParams,
          n_split_features: int, criterion: int,
          rng: np.random.Generator) -> int:
    node_y = y[idx]
    ones = float(node_y.sum())
    n = idx.shape[0]
    p1 = ones / n

    if (depth >= params.max_depth or n < params.min_samples_split
            or ones == 0 or ones == n):
        return builder.add_leaf(p1)

    n_features = X.shape[1]
    if n_split_features < n_features:
        candidates = rng.permutation(n_features)[:n_split_features]
    else:
        candidates = np.arange(n_features)

    best_cost = np.inf
    best_feature = -1
    best_threshold = 0.0
    for f in candidates:
        order = np.argsort(X[idx, f], kind="stable")
        values = X[idx[order], f]
        cost, threshold = _kernels.best_split_impurity(
            np.ascontiguousarray(values),
            np.ascontiguousarray(node_y[order]),
            params.min_samples_leaf, criterion)
        if cost < best_cost:
            best_cost = cost
            best_feature = int(f)
            best_threshold = threshold

    if best_feature < 0:
        return builder.add_leaf(p1)

    node = builder.add_split(best_feature, best_threshold)
    mask = X[idx, best_feature] < best_threshold
    left = _grow(builder, X, y, idx[mask], depth + 1, params,
                 n_split_features, criterion, rng)
    right = _grow(builder, X, y, idx[~mask], depth + 1, params,
                  n_split_features, criterion, rng)
    builder.wire(node, left, right)
    return node


def train_forest(X: np.ndarray, y: np.ndarray, params: ForestParams,
                 seed: int) -> list[FlatTree]:
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    n = X.shape[0]
    if float(y.mean()) in (0.0, 1.0):
        raise SingleClassData("training data contains a single class")
    criterion = _CRITERION_CODES[params.criterion]
    n_split_features = _num_split_features(params.max_features, X.shape[1])

    rng = np.random.default_rng(seed)
    trees: list[FlatTree] = []
    for _ in range(params.n_estimators):
        if params.bootstrap:
            idx = np.sort(rng.integers(0, n, size=n))
        else:
            idx = np.arange(n)
        builder = _TreeBuilder()
        _grow(builder, X, y, idx, 0, params, n_split_features, criterion, rng)
        trees.append(builder.build())
    return trees


def predict_proba(trees: list[FlatTree], X: np.ndarray) -> np.ndarray:
    probs = np.zeros(np.asarray(X).shape[0])
    for tree in trees:
        probs += tree.predict(X)
    return probs / len(trees)
