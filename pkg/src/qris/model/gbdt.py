"""Gradient-boosted decision trees on binary logistic loss.

Each round fits one regression tree to the negative gradients, using
second-order (gradient/hessian) split gains with L2 leaf regularization:
gain = 0.5 * (GL^2/(HL+lam) + GR^2/(HR+lam) - G^2/(H+lam)), a split
being admitted only when gain >= gamma and each child's hessian sum is
at least min_child_weight.  Leaf scores are Newton steps scaled by the
learning rate; the model's raw output is the base score (training-set
log odds) plus the sum of leaf scores.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import _kernels
from ..errors import SingleClassData
from .tree import FlatTree, _TreeBuilder

#: L2 regularization on leaf weights (fixed, not searched).
LAMBDA = 1.0


@dataclass(frozen=True)
class GbdtParams:
    n_estimators: int = 150
    max_depth: int = 6
    learning_rate: float = 0.1
    subsample: float = 1.0
    colsample_bytree: float = 1.0
    gamma: float = 0.0
    min_child_weight: float = 1.0

    def as_dict(self) -> dict:
        return {
            "n_estimators": self.n_estimators,
            "max_depth": self.max_depth,
            "learning_rate": self.learning_rate,
            "subsample": self.subsample,
            "colsample_bytree": self.colsample_bytree,
            "gamma": self.gamma,
            "min_child_weight": self.min_child_weight,
        }


def _sigmoid(z: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.exp(-z))


def _grow(builder: _TreeBuilder, X: np.ndarray, grad: np.ndarray,
          hess: np.ndarray, idx: np.ndarray, depth: int,
          columns: np.ndarray, params: GbdtParams,
          learning_rate: float) -> int:
    g_sum = float(grad[idx].sum())
    h_sum = float(hess[idx].sum())

    best_gain = -np.inf
    best_feature = -1
    best_threshold = 0.0
    if depth < params.max_depth and idx.shape[0] >= 2:
        for f in columns:
            order = np.argsort(X[idx, f], kind="stable")
            values = X[idx[order], f]
            gain, threshold = _kernels.best_split_gh(
                np.ascontiguousarray(values),
                np.ascontiguousarray(grad[idx[order]]),
                np.ascontiguousarray(hess[idx[order]]),
                LAMBDA, params.min_child_weight)
            if gain >= params.gamma and gain > best_gain:
                best_gain = gain
                best_feature = int(f)
                best_threshold = threshold

    if best_feature < 0:
        return builder.add_leaf(learning_rate * (-g_sum / (h_sum + LAMBDA)))

    node = builder.add_split(best_feature, best_threshold)
    mask = X[idx, best_feature] < best_threshold
    left = _grow(builder, X, grad, hess, idx[mask], depth + 1, columns,
                 params, learning_rate)
    right = _grow(builder, X, grad, hess, idx[~mask], depth + 1, columns,
                  params, learning_rate)
    builder.wire(node, left, right)
    return node


def train_gbdt(X: np.ndarray, y: np.ndarray, params: GbdtParams,
               seed: int) -> tuple[list[FlatTree], float]:
    """Fit the boosted ensemble; returns (trees, base_score)."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    n, n_features = X.shape
    prevalence = float(y.mean())
    if prevalence in (0.0, 1.0):
        raise SingleClassData("training data contains a single class")
    base_score = float(np.log(prevalence / (1.0 - prevalence)))

    rng = np.random.default_rng(seed)
    raw = np.full(n, base_score)
    trees: list[FlatTree] = []
    for _ in range(params.n_estimators):
        p = _sigmoid(raw)
        grad = p - y
        hess = p * (1.0 - p)

        if params.subsample < 1.0:
            size = max(2, round(params.subsample * n))
            idx = np.sort(rng.choice(n, size=size, replace=False))
        else:
            idx = np.arange(n)
        if params.colsample_bytree < 1.0:
            k = max(1, round(params.colsample_bytree * n_features))
            columns = np.sort(rng.choice(n_features, size=k, replace=False))
        else:
            columns = np.arange(n_features)

        builder = _TreeBuilder()
        _grow(builder, X, grad, hess, idx, 0, columns, params,
              params.learning_rate)
        tree = builder.build()
        trees.append(tree)
        raw += tree.predict(X)
    return trees, base_score


def predict_raw(trees: list[FlatTree], base_score: float,
                X: np.ndarray) -> np.ndarray:
    raw = np.full(np.asarray(X).shape[0], base_score)
    for tree in trees:
        raw += tree.predict(X)
    return raw


def predict_proba(trees: list[FlatTree], base_score: float,
                  X: np.ndarray) -> np.ndarray:
    return _sigmoid(predict_raw(trees, base_score, X))
