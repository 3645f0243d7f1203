"""Tree-ensemble training, tuning, persistence, and evaluation."""

from __future__ import annotations

import numpy as np

from ..errors import SchemaMismatch, SingleClassData
from .forest import ForestParams, train_forest
from .gbdt import GbdtParams, train_gbdt
from .io import (TreeEnsemble, dump_model, load_model, new_ensemble,
                 read_model, save_model)
from .metrics import EvalReport, evaluate_scores, roc_points, trapezoid_auc
from .tuning import cv_accuracy, stratified_folds, tune

KINDS = ("gbdt", "rf")


def train(kind: str, X: np.ndarray, y: np.ndarray, params=None,
          seed: int = 42) -> TreeEnsemble:
    """Train an ensemble of the given kind with the given (or default)
    hyperparameters."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != 24:
        raise SchemaMismatch(
            f"expected 24 feature columns, got {X.shape}")
    y = np.asarray(y, dtype=np.float64)
    if np.unique(y).shape[0] < 2:
        raise SingleClassData("training data contains a single class")
    if kind == "gbdt":
        params = params or GbdtParams()
        trees, base_score = train_gbdt(X, y, params, seed)
        return new_ensemble("gbdt", trees, params.as_dict(), seed,
                            base_score=base_score)
    if kind == "rf":
        params = params or ForestParams()
        trees = train_forest(X, y, params, seed)
        return new_ensemble("rf", trees, params.as_dict(), seed)
    raise ValueError(f"unknown model kind {kind!r}")


def evaluate(model: TreeEnsemble, X: np.ndarray,
             y: np.ndarray) -> EvalReport:
    return evaluate_scores(model.predict_proba(X), y)


__all__ = [
    "KINDS", "TreeEnsemble", "GbdtParams", "ForestParams", "EvalReport",
    "train", "train_gbdt", "train_forest", "evaluate", "evaluate_scores",
    "roc_points", "trapezoid_auc", "tune", "cv_accuracy",
    "stratified_folds", "dump_model", "load_model", "new_ensemble",
    "read_model", "save_model",
]
