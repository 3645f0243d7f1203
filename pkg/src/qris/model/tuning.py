"""Seeded uniform random search over the hyperparameter ranges, scored
by mean accuracy under 5-fold stratified cross-validation.

The search stops after ``trials`` configurations or when the time cap is
reached, whichever comes first; ties keep the earlier trial.
"""

from __future__ import annotations

import random
import time

import numpy as np

from ..errors import TooFewRows
from .forest import ForestParams, predict_proba as forest_proba, train_forest
from .gbdt import GbdtParams, predict_proba as gbdt_proba, train_gbdt

N_FOLDS = 5


def stratified_folds(y: np.ndarray, n_folds: int,
                     seed: int) -> list[np.ndarray]:
    """Deterministic per-class round-robin assignment to folds."""
    y = np.asarray(y)
    rng = np.random.default_rng(seed)
    folds: list[list[int]] = [[] for _ in range(n_folds)]
    for cls in np.unique(y):
        idx = np.flatnonzero(y == cls)
        if idx.shape[0] < n_folds:
            raise TooFewRows(
                f"class {cls} has {idx.shape[0]} rows; {n_folds} folds "
                "require at least one per fold")
        rng.shuffle(idx)
        for i, row in enumerate(idx):
            folds[i % n_folds].append(int(row))
    return [np.sort(np.array(f, dtype=np.int64)) for f in folds]


def sample_gbdt_params(rng: random.Random) -> GbdtParams:
    return GbdtParams(
        n_estimators=rng.randint(50, 300),
        max_depth=rng.randint(3, 15),
        learning_rate=rng.uniform(0.01, 0.3),
        subsample=rng.uniform(0.5, 1.0),
        colsample_bytree=rng.uniform(0.5, 1.0),
        gamma=rng.uniform(0.0, 5.0),
        min_child_weight=rng.uniform(1.0, 10.0),
    )


def sample_forest_params(rng: random.Random) -> ForestParams:
    return ForestParams(
        n_estimators=rng.randint(100, 1000),
        max_depth=rng.randint(5, 50),
        min_samples_split=rng.randint(2, 20),
        min_samples_leaf=rng.randint(1, 20),
        max_features=rng.choice(["sqrt", "log2", "all"]),
        bootstrap=rng.choice([True, False]),
        criterion=rng.choice(["gini", "entropy", "logloss"]),
    )


def cv_accuracy(kind: str, X: np.ndarray, y: np.ndarray, params,
                seed: int) -> float:
    """Mean accuracy over the stratified folds (fold i held out)."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    folds = stratified_folds(y, N_FOLDS, seed)
    accuracies = []
    for i, held_out in enumerate(folds):
        mask = np.ones(y.shape[0], dtype=bool)
        mask[held_out] = False
        if kind == "gbdt":
            trees, base = train_gbdt(X[mask], y[mask], params, seed + i)
            p = gbdt_proba(trees, base, X[held_out])
        else:
            trees = train_forest(X[mask], y[mask], params, seed + i)
            p = forest_proba(trees, X[held_out])
        accuracies.append(float(np.mean((p >= 0.5) == (y[held_out] == 1))))
    return float(np.mean(accuracies))


def tune(kind: str, X: np.ndarray, y: np.ndarray, trials: int = 100,
         time_cap: float = 3600.0, seed: int = 42, progress=None,
         jobs: int = 1) -> tuple[object, float, int]:
    """Returns (best params, best CV accuracy, trials completed).

    All candidate configurations are drawn up front from one seeded
    stream, so the search outcome does not depend on ``jobs`` — only
    which trials finish before the time cap can.  Ties keep the
    earliest trial.
    """
    rng = random.Random(seed)
    sampler = sample_gbdt_params if kind == "gbdt" else sample_forest_params
    candidates = [sampler(rng) for _ in range(trials)]
    start = time.monotonic()
    scores: dict[int, float] = {}
    if jobs <= 1:
        for trial, params in enumerate(candidates):
            if trial > 0 and time.monotonic() - start >= time_cap:
                break
            scores[trial] = cv_accuracy(kind, X, y, params, seed)
            if progress is not None:
                progress(trial, params, scores[trial])
    else:
        from concurrent.futures import ProcessPoolExecutor, as_completed
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = {pool.submit(cv_accuracy, kind, X, y, params, seed):
                       trial for trial, params in enumerate(candidates)}
            for future in as_completed(futures):
                trial = futures[future]
                scores[trial] = future.result()
                if progress is not None:
                    progress(trial, candidates[trial], scores[trial])
                if time.monotonic() - start >= time_cap:
                    for other in futures:
                        other.cancel()
                    break
    if not scores:
        raise ValueError("trials must be at least 1")
    best_trial = max(sorted(scores), key=lambda t: scores[t])
    return candidates[best_trial], scores[best_trial], len(scores)
