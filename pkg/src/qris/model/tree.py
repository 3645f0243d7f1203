"""Flat binary decision trees shared by both ensemble kinds.

A tree is stored as five parallel arrays (feature, threshold, left,
right, value); internal nodes have ``feature >= 0`` and route a sample
left when ``x[feature] < threshold``.  Leaves carry a single score whose
meaning depends on the ensemble kind (log-odds increment for boosting,
class-1 probability for a forest).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

LEAF = -1


class _TreeBuilder:
    """Accumulates nodes during recursive growth, then freezes arrays."""

    def __init__(self) -> None:
        self.feature: list[int] = []
        self.threshold: list[float] = []
        self.left: list[int] = []
        self.right: list[int] = []
        self.value: list[float] = []

    def add_leaf(self, value: float) -> int:
        return self._add(LEAF, 0.0, LEAF, LEAF, value)

    def add_split(self, feature: int, threshold: float) -> int:
        return self._add(feature, threshold, LEAF, LEAF, 0.0)

    def _add(self, f: int, t: float, l: int, r: int, v: float) -> int:
        self.feature.append(f)
        self.threshold.append(t)
        self.left.append(l)
        self.right.append(r)
        self.value.append(v)
        return len(self.feature) - 1

    def wire(self, node: int, left: int, right: int) -> None:
        self.left[node] = left
        self.right[node] = right

    def build(self) -> "FlatTree":
        return FlatTree(
            feature=np.array(self.feature, dtype=np.int32),
            threshold=np.array(self.threshold, dtype=np.float64),
            left=np.array(self.left, dtype=np.int32),
            right=np.array(self.right, dtype=np.int32),
            value=np.array(self.value, dtype=np.float64),
        )


@dataclass(frozen=True)
class FlatTree:
    feature: np.ndarray
    threshold: np.ndarray
    left: np.ndarray
    right: np.ndarray
    value: np.ndarray

    @property
    def n_nodes(self) -> int:
        return self.feature.shape[0]

    def predict(self, X: np.ndarray) -> np.ndarray:
        """Leaf value reached by each row of ``X``."""
        X = np.asarray(X, dtype=np.float64)
        idx = np.zeros(X.shape[0], dtype=np.int32)
        rows = np.arange(X.shape[0])
        while True:
            active = self.feature[idx] >= 0
            if not active.any():
                break
            a_idx = idx[active]
            go_left = X[rows[active], self.feature[a_idx]] \
                < self.threshold[a_idx]
            idx[active] = np.where(go_left, self.left[a_idx],
                                   self.right[a_idx])
        return self.value[idx]
