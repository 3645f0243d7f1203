"""Binary-classification evaluation: confusion counts, accuracy family,
ROC curve, and trapezoidal AUC."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import SingleClassData


@dataclass(frozen=True)
class EvalReport:
    tp: int
    fp: int
    tn: int
    fn: int
    accuracy: float   # percentages, matching the reporting convention
    precision: float
    recall: float
    f1: float
    roc: list[tuple[float, float]]  # (FPR, TPR), threshold descending
    auc: float

    def as_dict(self) -> dict:
        return {
            "tp": self.tp, "fp": self.fp, "tn": self.tn, "fn": self.fn,
            "accuracy": self.accuracy, "precision": self.precision,
            "recall": self.recall, "f1": self.f1, "auc": self.auc,
            "roc": [list(point) for point in self.roc],
        }


def roc_points(scores: np.ndarray,
               labels: np.ndarray) -> list[tuple[float, float]]:
    """ROC curve from sweeping the decision threshold over all distinct
    scores (predicting positive when score >= threshold)."""
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels)
    pos = int(np.count_nonzero(labels == 1))
    neg = labels.shape[0] - pos
    if pos == 0 or neg == 0:
        raise SingleClassData("ROC requires both classes")
    order = np.argsort(-scores, kind="stable")
    sorted_labels = labels[order]
    sorted_scores = scores[order]
    # Cut after each block of tied scores
    cuts = np.flatnonzero(np.diff(sorted_scores)) + 1
    tp_cum = np.cumsum(sorted_labels == 1)
    fp_cum = np.cumsum(sorted_labels == 0)
    points = [(0.0, 0.0)]
    for cut in cuts:
        points.append((fp_cum[cut - 1] / neg, tp_cum[cut - 1] / pos))
    points.append((1.0, 1.0))
    return points


def trapezoid_auc(points: list[tuple[float, float]]) -> float:
    fpr = np.array([p[0] for p in points])
    tpr = np.array([p[1] for p in points])
    return float(np.trapezoid(tpr, fpr))


def evaluate_scores(scores: np.ndarray, labels: np.ndarray,
                    threshold: float = 0.5) -> EvalReport:
    """Full report; a sample is predicted positive when score >= threshold."""
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels).astype(np.int64)
    predicted = scores >= threshold
    actual = labels == 1
    tp = int(np.count_nonzero(predicted & actual))
    fp = int(np.count_nonzero(predicted & ~actual))
    tn = int(np.count_nonzero(~predicted & ~actual))
    fn = int(np.count_nonzero(~predicted & actual))
    total = tp + fp + tn + fn
    accuracy = 100.0 * (tp + tn) / total
    precision = 100.0 * tp / (tp + fp) if tp + fp else 0.0
    recall = 100.0 * tp / (tp + fn) if tp + fn else 0.0
    f1 = (2 * precision * recall / (precision + recall)
          if precision + recall else 0.0)
    points = roc_points(scores, labels)
    return EvalReport(tp=tp, fp=fp, tn=tn, fn=fn, accuracy=accuracy,
                      precision=precision, recall=recall, f1=f1,
                      roc=points, auc=trapezoid_auc(points))
