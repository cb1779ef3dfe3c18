"""One node's decision stage: score candidate features, pick a threshold, partition.

Selection is deterministic: scores are compared with strict inequality
against a running maximum that starts at zero, so the first candidate (in
subset order, then in ascending threshold order) wins all ties, and a
selector returns None when nothing scores above zero.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curves import PrcCurve, RocCurve, auc, auprc
from .errors import InputError

__all__ = [
    "SplitSpec",
    "select_feature_auprc",
    "select_feature_auc",
    "select_feature_weighted",
    "select_threshold_f1",
    "select_threshold_f3",
    "select_threshold_hmean",
    "select_split_gini",
    "apply_split",
]


@dataclass(frozen=True)
class SplitSpec:
    feature_index: int
    threshold: float
    criterion_score: float
    criterion: str


def select_feature_auprc(X, y, feature_subset) -> tuple[int, PrcCurve] | None:
    """Feature with the largest precision-recall area; first-wins on ties."""
    best: tuple[int, PrcCurve] | None = None
    best_area = 0.0
    for f in feature_subset:
        curve = auprc(X[:, f], y)
        if curve.area > best_area:
            best_area = curve.area
            best = (int(f), curve)
    return best


def select_feature_auc(X, y, feature_subset) -> tuple[int, RocCurve] | None:
    """Feature with the largest ROC area; first-wins on ties."""
    best: tuple[int, RocCurve] | None = None
    best_area = 0.0
    for f in feature_subset:
        curve = auc(X[:, f], y)
        if curve.area > best_area:
            best_area = curve.area
            best = (int(f), curve)
    return best


def select_feature_weighted(
    X, y, feature_subset, weight: float
) -> tuple[int, float, PrcCurve, RocCurve] | None:
    """Feature maximizing weight*AUPRC + (1-weight)*AUC; returns both series."""
    if not 0.0 <= weight <= 1.0:
        raise InputError(f"hybrid weight must lie in [0, 1], got {weight!r}")
    best: tuple[int, float, PrcCurve, RocCurve] | None = None
    best_score = 0.0
    for f in feature_subset:
        pc = auprc(X[:, f], y)
        rc = auc(X[:, f], y)
        score = weight * pc.area + (1 - weight) * rc.area
        if score > best_score:
            best_score = score
            best = (int(f), score, pc, rc)
    return best


def _best_threshold(thresholds: np.ndarray, scores: np.ndarray) -> float | None:
    if thresholds.size == 0:
        raise InputError("empty curve series")
    j = int(np.argmax(scores))  # first occurrence of the maximum
    if scores[j] <= 0.0:
        return None
    return float(thresholds[j])


def _harmonic2(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return 2.0 / (1.0 / a + 1.0 / b)


def select_threshold_f1(series: PrcCurve) -> float | None:
    """Threshold whose curve point maximizes the recall/precision harmonic mean.

    The series' points are used exactly as the sweep produced them, flipped
    entries included.
    """
    scores = _harmonic2(series.recall, series.precision)
    return _best_threshold(series.thresholds, scores)


def select_threshold_f3(prc_series: PrcCurve, roc_series: RocCurve) -> float | None:
    """Threshold maximizing the harmonic mean of recall, precision, specificity.

    All three components describe the same candidate classifier at point j: at
    unflipped points it predicts positive at-or-below the threshold, so its
    specificity is 1 - fpr[j]; at flipped points recall and precision already
    describe the complement classifier (positive above the threshold), whose
    specificity is fpr[j] itself. The two series must come from the same
    feature column so their threshold grids coincide.
    """
    if prc_series.thresholds.size != roc_series.thresholds.size or not np.array_equal(
        prc_series.thresholds, roc_series.thresholds
    ):
        raise ValueError("precision-recall and ROC series are not aligned")
    specificity = np.where(prc_series.flipped, roc_series.fpr, 1.0 - roc_series.fpr)
    with np.errstate(divide="ignore"):
        scores = 3.0 / (
            1.0 / prc_series.recall
            + 1.0 / prc_series.precision
            + 1.0 / specificity
        )
    return _best_threshold(prc_series.thresholds, scores)


def select_threshold_hmean(series: RocCurve) -> float | None:
    """Threshold maximizing the sensitivity/specificity harmonic mean."""
    scores = _harmonic2(series.tpr, 1.0 - series.fpr)
    return _best_threshold(series.thresholds, scores)


def select_split_gini(X, y, feature_subset) -> tuple[int, float, float] | None:
    """Impurity-minimizing axis split: (feature, threshold, impurity decrease).

    Returns None when no split strictly reduces the weighted Gini impurity.
    """
    y = np.asarray(y)
    n = y.size
    total_pos = int(np.count_nonzero(y == 1))
    p_pos = total_pos / n
    parent = 1.0 - p_pos * p_pos - (1.0 - p_pos) * (1.0 - p_pos)
    best: tuple[int, float, float] | None = None
    best_decrease = 0.0
    for f in feature_subset:
        values = X[:, f]
        order = np.argsort(values, kind="stable")
        sorted_values = values[order]
        sorted_pos = np.asarray(y[order] == 1)
        run_end = np.empty(n, dtype=bool)
        run_end[:-1] = sorted_values[1:] != sorted_values[:-1]
        run_end[-1] = True
        # drop the last distinct value: splitting there leaves the right side empty
        cut = np.flatnonzero(run_end)[:-1]
        if cut.size == 0:
            continue
        n_left = cut + 1
        pos_left = np.cumsum(sorted_pos)[cut]
        n_right = n - n_left
        pos_right = total_pos - pos_left
        pl = pos_left / n_left
        pr = pos_right / n_right
        gini_left = 1.0 - pl * pl - (1.0 - pl) * (1.0 - pl)
        gini_right = 1.0 - pr * pr - (1.0 - pr) * (1.0 - pr)
        weighted = (n_left * gini_left + n_right * gini_right) / n
        decrease = parent - weighted
        j = int(np.argmax(decrease))
        if decrease[j] > best_decrease:
            best_decrease = float(decrease[j])
            best = (int(f), float(sorted_values[cut][j]), float(decrease[j]))
    return best


def apply_split(X, feature_index: int, threshold: float) -> tuple[np.ndarray, np.ndarray]:
    """Partition row indices into (x[feature] <= threshold, the rest)."""
    X = np.asarray(X)
    if not 0 <= feature_index < X.shape[1]:
        raise InputError(
            f"feature index {feature_index} out of range for {X.shape[1]} features"
        )
    mask = X[:, feature_index] <= threshold
    return np.flatnonzero(mask), np.flatnonzero(~mask)
