"""Per-feature threshold sweeps: precision-recall and ROC series with trapezoidal areas.

Both sweeps treat "x <= threshold" as the positive prediction and produce one
point per distinct feature value, in ascending order. The precision-recall
sweep replaces any point whose precision falls below the positive-class
baseline with its complement-set counterpart (recall -> 1 - recall, precision
recomputed over the samples above the threshold) before areas are accumulated.
That per-point replacement can make the recall series non-monotone and
individual trapezoid increments negative: a feature that separates the classes
perfectly in reverse orientation scores 17/24, not 1. The ROC area is
reflected to 1 - area whenever it comes out below 0.5, so it always lands in
[0.5, 1].
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import ClassVar

import numpy as np

from .errors import InputError

__all__ = ["PrcCurve", "RocCurve", "prc_baseline", "auprc", "auc"]


@dataclass
class PrcCurve:
    """Precision-recall sweep over one feature column.

    `flipped[j]` records whether point j was replaced by its complement-set
    counterpart; at those points recall/precision describe the classifier
    that predicts positive *above* the threshold.
    """

    kind: ClassVar[str] = "prc"

    thresholds: np.ndarray
    recall: np.ndarray
    precision: np.ndarray
    flipped: np.ndarray
    baseline: float
    area: float


@dataclass
class RocCurve:
    """ROC sweep over one feature column; baseline is the random-guess area."""

    kind: ClassVar[str] = "roc"

    thresholds: np.ndarray
    tpr: np.ndarray
    fpr: np.ndarray
    area: float
    baseline: float = 0.5


def _column_stats(feature_column, labels):
    """Distinct ascending thresholds with cumulative positive/sample counts."""
    values = np.asarray(feature_column, dtype=np.float64)
    y = np.asarray(labels)
    if values.ndim != 1 or y.ndim != 1:
        raise InputError("feature column and labels must be 1-d vectors")
    if values.size == 0:
        raise InputError("feature column is empty")
    if values.size != y.size:
        raise InputError(
            f"feature column ({values.size}) and labels ({y.size}) differ in length"
        )
    order = np.argsort(values, kind="stable")
    sorted_values = values[order]
    sorted_pos = y[order] == 1
    run_end = np.empty(sorted_values.size, dtype=bool)
    run_end[:-1] = sorted_values[1:] != sorted_values[:-1]
    run_end[-1] = True
    pos_cum = np.cumsum(sorted_pos)[run_end]
    n_cum = np.flatnonzero(run_end) + 1
    return sorted_values[run_end], pos_cum, n_cum


def _sequential_sum(terms: np.ndarray) -> float:
    # cumsum accumulates strictly left to right; the tests pin curve areas
    # bit-for-bit against a stepwise trace, which pairwise np.sum may not match.
    return float(np.cumsum(terms)[-1]) if terms.size else 0.0


def prc_baseline(labels) -> float:
    """Positive-class prevalence: the precision of a random classifier."""
    y = np.asarray(labels)
    if y.ndim != 1 or y.size == 0:
        raise InputError("labels must be a nonempty 1-d vector")
    return int(np.count_nonzero(y == 1)) / y.size


def auprc(feature_column, labels) -> PrcCurve:
    """Precision-recall sweep of one feature, with the below-baseline point flip.

    Requires at least one positive label (the baseline must be positive);
    callers that can see pure-negative sample sets must leaf-ify them instead
    of sweeping.
    """
    thresholds, pos_cum, n_cum = _column_stats(feature_column, labels)
    n = int(n_cum[-1])
    total_pos = int(pos_cum[-1])
    if total_pos == 0:
        raise InputError("precision-recall sweep needs at least one positive label")
    baseline = total_pos / n

    recall = pos_cum / total_pos
    precision = pos_cum / n_cum
    flipped = precision < baseline
    where = np.flatnonzero(flipped)
    if where.size:
        # The final point has precision exactly equal to the baseline, so it
        # never flips and the complement-set division below never sees n - n.
        recall[where] = 1.0 - recall[where]
        precision[where] = (total_pos - pos_cum[where]) / (n - n_cum[where])

    terms = np.empty(thresholds.size, dtype=np.float64)
    terms[0] = recall[0] * (1 + precision[0]) / 2
    terms[1:] = np.diff(recall) * (precision[1:] + precision[:-1]) / 2
    return PrcCurve(
        thresholds=thresholds,
        recall=recall,
        precision=precision,
        flipped=flipped,
        baseline=baseline,
        area=_sequential_sum(terms),
    )


def auc(feature_column, labels) -> RocCurve:
    """ROC sweep of one feature; the area is reflected to 1 - area below 0.5."""
    thresholds, pos_cum, n_cum = _column_stats(feature_column, labels)
    total_pos = int(pos_cum[-1])
    total_neg = int(n_cum[-1]) - total_pos
    if total_pos == 0 or total_neg == 0:
        raise InputError("ROC sweep needs both classes present")

    tpr = pos_cum / total_pos
    fpr = (n_cum - pos_cum) / total_neg
    terms = np.empty(thresholds.size, dtype=np.float64)
    terms[0] = tpr[0] * fpr[0] / 2
    terms[1:] = np.diff(fpr) * (tpr[1:] + tpr[:-1]) / 2
    area = _sequential_sum(terms)
    if area < 0.5:
        area = 1 - area
    return RocCurve(thresholds=thresholds, tpr=tpr, fpr=fpr, area=area)
