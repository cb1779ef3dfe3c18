"""Confusion-matrix bookkeeping and the scalar performance measures.

A rate whose denominator is zero is reported as None ("undefined") rather
than 0.0 or NaN, so that downstream code can tell "no positive predictions
were made" apart from "every positive prediction was wrong". The table
renderer prints undefined entries as "NaN".
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError

__all__ = [
    "ConfusionCounts",
    "RateSet",
    "MetricsReport",
    "confusion_counts",
    "rates",
    "f1",
    "f3",
    "metrics_report",
    "render_metrics_table",
]

REPORT_COLUMNS = ("Recall", "Specificity", "Precision", "Accuracy", "F1")


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


@dataclass(frozen=True)
class RateSet:
    """The six rates derivable from a confusion matrix; None where undefined."""

    tpr: float | None
    fnr: float | None
    tnr: float | None
    fpr: float | None
    ppv: float | None
    npv: float | None


@dataclass(frozen=True)
class MetricsReport:
    """The five reported columns: recall, specificity, precision, accuracy, F1."""

    recall: float | None
    specificity: float | None
    precision: float | None
    accuracy: float | None
    f1: float | None


def _label_vector(name: str, values) -> np.ndarray:
    arr = np.asarray(values)
    if arr.ndim != 1 or arr.size == 0:
        raise InputError(f"{name} must be a nonempty 1-d vector")
    if not np.isin(arr, (-1, 1)).all():
        raise InputError(f"{name} may only contain -1 and +1")
    return arr.astype(np.int64)


def confusion_counts(predictions, labels) -> ConfusionCounts:
    """Count tp/fp/tn/fn with +1 as the positive class."""
    pred = _label_vector("predictions", predictions)
    lab = _label_vector("labels", labels)
    if pred.size != lab.size:
        raise InputError(
            f"predictions ({pred.size}) and labels ({lab.size}) differ in length"
        )
    pred_pos = pred == 1
    lab_pos = lab == 1
    return ConfusionCounts(
        tp=int(np.count_nonzero(pred_pos & lab_pos)),
        fp=int(np.count_nonzero(pred_pos & ~lab_pos)),
        tn=int(np.count_nonzero(~pred_pos & ~lab_pos)),
        fn=int(np.count_nonzero(~pred_pos & lab_pos)),
    )


def _ratio(num: int, den: int) -> float | None:
    return None if den == 0 else num / den


def rates(c: ConfusionCounts) -> RateSet:
    return RateSet(
        tpr=_ratio(c.tp, c.tp + c.fn),
        fnr=_ratio(c.fn, c.tp + c.fn),
        tnr=_ratio(c.tn, c.tn + c.fp),
        fpr=_ratio(c.fp, c.tn + c.fp),
        ppv=_ratio(c.tp, c.tp + c.fp),
        npv=_ratio(c.tn, c.tn + c.fn),
    )


def _check_unit(name: str, value: float) -> float:
    if not 0.0 <= value <= 1.0:
        raise InputError(f"{name} must lie in [0, 1], got {value!r}")
    return value


def f1(recall: float, precision: float) -> float:
    """Harmonic mean of recall and precision; 0 if either component is 0."""
    _check_unit("recall", recall)
    _check_unit("precision", precision)
    if recall == 0.0 or precision == 0.0:
        return 0.0
    return 2.0 / (1.0 / recall + 1.0 / precision)


def f3(recall: float, precision: float, specificity: float) -> float:
    """Harmonic mean of recall, precision and specificity; 0 if any is 0."""
    _check_unit("recall", recall)
    _check_unit("precision", precision)
    _check_unit("specificity", specificity)
    if recall == 0.0 or precision == 0.0 or specificity == 0.0:
        return 0.0
    return 3.0 / (1.0 / recall + 1.0 / precision + 1.0 / specificity)


def metrics_report(predictions, labels) -> MetricsReport:
    c = confusion_counts(predictions, labels)
    r = rates(c)
    if r.tpr == 0.0 or r.ppv == 0.0:
        f1_value: float | None = 0.0
    elif r.tpr is None or r.ppv is None:
        f1_value = None
    else:
        f1_value = f1(r.tpr, r.ppv)
    return MetricsReport(
        recall=r.tpr,
        specificity=r.tnr,
        precision=r.ppv,
        accuracy=(c.tp + c.tn) / c.total,
        f1=f1_value,
    )


def format_metric(value: float | None) -> str:
    return "NaN" if value is None else f"{value:.4f}"


def render_metrics_table(rows: list[tuple[str, MetricsReport]], name_header: str = "Algorithm") -> str:
    """Fixed-order five-column table, four decimal places, 'NaN' for undefined."""
    name_width = max([len(name_header)] + [len(name) for name, _ in rows])
    header = name_header.ljust(name_width) + "".join(
        c.rjust(13) for c in REPORT_COLUMNS
    )
    lines = [header]
    for name, report in rows:
        cells = (
            report.recall,
            report.specificity,
            report.precision,
            report.accuracy,
            report.f1,
        )
        lines.append(
            name.ljust(name_width) + "".join(format_metric(v).rjust(13) for v in cells)
        )
    return "\n".join(lines)
