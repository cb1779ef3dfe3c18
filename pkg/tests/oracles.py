"""Slow reference implementations used only by the test suite.

These are deliberately literal, quadratic transcriptions of the curve-area
procedures: for every distinct threshold they rescan the whole column with
`which(x <= v)` style membership tests and accumulate trapezoids one step
at a time. The production code must agree with them to 1e-12 on random
inputs; they are never imported by the package itself.
"""

from __future__ import annotations


def prc_area_literal(feature, labels):
    """Step-by-step precision-recall sweep; returns (area, recall, precision)."""
    values = [float(v) for v in feature]
    y = [int(v) for v in labels]
    n = len(values)
    assert n == len(y) > 0
    uniq = sorted(set(values))
    total_pos = sum(1 for v in y if v == 1)
    total_neg = sum(1 for v in y if v == -1)
    assert total_pos > 0
    baseline = total_pos / (total_pos + total_neg)
    recall = [0.0] * len(uniq)
    precision = [0.0] * len(uniq)
    area = 0.0
    for j, v in enumerate(uniq):
        indice = [i for i in range(n) if values[i] <= v]
        pos_in = sum(1 for i in indice if y[i] == 1)
        recall[j] = pos_in / total_pos
        precision[j] = pos_in / len(indice)
        if precision[j] < baseline:
            recall[j] = 1 - recall[j]
            precision[j] = (total_pos - pos_in) / (n - len(indice))
        if j == 0:
            area = recall[j] * (1 + precision[j]) / 2
        else:
            area = area + (recall[j] - recall[j - 1]) * (precision[j] + precision[j - 1]) / 2
    return area, recall, precision


def roc_area_literal(feature, labels):
    """Step-by-step ROC sweep with the below-0.5 reflection; returns (area, tpr, fpr)."""
    values = [float(v) for v in feature]
    y = [int(v) for v in labels]
    n = len(values)
    assert n == len(y) > 0
    uniq = sorted(set(values))
    total_pos = sum(1 for v in y if v == 1)
    total_neg = sum(1 for v in y if v == -1)
    assert total_pos > 0 and total_neg > 0
    tp = [0.0] * len(uniq)
    fp = [0.0] * len(uniq)
    area = 0.0
    for j, v in enumerate(uniq):
        indice = [i for i in range(n) if values[i] <= v]
        tp[j] = sum(1 for i in indice if y[i] == 1) / total_pos
        fp[j] = sum(1 for i in indice if y[i] == -1) / total_neg
        if j == 0:
            area = tp[j] * fp[j] / 2
        else:
            area = area + (fp[j] - fp[j - 1]) * (tp[j] + tp[j - 1]) / 2
    if area < 0.5:
        area = 1 - area
    return area, tp, fp


def random_feature_labels(rng, n_max=64, duplicates=True):
    """Random 1-feature dataset with at least one positive and one negative."""
    n = int(rng.integers(2, n_max + 1))
    if duplicates and rng.random() < 0.5:
        feature = rng.integers(0, max(2, n // 3), size=n).astype(float)
    else:
        feature = rng.normal(size=n)
    labels = rng.choice([-1, 1], size=n)
    # force both classes so both sweeps are defined
    labels[int(rng.integers(0, n))] = 1
    labels[int(rng.integers(0, n))] = -1
    if (labels == 1).all() or (labels == -1).all():
        labels[0] = 1
        labels[-1] = -1
    return feature, labels
