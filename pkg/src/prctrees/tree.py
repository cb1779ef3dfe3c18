"""Recursive induction of the curve-driven classification trees, plus prediction.

Four split criteria share one growth procedure and differ only in how a
node picks its feature and threshold:

  prc      feature by precision-recall area, threshold by F1
  prc_roc  feature by the calibrated weighted area, threshold by F3
  roc      feature by ROC area, threshold by the sensitivity/specificity
           harmonic mean
  gini     impurity-minimizing axis split (comparison baseline)

A node becomes a leaf when it is pure, its depth budget is exhausted, it is
smaller than twice the minimum leaf size, no candidate scores above zero,
the chosen threshold is the node's maximum feature value (empty right
child), or either child would fall below the minimum leaf size.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import rng as rngmod
from .errors import ConfigError, InputError
from .split import (
    SplitSpec,
    apply_split,
    select_feature_auc,
    select_feature_auprc,
    select_feature_weighted,
    select_split_gini,
    select_threshold_f1,
    select_threshold_f3,
    select_threshold_hmean,
)

__all__ = [
    "CRITERIA",
    "TreeConfig",
    "TreeNode",
    "node_score",
    "build_tree",
    "predict_tree",
    "predict_tree_batch",
    "node_to_dict",
    "node_from_dict",
]

CRITERIA = ("prc", "prc_roc", "roc", "gini")


@dataclass(frozen=True)
class TreeConfig:
    max_depth: int = 10
    min_leaf_size: int = 5
    n_features_per_split: int | None = None  # None: all features (sqrt(p) in forests)
    criterion: str = "prc"
    hybrid_weight: float | None = None
    rng_seed: int = 0

    def __post_init__(self):
        if self.max_depth < 1:
            raise ConfigError("max_depth must be >= 1")
        if self.min_leaf_size < 1:
            raise ConfigError("min_leaf_size must be >= 1")
        if self.n_features_per_split is not None and self.n_features_per_split < 1:
            raise ConfigError("n_features_per_split must be >= 1")
        if self.criterion not in CRITERIA:
            raise ConfigError(
                f"criterion must be one of {CRITERIA}, got {self.criterion!r}"
            )
        if self.criterion == "prc_roc":
            if self.hybrid_weight is None or not 0.0 <= self.hybrid_weight <= 1.0:
                raise ConfigError("prc_roc requires hybrid_weight in [0, 1]")
        elif self.hybrid_weight is not None:
            raise ConfigError("hybrid_weight only applies to the prc_roc criterion")


@dataclass
class TreeNode:
    """A leaf, or an internal node with a split and two children."""

    node_score: dict[int, float]
    node_label: int
    split: SplitSpec | None = None
    left: "TreeNode | None" = field(default=None, repr=False)
    right: "TreeNode | None" = field(default=None, repr=False)

    @property
    def is_leaf(self) -> bool:
        return self.split is None


def node_score(labels) -> dict[int, float]:
    """Per-class sample fractions at a node."""
    y = np.asarray(labels)
    if y.size == 0:
        raise ValueError("node_score of an empty node")
    n_pos = int(np.count_nonzero(y == 1))
    return {1: n_pos / y.size, -1: (y.size - n_pos) / y.size}


def _select_split(X, y, subset, config: TreeConfig) -> SplitSpec | None:
    if config.criterion == "prc":
        picked = select_feature_auprc(X, y, subset)
        if picked is None:
            return None
        f, curve = picked
        threshold = select_threshold_f1(curve)
        if threshold is None:
            return None
        return SplitSpec(f, threshold, curve.area, "prc")
    if config.criterion == "prc_roc":
        picked = select_feature_weighted(X, y, subset, config.hybrid_weight)
        if picked is None:
            return None
        f, score, prc_curve, roc_curve = picked
        threshold = select_threshold_f3(prc_curve, roc_curve)
        if threshold is None:
            return None
        return SplitSpec(f, threshold, score, "prc_roc")
    if config.criterion == "roc":
        picked = select_feature_auc(X, y, subset)
        if picked is None:
            return None
        f, curve = picked
        threshold = select_threshold_hmean(curve)
        if threshold is None:
            return None
        return SplitSpec(f, threshold, curve.area, "roc")
    picked = select_split_gini(X, y, subset)
    if picked is None:
        return None
    f, threshold, decrease = picked
    return SplitSpec(f, threshold, decrease, "gini")


def _grow(X, y, config: TreeConfig, n_features: int, depth_budget: int, rng) -> TreeNode:
    n = y.size
    n_pos = int(np.count_nonzero(y == 1))
    score = {1: n_pos / n, -1: (n - n_pos) / n}
    label = 1 if 2 * n_pos >= n else -1  # exact tie goes to the minority class
    leaf = TreeNode(score, label)
    if n_pos == 0 or n_pos == n:  # pure node; also keeps the sweeps defined
        return leaf
    if depth_budget <= 1 or n < 2 * config.min_leaf_size:
        return leaf
    subset = rng.choice(X.shape[1], size=n_features, replace=False)
    split = _select_split(X, y, subset, config)
    if split is None:
        return leaf
    left_idx, right_idx = apply_split(X, split.feature_index, split.threshold)
    if right_idx.size == 0:  # threshold sat at the node's maximum value
        return leaf
    if min(left_idx.size, right_idx.size) < config.min_leaf_size:
        return leaf
    left = _grow(X[left_idx], y[left_idx], config, n_features, depth_budget - 1, rng)
    right = _grow(X[right_idx], y[right_idx], config, n_features, depth_budget - 1, rng)
    return TreeNode(score, label, split=split, left=left, right=right)


def build_tree(data, config: TreeConfig, rng: np.random.Generator | None = None) -> TreeNode:
    """Grow one tree on a Dataset.

    The generator, when given, replaces the config seed's stream; forests use
    this to hand each tree its own derived stream.
    """
    if data.n < 1:
        raise InputError("cannot build a tree on an empty dataset")
    n_features = config.n_features_per_split or data.p
    if n_features > data.p:
        raise ConfigError(
            f"n_features_per_split={n_features} exceeds the {data.p} available features"
        )
    if rng is None:
        rng = rngmod.generator(config.rng_seed)
    return _grow(
        np.asarray(data.features), np.asarray(data.labels), config, n_features,
        config.max_depth, rng,
    )


def _route(tree: TreeNode, x: np.ndarray) -> TreeNode:
    node = tree
    while not node.is_leaf:
        if x[node.split.feature_index] <= node.split.threshold:
            node = node.left
        else:
            node = node.right
    return node


def predict_tree(tree: TreeNode, x) -> tuple[int, dict[int, float]]:
    """Route one feature vector to its unique leaf; return (label, class fractions)."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise InputError("predict_tree expects a single 1-d feature vector")
    try:
        leaf = _route(tree, x)
    except IndexError:
        raise InputError(
            f"feature vector of length {x.size} is shorter than the tree requires"
        ) from None
    return leaf.node_label, leaf.node_score


def predict_tree_batch(tree: TreeNode, X) -> np.ndarray:
    """Predict labels for every row of X."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise InputError("predict_tree_batch expects a 2-d feature matrix")
    out = np.empty(X.shape[0], dtype=np.int64)

    def fill(node: TreeNode, idx: np.ndarray) -> None:
        if node.is_leaf:
            out[idx] = node.node_label
            return
        mask = X[idx, node.split.feature_index] <= node.split.threshold
        fill(node.left, idx[mask])
        fill(node.right, idx[~mask])

    try:
        fill(tree, np.arange(X.shape[0]))
    except IndexError:
        raise InputError(
            f"feature matrix with {X.shape[1]} columns is narrower than the tree requires"
        ) from None
    return out


def node_to_dict(node: TreeNode) -> dict:
    """Self-describing nested structure; thresholds survive a JSON round trip exactly."""
    base = {
        "node_score": {"-1": node.node_score[-1], "+1": node.node_score[1]},
        "node_label": node.node_label,
    }
    if node.is_leaf:
        return {"kind": "leaf", **base}
    return {
        "kind": "split",
        **base,
        "feature_index": node.split.feature_index,
        "threshold": node.split.threshold,
        "criterion": node.split.criterion,
        "criterion_score": node.split.criterion_score,
        "left": node_to_dict(node.left),
        "right": node_to_dict(node.right),
    }


def node_from_dict(payload: dict) -> TreeNode:
    kind = payload.get("kind")
    if kind not in ("leaf", "split"):
        raise InputError(f"unknown tree node kind: {kind!r}")
    score = {-1: float(payload["node_score"]["-1"]), 1: float(payload["node_score"]["+1"])}
    label = int(payload["node_label"])
    if kind == "leaf":
        return TreeNode(score, label)
    split = SplitSpec(
        feature_index=int(payload["feature_index"]),
        threshold=float(payload["threshold"]),
        criterion_score=float(payload["criterion_score"]),
        criterion=str(payload["criterion"]),
    )
    return TreeNode(
        score,
        label,
        split=split,
        left=node_from_dict(payload["left"]),
        right=node_from_dict(payload["right"]),
    )
