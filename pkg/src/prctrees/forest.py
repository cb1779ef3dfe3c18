"""Bagged ensembles of the trees, out-of-bag error, and hybrid-weight calibration.

Tree j draws its bootstrap sample and all of its node-level feature subsets
from a stream derived from (forest seed, j), so any single tree can be
rebuilt bit-identically without building the others, and training order
(or parallelism) cannot change the result.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from . import rng as rngmod
from .data import Dataset
from .errors import ConfigError, InputError
from .tree import (
    TreeConfig,
    TreeNode,
    build_tree,
    node_from_dict,
    node_to_dict,
    predict_tree_batch,
)

__all__ = [
    "ForestConfig",
    "Forest",
    "bootstrap_sample",
    "build_forest",
    "predict_forest",
    "predict_forest_batch",
    "oob_error",
    "hybrid_weight_from_oob",
    "calibrate_weight",
    "forest_to_dict",
    "forest_from_dict",
]

# spawn-key tags keeping calibration forests off the final forest's streams
_CALIBRATION_PRC = 101
_CALIBRATION_ROC = 102


@dataclass(frozen=True)
class ForestConfig:
    n_trees: int = 100
    tree_config: TreeConfig = field(default_factory=TreeConfig)
    rng_seed: int = 0

    def __post_init__(self):
        if self.n_trees < 1:
            raise ConfigError("n_trees must be >= 1")


@dataclass
class Forest:
    """Trained ensemble: trees, their out-of-bag index sets, and the resolved config."""

    trees: list[TreeNode]
    oob_indices: list[np.ndarray]
    config: ForestConfig
    n_features: int

    @property
    def criterion(self) -> str:
        return self.config.tree_config.criterion


def bootstrap_sample(n: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """n draws with replacement from range(n), plus the never-drawn (OOB) indices."""
    if n < 1:
        raise InputError("bootstrap sample size must be >= 1")
    sample = rng.integers(0, n, size=n)
    oob = np.setdiff1d(np.arange(n), sample)
    return sample, oob


def _tree_stream(seed: int, tree_index: int) -> np.random.Generator:
    return rngmod.generator(seed, tree_index)


def build_forest(data: Dataset, config: ForestConfig, criterion: str | None = None) -> Forest:
    """Train n_trees bootstrap trees; `criterion` overrides the tree config's.

    A bootstrap sample that happens to contain one class yields a single-leaf
    tree, which is a valid ensemble member.
    """
    if data.n < 1:
        raise InputError("cannot build a forest on an empty dataset")
    counts = np.unique(np.asarray(data.labels))
    if counts.size < 2:
        raise InputError("forest training requires both classes present")

    tree_config = config.tree_config
    if criterion is not None and criterion != tree_config.criterion:
        hybrid = tree_config.hybrid_weight if criterion == "prc_roc" else None
        tree_config = replace(tree_config, criterion=criterion, hybrid_weight=hybrid)
    n_features = tree_config.n_features_per_split
    if n_features is None:
        n_features = max(1, int(np.sqrt(data.p)))
    if n_features > data.p:
        raise ConfigError(
            f"n_features_per_split={n_features} exceeds the {data.p} available features"
        )
    tree_config = replace(tree_config, n_features_per_split=n_features)
    resolved = replace(config, tree_config=tree_config)

    trees: list[TreeNode] = []
    oob_sets: list[np.ndarray] = []
    for j in range(config.n_trees):
        stream = _tree_stream(config.rng_seed, j)
        sample, oob = bootstrap_sample(data.n, stream)
        boot = Dataset(
            features=data.features[sample],
            labels=data.labels[sample],
            feature_names=list(data.feature_names),
        )
        trees.append(build_tree(boot, tree_config, rng=stream))
        oob_sets.append(oob)
    return Forest(trees=trees, oob_indices=oob_sets, config=resolved, n_features=data.p)


def predict_forest(forest: Forest, x) -> tuple[int, dict[int, float]]:
    """Hard majority vote over the trees; exact ties go to +1."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise InputError("predict_forest expects a single 1-d feature vector")
    votes = predict_forest_batch(forest, x[np.newaxis, :], return_votes=True)[1][0]
    n_trees = len(forest.trees)
    pos = int(votes)
    fractions = {1: pos / n_trees, -1: (n_trees - pos) / n_trees}
    label = 1 if 2 * pos >= n_trees else -1
    return label, fractions


def predict_forest_batch(forest: Forest, X, return_votes: bool = False):
    """Majority-vote labels for every row of X (ties to +1)."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise InputError("predict_forest_batch expects a 2-d feature matrix")
    if X.shape[1] != forest.n_features:
        raise InputError(
            f"feature matrix has {X.shape[1]} columns, model was trained on "
            f"{forest.n_features}"
        )
    vote_sum = np.zeros(X.shape[0], dtype=np.int64)
    pos_votes = np.zeros(X.shape[0], dtype=np.int64)
    for tree in forest.trees:
        labels = predict_tree_batch(tree, X)
        vote_sum += labels
        pos_votes += labels == 1
    labels = np.where(vote_sum >= 0, 1, -1)
    if return_votes:
        return labels, pos_votes
    return labels


def oob_error(forest: Forest, data: Dataset) -> float:
    """Misclassification rate of out-of-bag majority votes.

    Samples that are in-bag for every tree receive no vote and are excluded
    from the denominator.
    """
    X = np.asarray(data.features, dtype=np.float64)
    y = np.asarray(data.labels)
    if X.shape[1] != forest.n_features:
        raise InputError("dataset does not match the forest's training features")
    vote_sum = np.zeros(data.n, dtype=np.int64)
    n_votes = np.zeros(data.n, dtype=np.int64)
    for tree, oob in zip(forest.trees, forest.oob_indices):
        if oob.size == 0:
            continue
        if int(oob.max()) >= data.n:
            raise InputError("forest out-of-bag indices exceed the dataset size")
        vote_sum[oob] += predict_tree_batch(tree, X[oob])
        n_votes[oob] += 1
    voted = n_votes > 0
    if not voted.any():
        raise InputError("no sample received an out-of-bag vote")
    predicted = np.where(vote_sum[voted] >= 0, 1, -1)
    return float(np.mean(predicted != y[voted]))


def hybrid_weight_from_oob(oob_error_prc: float, oob_error_roc: float) -> float:
    """Weight on the precision-recall area, from the two forests' OOB errors."""
    for name, value in (("oob_error_prc", oob_error_prc), ("oob_error_roc", oob_error_roc)):
        if not 0.0 <= value <= 1.0:
            raise InputError(f"{name} must lie in [0, 1], got {value!r}")
    denominator = (1 - oob_error_prc) + (1 - oob_error_roc)
    if denominator == 0.0:
        raise ValueError("both out-of-bag errors are 1; the hybrid weight is undefined")
    return (1 - oob_error_prc) / denominator


def calibrate_weight(data: Dataset, forest_config: ForestConfig) -> float:
    """Train one prc and one roc forest (derived seeds) and weigh their OOB accuracy."""
    prc_config = replace(
        forest_config, rng_seed=rngmod.derive_seed(forest_config.rng_seed, _CALIBRATION_PRC)
    )
    roc_config = replace(
        forest_config, rng_seed=rngmod.derive_seed(forest_config.rng_seed, _CALIBRATION_ROC)
    )
    prc_forest = build_forest(data, prc_config, criterion="prc")
    roc_forest = build_forest(data, roc_config, criterion="roc")
    return hybrid_weight_from_oob(oob_error(prc_forest, data), oob_error(roc_forest, data))


def forest_to_dict(forest: Forest) -> dict:
    cfg = forest.config
    tc = cfg.tree_config
    return {
        "config": {
            "n_trees": cfg.n_trees,
            "rng_seed": cfg.rng_seed,
            "tree": {
                "max_depth": tc.max_depth,
                "min_leaf_size": tc.min_leaf_size,
                "n_features_per_split": tc.n_features_per_split,
                "criterion": tc.criterion,
                "hybrid_weight": tc.hybrid_weight,
                "rng_seed": tc.rng_seed,
            },
        },
        "n_features": forest.n_features,
        "trees": [node_to_dict(t) for t in forest.trees],
        "oob_indices": [oob.tolist() for oob in forest.oob_indices],
    }


def forest_from_dict(payload: dict) -> Forest:
    cfg = payload["config"]
    tc = cfg["tree"]
    tree_config = TreeConfig(
        max_depth=int(tc["max_depth"]),
        min_leaf_size=int(tc["min_leaf_size"]),
        n_features_per_split=(
            None if tc["n_features_per_split"] is None else int(tc["n_features_per_split"])
        ),
        criterion=str(tc["criterion"]),
        hybrid_weight=(None if tc["hybrid_weight"] is None else float(tc["hybrid_weight"])),
        rng_seed=int(tc["rng_seed"]),
    )
    config = ForestConfig(
        n_trees=int(cfg["n_trees"]), tree_config=tree_config, rng_seed=int(cfg["rng_seed"])
    )
    trees = [node_from_dict(t) for t in payload["trees"]]
    oob = [np.asarray(ix, dtype=np.int64) for ix in payload["oob_indices"]]
    if len(trees) != config.n_trees or len(oob) != config.n_trees:
        raise InputError("forest payload is inconsistent with its configured tree count")
    return Forest(
        trees=trees, oob_indices=oob, config=config, n_features=int(payload["n_features"])
    )
