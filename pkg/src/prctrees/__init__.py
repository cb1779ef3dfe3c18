"""Precision-recall-curve driven classification trees and random forests.

Binary classifiers for imbalanced data: node features are chosen by the
area under a per-feature precision-recall sweep (or a calibrated blend of
that area with the ROC area), and node thresholds by harmonic-mean scores
that weight the minority class.
"""

from .curves import PrcCurve, RocCurve, auc, auprc, prc_baseline
from .data import (
    Dataset,
    SCENARIO_NUMBERS,
    ScenarioSpec,
    generate_scenario,
    load_csv,
    scenario_preset,
    train_test_split,
    write_csv,
)
from .errors import ConfigError, InputError
from .forest import (
    Forest,
    ForestConfig,
    bootstrap_sample,
    build_forest,
    calibrate_weight,
    forest_from_dict,
    forest_to_dict,
    hybrid_weight_from_oob,
    oob_error,
    predict_forest,
    predict_forest_batch,
)
from .metrics import (
    ConfusionCounts,
    MetricsReport,
    RateSet,
    confusion_counts,
    f1,
    f3,
    metrics_report,
    rates,
    render_metrics_table,
)
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
from .tree import (
    CRITERIA,
    TreeConfig,
    TreeNode,
    build_tree,
    node_from_dict,
    node_score,
    node_to_dict,
    predict_tree,
    predict_tree_batch,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "ConfigError",
    "InputError",
    "ConfusionCounts",
    "RateSet",
    "MetricsReport",
    "confusion_counts",
    "rates",
    "f1",
    "f3",
    "metrics_report",
    "render_metrics_table",
    "PrcCurve",
    "RocCurve",
    "prc_baseline",
    "auprc",
    "auc",
    "SplitSpec",
    "apply_split",
    "select_feature_auprc",
    "select_feature_auc",
    "select_feature_weighted",
    "select_threshold_f1",
    "select_threshold_f3",
    "select_threshold_hmean",
    "select_split_gini",
    "CRITERIA",
    "TreeConfig",
    "TreeNode",
    "node_score",
    "build_tree",
    "predict_tree",
    "predict_tree_batch",
    "node_to_dict",
    "node_from_dict",
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
    "Dataset",
    "ScenarioSpec",
    "SCENARIO_NUMBERS",
    "scenario_preset",
    "generate_scenario",
    "load_csv",
    "write_csv",
    "train_test_split",
]
