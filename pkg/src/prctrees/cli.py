"""Command-line interface: train, evaluate, benchmark, and curve dumps.

Every command is deterministic given --seed. The master seed is split into
fixed-purpose sub-seeds (scenario generation, train/test split, model
training), so `evaluate` can rebuild exactly the split a model was trained
with from the seed recorded in its file.

Machine-readable output is JSON Lines: one object per record with a stable
key set (see README).
"""

from __future__ import annotations

import argparse
import json
import secrets
import statistics
import sys
import time
from dataclasses import dataclass, replace

import numpy as np

from .curves import auc, auprc
from .data import (
    Dataset,
    SCENARIO_NUMBERS,
    generate_scenario,
    load_csv,
    scenario_preset,
    train_test_split,
)
from .errors import ConfigError, InputError
from .forest import (
    Forest,
    ForestConfig,
    build_forest,
    calibrate_weight,
    forest_from_dict,
    forest_to_dict,
    oob_error,
    predict_forest_batch,
)
from .metrics import MetricsReport, metrics_report, render_metrics_table
from .rng import derive_seed
from .tree import TreeConfig, TreeNode, build_tree, node_from_dict, node_to_dict, predict_tree_batch

__all__ = ["main", "MODEL_KINDS", "BenchmarkCell", "run_scenario_cell"]

MODEL_FORMAT = "prctrees.model"
MODEL_VERSION = 1

# (family, criterion) per CLI model name; listing order fixes report order
MODEL_KINDS = {
    "gini-tree": ("tree", "gini"),
    "roc-tree": ("tree", "roc"),
    "prc-tree": ("tree", "prc"),
    "prc-roc-tree": ("tree", "prc_roc"),
    "gini-rf": ("forest", "gini"),
    "roc-rf": ("forest", "roc"),
    "prc-rf": ("forest", "prc"),
    "prc-roc-rf": ("forest", "prc_roc"),
}

_SEED_DATA = 0
_SEED_SPLIT = 1
_SEED_MODEL = 2


@dataclass
class BenchmarkCell:
    """Median results of one (scenario, algorithm) cell over its seeds."""

    scenario: int
    algorithm: str
    seeds: list[int]
    report: MetricsReport | None
    oob_error: float | None
    train_seconds: float | None
    error: str | None = None


# ---------------------------------------------------------------------------
# model files


def save_model(path: str, payload: dict) -> None:
    text = json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)


def load_model(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as handle:
            payload = json.load(handle)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not a valid model file ({exc})") from None
    if payload.get("format") != MODEL_FORMAT:
        raise InputError(f"{path}: not a {MODEL_FORMAT} file")
    if payload.get("version") != MODEL_VERSION:
        raise InputError(f"{path}: unsupported model version {payload.get('version')!r}")
    return payload


# ---------------------------------------------------------------------------
# shared plumbing


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    seed = secrets.randbits(63)
    print(f"seed: {seed}")
    return seed


def _source_spec_or_none(args) -> dict | None:
    if args.scenario is None and args.csv is None:
        return None
    if args.scenario is not None:
        if args.csv is not None:
            raise InputError("give either --scenario or --csv, not both")
        return {"scenario": args.scenario, "n_samples": args.scenario_size}
    if args.label is None or args.positive is None:
        raise InputError("--csv requires --label and --positive")
    return {"csv": args.csv, "label": args.label, "positive": args.positive}


def _source_spec(args) -> dict:
    source = _source_spec_or_none(args)
    if source is None:
        raise InputError("no dataset source given (--scenario N or --csv PATH)")
    return source


def _load_source(source: dict, seed: int) -> Dataset:
    if "scenario" in source:
        spec = scenario_preset(
            source["scenario"],
            n_samples=source.get("n_samples", 5000),
            rng_seed=derive_seed(seed, _SEED_DATA),
        )
        return generate_scenario(spec)
    return load_csv(source["csv"], source["label"], source["positive"])


def _tree_config(args, criterion: str, seed: int, hybrid_weight: float | None = None) -> TreeConfig:
    return TreeConfig(
        max_depth=args.max_depth,
        min_leaf_size=args.min_leaf,
        n_features_per_split=args.mtry,
        criterion=criterion,
        hybrid_weight=hybrid_weight,
        rng_seed=derive_seed(seed, _SEED_MODEL),
    )


def _train_model(
    train_data: Dataset, kind: str, criterion: str, args, seed: int
) -> tuple[TreeNode | Forest, float | None, float | None]:
    """Returns (model, hybrid_weight, oob_error)."""
    hybrid = None
    if criterion == "prc_roc":
        calibration = ForestConfig(
            n_trees=args.trees,
            tree_config=_tree_config(args, "prc", seed),
            rng_seed=derive_seed(seed, _SEED_MODEL),
        )
        hybrid = calibrate_weight(train_data, calibration)
    config = _tree_config(args, criterion, seed, hybrid_weight=hybrid)
    if kind == "tree":
        return build_tree(train_data, config), hybrid, None
    forest_config = ForestConfig(
        n_trees=args.trees, tree_config=config, rng_seed=derive_seed(seed, _SEED_MODEL)
    )
    forest = build_forest(train_data, forest_config)
    return forest, hybrid, oob_error(forest, train_data)


def _predict(payload: dict, X: np.ndarray) -> np.ndarray:
    if payload["kind"] == "tree":
        return predict_tree_batch(node_from_dict(payload["tree"]), X)
    return predict_forest_batch(forest_from_dict(payload["forest"]), X)


def _emit_record(record: dict, json_out: str | None) -> None:
    line = json.dumps(record, sort_keys=True)
    if json_out:
        with open(json_out, "a", encoding="utf-8") as handle:
            handle.write(line + "\n")
    else:
        print(line)


def _report_json(report: MetricsReport) -> dict:
    return {
        "recall": report.recall,
        "specificity": report.specificity,
        "precision": report.precision,
        "accuracy": report.accuracy,
        "f1": report.f1,
    }


# ---------------------------------------------------------------------------
# train


def cmd_train(args) -> int:
    kind, criterion = MODEL_KINDS[args.model]
    seed = _resolve_seed(args)
    source = _source_spec(args)
    data = _load_source(source, seed)
    if args.split_fraction is not None:
        train_data, _ = train_test_split(
            data, args.split_fraction, stratified=True, rng=derive_seed(seed, _SEED_SPLIT)
        )
    else:
        train_data = data

    started = time.perf_counter()
    model, hybrid, oob = _train_model(train_data, kind, criterion, args, seed)
    elapsed = time.perf_counter() - started

    print(f"model: {args.model}  n={train_data.n}  p={train_data.p}  "
          f"train_seconds={elapsed:.3f}")
    if hybrid is not None:
        print(f"hybrid_weight: {hybrid:.6f}")
    if oob is not None:
        print(f"oob_error: {oob:.6f}")

    if args.out:
        payload = {
            "format": MODEL_FORMAT,
            "version": MODEL_VERSION,
            "kind": kind,
            "model": args.model,
            "criterion": criterion,
            "hybrid_weight": hybrid,
            "n_features": train_data.p,
            "feature_names": train_data.feature_names,
            "seed": seed,
            "source": source,
            "split_fraction": args.split_fraction,
        }
        if kind == "tree":
            payload["tree"] = node_to_dict(model)
        else:
            payload["forest"] = forest_to_dict(model)
            payload["oob_error"] = oob
        save_model(args.out, payload)
        print(f"saved: {args.out}")
    return 0


# ---------------------------------------------------------------------------
# evaluate


def cmd_evaluate(args) -> int:
    payload = load_model(args.model_file)
    seed = args.seed if args.seed is not None else payload["seed"]
    source = _source_spec_or_none(args)
    if source is None:
        source = payload["source"]
    data = _load_source(source, seed)
    if data.p != payload["n_features"]:
        raise InputError(
            f"dataset has {data.p} features, model was trained on {payload['n_features']}"
        )
    split_fraction = (
        args.split_fraction if args.split_fraction is not None
        else payload.get("split_fraction")
    )
    if split_fraction is not None:
        _, part = train_test_split(
            data, split_fraction, stratified=True, rng=derive_seed(seed, _SEED_SPLIT)
        )
        part_name = "test"
    else:
        part, part_name = data, "all"

    predictions = _predict(payload, part.features)
    report = metrics_report(predictions, part.labels)
    print(render_metrics_table([(payload["model"], report)]))
    _emit_record(
        {
            "record": "evaluation",
            "model_file": args.model_file,
            "algorithm": payload["model"],
            "source": source,
            "part": part_name,
            "split_fraction": split_fraction,
            "n_samples": part.n,
            "seed": seed,
            "metrics": _report_json(report),
        },
        args.json_out,
    )
    return 0


# ---------------------------------------------------------------------------
# benchmark


def run_scenario_cell(
    scenario: int,
    algorithm: str,
    seed: int,
    n_trees: int = 100,
    split_fraction: float = 0.7,
    scenario_size: int = 5000,
    max_depth: int = 10,
    min_leaf: int = 5,
    mtry: int | None = None,
) -> dict:
    """One benchmark run: generate, split, train, evaluate on the held-out part."""
    kind, criterion = MODEL_KINDS[algorithm]
    data = generate_scenario(
        scenario_preset(scenario, n_samples=scenario_size,
                        rng_seed=derive_seed(seed, _SEED_DATA))
    )
    train_data, test_data = train_test_split(
        data, split_fraction, stratified=True, rng=derive_seed(seed, _SEED_SPLIT)
    )
    args = argparse.Namespace(trees=n_trees, max_depth=max_depth, min_leaf=min_leaf, mtry=mtry)
    started = time.perf_counter()
    model, hybrid, oob = _train_model(train_data, kind, criterion, args, seed)
    train_seconds = time.perf_counter() - started
    if kind == "tree":
        predictions = predict_tree_batch(model, test_data.features)
    else:
        predictions = predict_forest_batch(model, test_data.features)
    return {
        "report": metrics_report(predictions, test_data.labels),
        "oob_error": oob,
        "hybrid_weight": hybrid,
        "train_seconds": train_seconds,
    }


def _median(values: list[float | None]) -> float | None:
    defined = [v for v in values if v is not None]
    return statistics.median(defined) if defined else None


def _aggregate_cell(scenario: int, algorithm: str, seeds: list[int], runs: list[dict]) -> BenchmarkCell:
    reports = [r["report"] for r in runs]
    median_report = MetricsReport(
        recall=_median([r.recall for r in reports]),
        specificity=_median([r.specificity for r in reports]),
        precision=_median([r.precision for r in reports]),
        accuracy=_median([r.accuracy for r in reports]),
        f1=_median([r.f1 for r in reports]),
    )
    return BenchmarkCell(
        scenario=scenario,
        algorithm=algorithm,
        seeds=seeds,
        report=median_report,
        oob_error=_median([r["oob_error"] for r in runs]),
        train_seconds=_median([r["train_seconds"] for r in runs]),
    )


def cmd_benchmark(args) -> int:
    scenarios = _parse_int_list(args.scenarios, "scenarios")
    if args.algorithms.strip() == "all":
        algorithms = list(MODEL_KINDS)
    else:
        algorithms = [a.strip() for a in args.algorithms.split(",") if a.strip()]
    if not scenarios or not algorithms:
        raise InputError("benchmark needs at least one scenario and one algorithm")
    for algorithm in algorithms:
        if algorithm not in MODEL_KINDS:
            raise InputError(f"unknown algorithm {algorithm!r}; choose from {list(MODEL_KINDS)}")
    if args.repetitions < 1:
        raise InputError("--repetitions must be >= 1")
    base_seed = _resolve_seed(args)
    seeds = [base_seed + i for i in range(args.repetitions)]

    cells: list[BenchmarkCell] = []
    for scenario in scenarios:
        for algorithm in algorithms:
            try:
                runs = [
                    run_scenario_cell(
                        scenario, algorithm, seed,
                        n_trees=args.trees,
                        split_fraction=args.split_fraction,
                        scenario_size=args.scenario_size,
                        max_depth=args.max_depth,
                        min_leaf=args.min_leaf,
                        mtry=args.mtry,
                    )
                    for seed in seeds
                ]
                cells.append(_aggregate_cell(scenario, algorithm, seeds, runs))
            except Exception as exc:  # keep the rest of the matrix running
                cells.append(BenchmarkCell(scenario, algorithm, seeds, None, None, None,
                                           error=f"{type(exc).__name__}: {exc}"))

    failed = False
    for scenario in scenarios:
        spec = scenario_preset(scenario, n_samples=args.scenario_size)
        print(f"\nscenario {scenario}: {spec}")
        scenario_cells = [c for c in cells if c.scenario == scenario]
        for family in ("tree", "forest"):
            rows = [c for c in scenario_cells if MODEL_KINDS[c.algorithm][0] == family]
            ok = [(c.algorithm, c.report) for c in rows if c.error is None]
            if ok:
                print(render_metrics_table(ok))
            for cell in rows:
                if cell.error is not None:
                    failed = True
                    print(f"{cell.algorithm}: ERROR {cell.error}")
            if rows:
                print()
    for cell in cells:
        _emit_record(
            {
                "record": "benchmark_cell",
                "scenario": cell.scenario,
                "algorithm": cell.algorithm,
                "seeds": cell.seeds,
                "n_trees": args.trees,
                "split_fraction": args.split_fraction,
                "status": "error" if cell.error else "ok",
                "error": cell.error,
                "metrics_median": _report_json(cell.report) if cell.report else None,
                "oob_error_median": cell.oob_error,
                "train_seconds_median": cell.train_seconds,
            },
            args.json_out,
        )
    return 1 if failed else 0


def _parse_int_list(text: str, what: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise InputError(f"--{what} must be a comma-separated list of integers") from None


# ---------------------------------------------------------------------------
# curve


def cmd_curve(args) -> int:
    seed = _resolve_seed(args)
    data = _load_source(_source_spec(args), seed)
    if not 0 <= args.feature < data.p:
        raise InputError(f"feature index {args.feature} out of range for p={data.p}")
    column = data.features[:, args.feature]
    if args.mode == "prc":
        series = auprc(column, data.labels)
        header = "threshold,recall,precision"
        rows = zip(series.thresholds, series.recall, series.precision)
        meta = f"# kind=prc baseline={series.baseline!r} area={series.area!r}"
    else:
        series = auc(column, data.labels)
        header = "threshold,tpr,fpr"
        rows = zip(series.thresholds, series.tpr, series.fpr)
        meta = f"# kind=roc baseline={series.baseline!r} area={series.area!r}"
    lines = [meta, header]
    lines += [f"{float(t)!r},{float(a)!r},{float(b)!r}" for t, a, b in rows]
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
        print(f"wrote {len(lines) - 2} points to {args.out}")
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# parser


def _add_source_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--scenario", type=int, default=None,
                        help=f"synthetic scenario preset {list(SCENARIO_NUMBERS)}")
    parser.add_argument("--scenario-size", type=int, default=5000,
                        help="rows to generate for --scenario (default 5000)")
    parser.add_argument("--csv", default=None, help="CSV dataset path")
    parser.add_argument("--label", default=None, help="label column name for --csv")
    parser.add_argument("--positive", default=None,
                        help="label value mapped to the +1 class for --csv")


def _add_model_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--trees", type=int, default=100,
                        help="number of trees for forest models (default 100)")
    parser.add_argument("--mtry", type=int, default=None,
                        help="features sampled per split (default: all for trees, sqrt(p) for forests)")
    parser.add_argument("--max-depth", type=int, default=10, help="maximum tree depth")
    parser.add_argument("--min-leaf", type=int, default=5, help="minimum leaf size")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prctrees",
        description="Precision-recall-curve driven trees and forests for imbalanced data",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    train = sub.add_parser("train", help="train a model and optionally save it")
    _add_source_arguments(train)
    _add_model_arguments(train)
    train.add_argument("--model", required=True, choices=list(MODEL_KINDS))
    train.add_argument("--split-fraction", type=float, default=None,
                       help="train on this stratified fraction instead of all rows")
    train.add_argument("--seed", type=int, default=None)
    train.add_argument("--out", default=None, help="model file path")
    train.set_defaults(func=cmd_train)

    evaluate = sub.add_parser("evaluate", help="evaluate a saved model on a dataset")
    evaluate.add_argument("model_file")
    _add_source_arguments(evaluate)
    evaluate.add_argument("--split-fraction", type=float, default=None,
                          help="evaluate on the held-out part of this split "
                               "(default: the model's recorded split)")
    evaluate.add_argument("--seed", type=int, default=None,
                          help="override the model's recorded seed")
    evaluate.add_argument("--json-out", default=None, help="append the JSON record here")
    evaluate.set_defaults(func=cmd_evaluate)

    benchmark = sub.add_parser("benchmark", help="scenario x algorithm result matrix")
    benchmark.add_argument("--scenarios", required=True,
                           help="comma-separated scenario numbers, e.g. 1,3")
    benchmark.add_argument("--algorithms", required=True,
                           help="comma-separated model names, or 'all'")
    benchmark.add_argument("--repetitions", type=int, default=5,
                           help="seeds per cell; medians are reported (default 5)")
    benchmark.add_argument("--scenario-size", type=int, default=5000)
    benchmark.add_argument("--split-fraction", type=float, default=0.7)
    _add_model_arguments(benchmark)
    benchmark.add_argument("--seed", type=int, default=None, help="base seed")
    benchmark.add_argument("--json-out", default=None, help="append JSON records here")
    benchmark.set_defaults(func=cmd_benchmark)

    curve = sub.add_parser("curve", help="dump one feature's curve series as CSV")
    _add_source_arguments(curve)
    curve.add_argument("--feature", type=int, required=True, help="feature column index")
    curve.add_argument("--mode", choices=("prc", "roc"), default="prc")
    curve.add_argument("--seed", type=int, default=None)
    curve.add_argument("--out", default=None, help="output path (default: stdout)")
    curve.set_defaults(func=cmd_curve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ConfigError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
