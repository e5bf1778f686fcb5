"""Command-line interface: extract, bench, knn, check-invariants.

Each command prints a single machine-parseable summary line of key=value
tokens on success and exits nonzero with a message on stderr on error.
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from . import knn
from .core import SweepConfig
from .io import Dataset, load_csv, load_idx, write_features
from .pipeline import batch_extract
from .testing import run_flip_checks


def _parse_thresholds(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"thresholds must be integers, got {text!r}")


def _add_sweep_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--thresholds", type=_parse_thresholds, default=(100,),
                   help="comma-separated increasing cutoffs in [1,255] (default: 100)")
    p.add_argument("--interval-width", type=int, default=1,
                   help="coalescing factor w >= 1 (default: 1)")
    p.add_argument("--workers", "--cls", dest="workers", type=int, default=None,
                   help="worker process count (default: sequential)")


def _add_geometry_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rows", type=int, default=28, help="image rows for csv input")
    p.add_argument("--cols", type=int, default=28, help="image cols for csv input")
    p.add_argument("--channels", type=int, default=1, help="image channels for csv input")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tdasweep",
        description="Threshold run-count image features: extraction, benchmarking, kNN checks.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("extract", help="extract a feature CSV from an image dataset")
    p.add_argument("--format", choices=("idx", "csv"), required=True)
    p.add_argument("--images", required=True, help="image file (IDX or pixel CSV)")
    p.add_argument("--labels", help="IDX label file (optional)")
    p.add_argument("--labeled", action="store_true", help="csv lines start with a label field")
    _add_geometry_args(p)
    _add_sweep_args(p)
    p.add_argument("--output", required=True, help="feature CSV to write")

    p = sub.add_parser("bench", help="time sequential vs parallel extraction on one dataset")
    p.add_argument("--format", choices=("idx", "csv"), required=True)
    p.add_argument("--images", required=True)
    p.add_argument("--labels", help="IDX label file (optional)")
    p.add_argument("--labeled", action="store_true")
    _add_geometry_args(p)
    _add_sweep_args(p)

    p = sub.add_parser("knn", help="compare kNN accuracy on raw pixels vs sweep features")
    p.add_argument("--format", choices=("idx", "csv"), required=True)
    p.add_argument("--train", required=True, help="training images (IDX or labeled pixel CSV)")
    p.add_argument("--train-labels", help="IDX label file for the training set")
    p.add_argument("--test", required=True, help="test images (IDX or labeled pixel CSV)")
    p.add_argument("--test-labels", help="IDX label file for the test set")
    _add_geometry_args(p)
    _add_sweep_args(p)
    p.add_argument("--k", type=int, default=5, help="neighbor count (default: 5)")
    p.add_argument("--train-size", type=int, help="subsample the training set to this many images")
    p.add_argument("--test-size", type=int, help="subsample the test set to this many images")
    p.add_argument("--seed", type=int, default=0, help="seed for subset sampling")

    p = sub.add_parser("check-invariants", help="verify flip invariances of the sweep counts")
    p.add_argument("--format", choices=("idx", "csv"), default=None)
    p.add_argument("--images", help="dataset to check; omit to generate random images")
    p.add_argument("--labeled", action="store_true")
    p.add_argument("--count", type=int, default=100, help="random image count (default: 100)")
    _add_geometry_args(p)
    _add_sweep_args(p)
    p.add_argument("--seed", type=int, default=0, help="seed for random image generation")

    return parser


def _config_from_args(parser: argparse.ArgumentParser, args) -> SweepConfig:
    try:
        return SweepConfig(
            thresholds=args.thresholds,
            interval_width=args.interval_width,
            workers=args.workers,
        )
    except ValueError as exc:
        parser.error(str(exc))


def _load_dataset(args, image_path, label_path=None, labeled=False) -> Dataset:
    if args.format == "idx":
        return load_idx(image_path, label_path)
    return load_csv(image_path, labeled, args.rows, args.cols, args.channels)


def _cmd_extract(parser, args) -> int:
    config = _config_from_args(parser, args)
    dataset = _load_dataset(args, args.images, args.labels, args.labeled)
    matrix, report = batch_extract(dataset, config)
    write_features(matrix, args.output)
    print(
        f"images={report.n_images} features={report.n_features}"
        f" wall_s={report.wall_time:.6f} workers={report.workers_used}"
    )
    return 0


def _cmd_bench(parser, args) -> int:
    config = _config_from_args(parser, args)
    dataset = _load_dataset(args, args.images, args.labels, args.labeled)
    sequential = SweepConfig(config.thresholds, config.interval_width, workers=None)
    matrix_single, report_single = batch_extract(dataset, sequential)
    if (config.workers or 1) > 1:
        matrix_multi, report_multi = batch_extract(dataset, config)
    else:
        matrix_multi, report_multi = matrix_single, report_single
    identical = bool(np.array_equal(matrix_single.values, matrix_multi.values))
    speedup = (
        1.0 if matrix_multi is matrix_single
        else report_single.wall_time / report_multi.wall_time
    )
    print(
        f"images={report_single.n_images} features={report_single.n_features}"
        f" wall_s_single={report_single.wall_time:.6f}"
        f" wall_s_parallel={report_multi.wall_time:.6f}"
        f" speedup={speedup:.3f} workers={report_multi.workers_used}"
        f" identical={'true' if identical else 'false'}"
    )
    return 0 if identical else 1


def _subsample(dataset: Dataset, size, rng) -> Dataset:
    if size is None or size >= len(dataset):
        return dataset
    return dataset.subset(rng.permutation(len(dataset))[:size])


def _cmd_knn(parser, args) -> int:
    config = _config_from_args(parser, args)
    labeled = args.format == "csv"
    train = _load_dataset(args, args.train, args.train_labels, labeled=labeled)
    test = _load_dataset(args, args.test, args.test_labels, labeled=labeled)
    if train.labels is None or test.labels is None:
        raise ValueError("knn requires labeled train and test datasets")
    if (train.rows, train.cols, train.channels) != (test.rows, test.cols, test.channels):
        raise ValueError(
            f"train geometry {(train.rows, train.cols, train.channels)} does not match"
            f" test geometry {(test.rows, test.cols, test.channels)}"
        )
    rng = np.random.default_rng(args.seed)
    train = _subsample(train, args.train_size, rng)
    test = _subsample(test, args.test_size, rng)

    raw_train = train.pixel_matrix()
    raw_test = test.pixel_matrix()
    sweep_train, train_report = batch_extract(train, config)
    sweep_test, test_report = batch_extract(test, config)
    extract_wall = train_report.wall_time + test_report.wall_time

    raw_model = knn.fit(raw_train, args.k)
    start = time.perf_counter()
    raw_accuracy = knn.evaluate(raw_model, raw_test)
    raw_eval_wall = time.perf_counter() - start

    sweep_model = knn.fit(sweep_train, args.k)
    start = time.perf_counter()
    sweep_accuracy = knn.evaluate(sweep_model, sweep_test)
    sweep_eval_wall = time.perf_counter() - start

    print(
        f"train={len(train)} test={len(test)} k={args.k}"
        f" raw_features={raw_train.n_cols} sweep_features={sweep_train.n_cols}"
        f" raw_accuracy={raw_accuracy:.4f} sweep_accuracy={sweep_accuracy:.4f}"
        f" sweep_extract_wall_s={extract_wall:.6f}"
        f" raw_eval_wall_s={raw_eval_wall:.6f} sweep_eval_wall_s={sweep_eval_wall:.6f}"
    )
    return 0


def _cmd_check_invariants(parser, args) -> int:
    config = _config_from_args(parser, args)
    if args.images is not None:
        if args.format is None:
            parser.error("--format is required when --images is given")
        dataset = _load_dataset(args, args.images, labeled=args.labeled)
    else:
        rng = np.random.default_rng(args.seed)
        pixels = rng.integers(
            0, 256, size=(args.count, args.rows, args.cols, args.channels), dtype=np.uint8
        )
        dataset = Dataset(pixels)
    results = run_flip_checks(dataset, config.thresholds)
    for res in results:
        if res.passed:
            print(f"{res.name}: PASS")
        else:
            print(f"{res.name}: FAIL (image {res.failing_image})")
    return 0 if all(r.passed for r in results) else 1


_COMMANDS = {
    "extract": _cmd_extract,
    "bench": _cmd_bench,
    "knn": _cmd_knn,
    "check-invariants": _cmd_check_invariants,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.subcommand](parser, args)
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
