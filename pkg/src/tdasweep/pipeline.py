"""Deterministic batch feature extraction with optional process parallelism.

Parallelism is per image: each image's full multi-threshold extraction is
one task, results land in output slots keyed by input index, so the matrix
is identical for every worker count.  Wall time covers the extraction
phase only, not I/O.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

import numpy as np

from .core import FeatureLayout, GrayImage, SweepConfig, extract
from .io import Dataset, FeatureMatrix

__all__ = ["BatchReport", "batch_extract"]


@dataclass(frozen=True)
class BatchReport:
    n_images: int
    n_features: int
    wall_time: float
    workers_used: int


def _extract_values(pixels: np.ndarray, config: SweepConfig) -> np.ndarray:
    return extract(GrayImage(pixels), config).values


def batch_extract(dataset: Dataset, config: SweepConfig) -> tuple[FeatureMatrix, BatchReport]:
    """Extract features for every image; row i always equals extract(image i)."""
    n = len(dataset)
    if n == 0:
        raise ValueError("dataset is empty")
    layout = FeatureLayout(
        rows=dataset.rows,
        cols=dataset.cols,
        channels=dataset.channels,
        thresholds=config.thresholds,
        interval_width=config.interval_width,
    )
    workers = min(config.workers or 1, n)
    task = partial(_extract_values, config=config)

    start = time.perf_counter()
    if workers == 1:
        rows = [task(dataset.pixels[i]) for i in range(n)]
    else:
        chunksize = max(1, -(-n // (workers * 4)))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(task, (dataset.pixels[i] for i in range(n)), chunksize=chunksize))
    wall = time.perf_counter() - start

    labels = None if dataset.labels is None else dataset.labels.copy()
    matrix = FeatureMatrix(values=np.stack(rows), labels=labels, layout=layout)
    report = BatchReport(
        n_images=n,
        n_features=layout.n_features,
        wall_time=wall,
        workers_used=workers,
    )
    return matrix, report
