"""Array-in, array-out bindings for the tdasweep feature extractor.

These functions accept caller-supplied in-memory arrays in any memory
layout, hand them to the core library, and return plain integer arrays,
so the extractor slots directly into array-based ML workflows.  They
perform no computation of their own: configuration validation happens on
the core side and core exceptions propagate with their message text
unchanged.  All calls are pure and reentrant.
"""

from __future__ import annotations

from dataclasses import replace

import numpy as np

import tdasweep
from tdasweep import Dataset, GrayImage, SweepConfig
from tdasweep import batch_extract as _core_batch_extract
from tdasweep import extract as _core_extract

__all__ = ["BoundConfig", "make_config", "extract", "batch_extract", "__version__"]

__version__ = tdasweep.__version__

# the binding-level config is the core config, field for field
BoundConfig = SweepConfig


def make_config(thresholds, interval_width: int = 1, workers=None) -> BoundConfig:
    """Build a validated configuration; invalid values raise the core's errors."""
    return SweepConfig(
        thresholds=tuple(thresholds),
        interval_width=interval_width,
        workers=workers,
    )


def extract(pixels, config: BoundConfig) -> np.ndarray:
    """Feature vector for one (rows, cols, channels) intensity array."""
    return _core_extract(GrayImage(pixels), config).values


def batch_extract(pixels, config: BoundConfig, workers=None) -> np.ndarray:
    """Feature matrix for an (n, rows, cols, channels) batch, one row per image.

    ``workers`` overrides the worker count in ``config`` when given; the
    values never depend on it.
    """
    if workers is not None:
        config = replace(config, workers=workers)
    matrix, _ = _core_batch_extract(Dataset(pixels), config)
    return matrix.values
