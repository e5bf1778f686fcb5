"""Threshold run-count image features: fast dimension reduction for image classifiers."""

from .core import (
    BinaryMask,
    DirectionalCounts,
    FeatureBlock,
    FeatureLayout,
    FeatureVector,
    GrayImage,
    SweepConfig,
    binarize,
    coalesce,
    count_runs,
    extract,
    feature_length,
    sweep,
)
from .estimator import KnnClassifier, SweepFeaturizer
from .io import (
    Dataset,
    FeatureMatrix,
    FormatError,
    TruncatedFileError,
    load_csv,
    load_idx,
    read_features,
    write_features,
)
from .pipeline import BatchReport, batch_extract

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "GrayImage",
    "BinaryMask",
    "SweepConfig",
    "DirectionalCounts",
    "FeatureBlock",
    "FeatureLayout",
    "FeatureVector",
    "binarize",
    "count_runs",
    "sweep",
    "coalesce",
    "extract",
    "feature_length",
    "Dataset",
    "FeatureMatrix",
    "FormatError",
    "TruncatedFileError",
    "load_idx",
    "load_csv",
    "write_features",
    "read_features",
    "BatchReport",
    "batch_extract",
    "SweepFeaturizer",
    "KnnClassifier",
]
