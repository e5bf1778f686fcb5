"""Scikit-learn compatible wrappers around the sweep extractor and kNN harness."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import knn
from .core import FeatureLayout, SweepConfig
from .io import Dataset, FeatureMatrix
from .pipeline import batch_extract
from .validation import as_batch_array

__all__ = ["SweepFeaturizer", "KnnClassifier"]


class SweepFeaturizer(BaseEstimator, TransformerMixin):
    """Stateless transformer turning image batches into run-count features.

    Parameters
    ----------
    thresholds : tuple of int
        Strictly increasing intensity cutoffs in [1, 255].
    interval_width : int
        Coalescing factor; consecutive groups of this many counts are summed.
    workers : int or None
        Process count for batch extraction; None means sequential.
    image_shape : tuple or None
        (rows, cols) or (rows, cols, channels), required when X is 2-D with
        one row-major flattened image per row.  Ignored for 3-D/4-D input.
    """

    def __init__(self, thresholds=(100,), interval_width=1, workers=None, image_shape=None):
        self.thresholds = thresholds
        self.interval_width = interval_width
        self.workers = workers
        self.image_shape = image_shape

    def fit(self, X, y=None):
        batch = self._to_batch(X)
        config = self._config()
        self.n_features_in_ = int(np.prod(batch.shape[1:]))
        self.layout_ = FeatureLayout(
            rows=batch.shape[1],
            cols=batch.shape[2],
            channels=batch.shape[3],
            thresholds=config.thresholds,
            interval_width=config.interval_width,
        )
        return self

    def transform(self, X):
        check_is_fitted(self, "layout_")
        batch = self._to_batch(X)
        if batch.shape[1:] != (self.layout_.rows, self.layout_.cols, self.layout_.channels):
            raise ValueError(
                f"images of shape {batch.shape[1:]} do not match fitted shape"
                f" ({self.layout_.rows}, {self.layout_.cols}, {self.layout_.channels})"
            )
        matrix, _ = batch_extract(Dataset(batch), self._config())
        return matrix.values

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "layout_")
        return np.asarray(self.layout_.feature_names(), dtype=object)

    def _config(self) -> SweepConfig:
        return SweepConfig(
            thresholds=tuple(self.thresholds),
            interval_width=self.interval_width,
            workers=self.workers,
        )

    def _to_batch(self, X) -> np.ndarray:
        a = np.asarray(X)
        if a.ndim == 2:
            if self.image_shape is None:
                raise ValueError("2-D input requires image_shape=(rows, cols[, channels])")
            shape = tuple(self.image_shape)
            if len(shape) == 2:
                shape = shape + (1,)
            a = a.reshape((a.shape[0],) + shape)
        return as_batch_array(a)


class KnnClassifier(BaseEstimator, ClassifierMixin):
    """Exact kNN with deterministic tie-breaking on integer features.

    Parameters
    ----------
    k : int
        Neighbor count; majority vote, distance ties resolved by training
        order, vote ties by the nearest tied class.
    """

    def __init__(self, k=5):
        self.k = k

    def fit(self, X, y):
        values = np.asarray(X)
        labels = np.asarray(y)
        self.model_ = knn.fit(FeatureMatrix(values=values, labels=labels), self.k)
        self.classes_ = np.unique(labels)
        self.n_features_in_ = values.shape[1]
        return self

    def predict(self, X):
        check_is_fitted(self, "model_")
        return knn.predict_many(self.model_, X)

    def score(self, X, y):
        check_is_fitted(self, "model_")
        test = FeatureMatrix(values=np.asarray(X), labels=np.asarray(y))
        return knn.evaluate(self.model_, test)
