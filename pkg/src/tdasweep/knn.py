"""Exact k-nearest-neighbor harness with fully deterministic tie handling.

Distances are squared Euclidean on integer features, computed in exact
int64 arithmetic.  Distance ties are broken by lower training-row index;
vote ties are broken by the label of the nearest neighbor among the tied
classes.  No scaling is applied: run counts share units.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .io import FeatureMatrix

__all__ = ["KnnModel", "fit", "predict", "predict_many", "evaluate"]

_QUERY_CHUNK = 256


@dataclass(frozen=True)
class KnnModel:
    train: FeatureMatrix
    k: int


def fit(train: FeatureMatrix, k: int) -> KnnModel:
    """Store the training matrix verbatim (lazy learner)."""
    if train.n_rows == 0:
        raise ValueError("training matrix is empty")
    if train.labels is None:
        raise ValueError("training matrix has no labels")
    if not 1 <= int(k) <= train.n_rows:
        raise ValueError(f"k must be in [1, {train.n_rows}], got {k}")
    return KnnModel(train=train, k=int(k))


def _as_query_block(model: KnnModel, queries) -> np.ndarray:
    q = np.asarray(queries)
    if q.ndim == 1:
        q = q[None, :]
    if q.ndim != 2 or q.shape[1] != model.train.n_cols:
        raise ValueError(
            f"query has {q.shape[-1] if q.ndim else 0} features,"
            f" model expects {model.train.n_cols}"
        )
    if q.dtype.kind not in "iu":
        raise ValueError(f"query features must be integers, got dtype {q.dtype}")
    return q.astype(np.int64, copy=False)


def _sq_distances(train_values: np.ndarray, queries: np.ndarray) -> np.ndarray:
    # ||q - t||^2 = ||q||^2 + ||t||^2 - 2 q.t, exact in int64
    q_sq = np.einsum("ij,ij->i", queries, queries)[:, None]
    t_sq = np.einsum("ij,ij->i", train_values, train_values)[None, :]
    return q_sq + t_sq - 2 * (queries @ train_values.T)


def _vote(ranked_labels: np.ndarray) -> int:
    counts: dict[int, int] = {}
    for lab in ranked_labels:
        counts[int(lab)] = counts.get(int(lab), 0) + 1
    best = max(counts.values())
    for lab in ranked_labels:  # earliest rank wins among tied classes
        if counts[int(lab)] == best:
            return int(lab)
    raise AssertionError("unreachable: ranked_labels is non-empty")


def predict_many(model: KnnModel, queries) -> np.ndarray:
    """Predict a label for each query row."""
    q = _as_query_block(model, queries)
    train = model.train.values.astype(np.int64, copy=False)
    labels = model.train.labels
    out = np.empty(q.shape[0], dtype=np.int64)
    for lo in range(0, q.shape[0], _QUERY_CHUNK):
        block = q[lo : lo + _QUERY_CHUNK]
        dists = _sq_distances(train, block)
        for i in range(block.shape[0]):
            # stable sort keeps lower train index first on equal distance
            order = np.argsort(dists[i], kind="stable")[: model.k]
            out[lo + i] = _vote(labels[order])
    return out


def predict(model: KnnModel, query) -> int:
    """Predict the label of a single feature vector."""
    q = np.asarray(query)
    if q.ndim != 1:
        raise ValueError(f"query must be 1-D, got shape {q.shape}")
    return int(predict_many(model, q[None, :])[0])


def evaluate(model: KnnModel, test: FeatureMatrix) -> float:
    """Fraction of test rows whose prediction matches the true label."""
    if test.labels is None:
        raise ValueError("test matrix has no labels")
    if test.n_cols != model.train.n_cols:
        raise ValueError(
            f"test matrix has {test.n_cols} features, model expects {model.train.n_cols}"
        )
    predictions = predict_many(model, test.values)
    return float(np.mean(predictions == test.labels))
