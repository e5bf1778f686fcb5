"""Scikit-learn wrapper behavior: params, pipelines, parity with the functional API."""

from __future__ import annotations

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import Pipeline

import helpers
from tdasweep import (
    Dataset,
    FeatureMatrix,
    KnnClassifier,
    SweepConfig,
    SweepFeaturizer,
    batch_extract,
    knn,
)


class TestSweepFeaturizer:
    def test_transform_matches_functional_batch(self):
        pixels = helpers.random_images(6, 12, 12, seed=41)
        est = SweepFeaturizer(thresholds=(90, 180), interval_width=2).fit(pixels)
        expected, _ = batch_extract(Dataset(pixels), SweepConfig((90, 180), 2))
        assert np.array_equal(est.transform(pixels), expected.values)

    def test_accepts_three_dim_batches(self):
        pixels = helpers.random_images(4, 8, 8, seed=42)[:, :, :, 0]
        est = SweepFeaturizer().fit(pixels)
        assert est.transform(pixels).shape == (4, est.layout_.n_features)

    def test_flat_rows_with_image_shape(self):
        pixels = helpers.random_images(5, 9, 4, seed=43)
        flat = pixels.reshape(5, -1)
        est = SweepFeaturizer(image_shape=(9, 4)).fit(flat)
        expected, _ = batch_extract(Dataset(pixels), SweepConfig((100,), 1))
        assert np.array_equal(est.transform(flat), expected.values)

    def test_flat_rows_without_image_shape_rejected(self):
        flat = helpers.random_images(2, 4, 4, seed=44).reshape(2, -1)
        with pytest.raises(ValueError, match="image_shape"):
            SweepFeaturizer().fit(flat)

    def test_transform_before_fit_rejected(self):
        with pytest.raises(NotFittedError):
            SweepFeaturizer().transform(helpers.random_images(1, 4, 4))

    def test_geometry_change_rejected(self):
        est = SweepFeaturizer().fit(helpers.random_images(2, 6, 6, seed=45))
        with pytest.raises(ValueError, match="fitted shape"):
            est.transform(helpers.random_images(2, 7, 7, seed=46))

    def test_feature_names_match_layout(self):
        pixels = helpers.random_images(1, 6, 6, seed=47)
        est = SweepFeaturizer(thresholds=(100,), interval_width=2).fit(pixels)
        names = est.get_feature_names_out()
        assert names.shape == (est.layout_.n_features,)
        assert names[0] == "t100_ch0_rows_0"

    def test_get_params_round_trip(self):
        est = SweepFeaturizer(thresholds=(10, 20), interval_width=3, workers=2, image_shape=(4, 4))
        params = est.get_params()
        rebuilt = SweepFeaturizer(**params)
        assert rebuilt.get_params() == params

    def test_clone_preserves_params(self):
        est = SweepFeaturizer(thresholds=(30,), interval_width=4)
        copy = clone(est)
        assert copy.get_params() == est.get_params()

    def test_invalid_config_surfaces_at_fit(self):
        with pytest.raises(ValueError, match="strictly increasing"):
            SweepFeaturizer(thresholds=(200, 100)).fit(helpers.random_images(1, 4, 4))


class TestKnnClassifier:
    def test_predict_matches_harness(self):
        rng = np.random.default_rng(48)
        x = rng.integers(0, 20, size=(30, 5))
        y = rng.integers(0, 3, size=30)
        queries = rng.integers(0, 20, size=(10, 5))
        est = KnnClassifier(k=3).fit(x, y)
        model = knn.fit(FeatureMatrix(values=x, labels=y), 3)
        assert np.array_equal(est.predict(queries), knn.predict_many(model, queries))

    def test_score_is_accuracy(self):
        x = np.array([[0], [100]])
        y = np.array([0, 1])
        est = KnnClassifier(k=1).fit(x, y)
        assert est.score(np.array([[1], [99]]), np.array([0, 1])) == 1.0
        assert est.score(np.array([[1], [99]]), np.array([1, 1])) == 0.5

    def test_classes_exposed(self):
        est = KnnClassifier(k=1).fit(np.array([[0], [1], [2]]), np.array([7, 3, 7]))
        assert est.classes_.tolist() == [3, 7]


class TestPipelineIntegration:
    def test_featurize_then_classify(self):
        train_x, train_y, test_x, test_y = helpers.digit_corpus(120, 40, seed=49)
        pipe = Pipeline(
            [
                ("sweep", SweepFeaturizer(thresholds=(100,), interval_width=2)),
                ("knn", KnnClassifier(k=3)),
            ]
        )
        pipe.fit(train_x, train_y)
        predictions = pipe.predict(test_x)
        assert predictions.shape == (40,)
        assert set(predictions.tolist()) <= set(range(10))
        # sanity: far better than the 10% chance level
        assert pipe.score(test_x, test_y) > 0.5
