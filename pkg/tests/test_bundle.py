import json

import numpy as np
import pytest

from impforecast.bundle import (
    ModelBundle,
    bundle_from_json,
    bundle_to_json,
    load_bundle,
    save_bundle,
)
from impforecast.dataio import generate_synthetic_cohort
from impforecast.domain import FeatureGroup, feature_matrix
from impforecast.errors import IncompatibleBundleError
from impforecast.pipeline import StudyConfig, run_study
from impforecast.regressors import HyperParams

FAST = StudyConfig(
    hyper=HyperParams().with_overrides(
        {"dfr.trees": 10, "bdtr.trees": 20, "nnr.epochs": 100}
    )
)


@pytest.fixture(scope="module")
def fitted(tmp_path_factory):
    cohort = generate_synthetic_cohort(30, 13)
    _, models = run_study(cohort, FAST)
    return cohort, models


def test_save_load_predict_bit_identical(fitted, tmp_path):
    cohort, models = fitted
    path = tmp_path / "models.json"
    save_bundle(models, path)
    reloaded = load_bundle(path)
    X = feature_matrix(cohort, FeatureGroup.G2)
    for channel_model in models.models:
        again = reloaded.model_for(channel_model.channel)
        assert again.kind == channel_model.kind
        assert again.group == channel_model.group
        Xg = feature_matrix(cohort, channel_model.group)
        before = channel_model.estimator.predict(Xg)
        after = again.estimator.predict(Xg)
        assert np.array_equal(before, after)
    assert X.shape[1] == 13


def test_json_stable_across_reload(fitted):
    _, models = fitted
    text = bundle_to_json(models)
    assert bundle_to_json(bundle_from_json(text)) == text


def test_wrong_format_version_rejected(fitted):
    _, models = fitted
    doc = json.loads(bundle_to_json(models))
    doc["format_version"] = 99
    with pytest.raises(IncompatibleBundleError):
        bundle_from_json(json.dumps(doc))
    doc["format_version"] = 1
    doc["models"][0]["format_version"] = 99
    with pytest.raises(IncompatibleBundleError):
        bundle_from_json(json.dumps(doc))


def test_incomplete_bundle_detected(fitted):
    _, models = fitted
    partial = ModelBundle(models=models.models[:11])
    with pytest.raises(IncompatibleBundleError) as info:
        partial.check_complete()
    assert "12" in str(info.value)


def test_not_json_rejected():
    with pytest.raises(IncompatibleBundleError):
        bundle_from_json("not json at all {")
