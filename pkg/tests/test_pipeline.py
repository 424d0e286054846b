import dataclasses

import numpy as np
import pytest

from impforecast.bundle import ModelBundle, bundle_to_json
from impforecast.dataio import SplitSpec, generate_synthetic_cohort, split_cohort
from impforecast.domain import CHANNELS, FeatureGroup, ModelKind, label_vector
from impforecast.errors import IncompatibleBundleError, TooSmallError
from impforecast.metrics import rmse
from impforecast.pipeline import (
    CANDIDATES,
    StudyConfig,
    candidate_seed,
    evaluate_candidate,
    histogram_of_kinds,
    predict_one,
    report_from_json,
    report_to_json,
    run_study,
    select_best,
)
from impforecast.regressors import HyperParams

# trimmed ensembles/epochs: pipeline behavior is identical, tests run fast
FAST = HyperParams().with_overrides(
    {"dfr.trees": 15, "bdtr.trees": 30, "nnr.epochs": 150}
)
FAST_CONFIG = StudyConfig(hyper=FAST)

# reference per-channel winners this pipeline's tables mirror
REFERENCE_WINNERS = [
    ModelKind.BLR, ModelKind.DFR, ModelKind.LR, ModelKind.BLR,
    ModelKind.BLR, ModelKind.BLR, ModelKind.BLR, ModelKind.BLR,
    ModelKind.BLR, ModelKind.NNR, ModelKind.NNR, ModelKind.BDTR,
]


@pytest.fixture(scope="module")
def small_cohort():
    return generate_synthetic_cohort(40, 21)


@pytest.fixture(scope="module")
def small_split(small_cohort):
    return split_cohort(small_cohort, SplitSpec(0.30, FAST_CONFIG.seed))


@pytest.fixture(scope="module")
def small_study(small_cohort):
    return run_study(small_cohort, FAST_CONFIG)


class TestEvaluateCandidate:
    def test_contract_shape(self, small_split):
        train, test = small_split
        res = evaluate_candidate(
            ModelKind.LR, FeatureGroup.G2, 3, train, test, FAST, seed=1
        )
        assert res.rmse >= 0.0
        assert res.bands.n_test == len(test)

    def test_deterministic(self, small_split):
        train, test = small_split
        a = evaluate_candidate(ModelKind.DFR, FeatureGroup.G2, 5, train, test, FAST, seed=9)
        b = evaluate_candidate(ModelKind.DFR, FeatureGroup.G2, 5, train, test, FAST, seed=9)
        assert (a.rmse, a.bands) == (b.rmse, b.bands)

    def test_linear_truth_within_noise_budget(self, linear_cohort_factory):
        # generator noise 0.1 bounds the achievable error; a linear model
        # on group 2 must land within 1.5x of it
        cohort = linear_cohort_factory(80, 11, sigma=0.1)
        train, test = split_cohort(cohort, SplitSpec(0.30, 11))
        for channel in CHANNELS:
            res = evaluate_candidate(
                ModelKind.LR, FeatureGroup.G2, channel, train, test, FAST, seed=1
            )
            assert res.rmse <= 0.15


class TestSelectBest:
    def test_argmin_over_grid(self, small_split):
        train, test = small_split
        outcome = select_best(4, train, test, FAST_CONFIG)
        winner_rmse = outcome.entry.rmse
        assert len(outcome.candidates) == 10
        for cand in outcome.candidates:
            assert winner_rmse <= cand.rmse

    def test_winner_matches_direct_evaluation(self, small_split):
        train, test = small_split
        outcome = select_best(7, train, test, FAST_CONFIG)
        res = evaluate_candidate(
            outcome.entry.kind, outcome.entry.group, 7, train, test, FAST,
            candidate_seed(FAST_CONFIG.seed, 7, outcome.entry.kind, outcome.entry.group),
        )
        assert res.rmse == outcome.entry.rmse

    def test_tie_breaks_prefer_simpler_kind_then_smaller_group(self, monkeypatch, small_split):
        import impforecast.pipeline as pipeline

        train, test = small_split
        fixed = {(k, g): 0.5 for k, g in CANDIDATES}  # exact 10-way tie

        real = pipeline.evaluate_candidate

        def rigged(kind, group, channel, train_, test_, hyper, seed):
            res = real(ModelKind.LR, group, channel, train_, test_, hyper, seed)
            return dataclasses.replace(res, kind=kind, rmse=fixed[(kind, group)])

        monkeypatch.setattr(pipeline, "evaluate_candidate", rigged)
        outcome = pipeline.select_best(1, train, test, FAST_CONFIG)
        assert outcome.entry.kind is ModelKind.LR
        assert outcome.entry.group is FeatureGroup.G1

    def test_linear_generator_favors_linear_family(self, linear_cohort_factory):
        cohort = linear_cohort_factory(80, 4, sigma=0.1)
        train, test = split_cohort(cohort, SplitSpec(0.30, 42))
        wins = 0
        for channel in CHANNELS:
            outcome = select_best(channel, train, test, FAST_CONFIG)
            wins += outcome.entry.kind in (ModelKind.LR, ModelKind.BLR)
        assert wins >= 10


class TestHistogram:
    def test_reference_tally(self):
        assert histogram_of_kinds(REFERENCE_WINNERS) == {
            "BLR": 7,
            "NNR": 2,
            "DFR": 1,
            "BDTR": 1,
            "LR": 1,
        }

    def test_zero_counts_present(self):
        assert histogram_of_kinds([]) == {k.value: 0 for k in ModelKind}


class TestRunStudy:
    def test_shape(self, small_study, small_cohort):
        report, models = small_study
        assert len(report.entries) == 12
        assert [e.channel for e in report.entries] == list(CHANNELS)
        assert sum(report.histogram.values()) == 12
        expected_test = round(len(small_cohort) * 0.30)
        assert all(e.bands.n_test == expected_test for e in report.entries)
        assert len(models.models) == 12

    def test_deterministic_bytes(self, small_cohort, small_study):
        report, models = small_study
        again_report, again_models = run_study(small_cohort, FAST_CONFIG)
        assert report_to_json(report) == report_to_json(again_report)
        assert bundle_to_json(models) == bundle_to_json(again_models)

    def test_threads_do_not_change_bytes(self, small_cohort, small_study):
        report, models = small_study
        threaded = run_study(small_cohort, dataclasses.replace(FAST_CONFIG, n_threads=4))
        assert report_to_json(report) == report_to_json(threaded[0])
        assert bundle_to_json(models) == bundle_to_json(threaded[1])

    def test_config_echo_excludes_threads(self, small_study):
        report, _ = small_study
        assert "n_threads" not in report.config
        assert report.config["seed"] == FAST_CONFIG.seed

    def test_beats_training_mean_baseline(self, small_cohort, small_study):
        report, _ = small_study
        train, test = split_cohort(small_cohort, SplitSpec(0.30, FAST_CONFIG.seed))
        beating = 0
        for e in report.entries:
            y_train = label_vector(train, e.channel)
            y_test = label_vector(test, e.channel)
            baseline = rmse(np.full_like(y_test, y_train.mean()), y_test)
            beating += e.rmse <= baseline
        assert beating >= 10

    def test_inner_validation_mode_runs_and_is_deterministic(self, small_cohort):
        config = dataclasses.replace(FAST_CONFIG, selection="inner_validation")
        r1, _ = run_study(small_cohort, config)
        r2, _ = run_study(small_cohort, config)
        assert report_to_json(r1) == report_to_json(r2)
        assert len(r1.entries) == 12

    def test_rejects_tiny_cohorts(self):
        with pytest.raises(TooSmallError):
            run_study(generate_synthetic_cohort(5, 1), FAST_CONFIG)

    def test_validation_errors_block_training(self):
        from impforecast.domain import Cohort, PatientRecord
        from impforecast.errors import CohortValidationError

        base = generate_synthetic_cohort(20, 2)
        broken = base.records[0]
        bad = PatientRecord(
            age=broken.age,
            ei_intra=broken.ei_intra,
            ei_1m=(float("nan"),) + broken.ei_1m[1:],
        )
        cohort = Cohort(records=(bad,) + base.records[1:])
        with pytest.raises(CohortValidationError):
            run_study(cohort, FAST_CONFIG)


class TestPredictOne:
    def test_memorized_point_within_error_budget(self, small_cohort, small_study):
        _, models = small_study
        record = small_cohort.records[0]
        for pred in predict_one(models, record):
            label = record.ei_1m[pred.channel - 1]
            entry_rmse = models.model_for(pred.channel).rmse
            assert abs(pred.value - label) <= 3.0 * entry_rmse

    def test_unlabeled_record_gets_finite_predictions(self, small_study):
        _, models = small_study
        from impforecast.domain import PatientRecord

        record = PatientRecord(age=3.0, ei_intra=tuple([5.0] * 12))
        predictions = predict_one(models, record)
        assert len(predictions) == 12
        assert all(np.isfinite(p.value) for p in predictions)

    def test_rmse_hint_format(self, small_study):
        _, models = small_study
        entry = dataclasses.replace(models.model_for(10), rmse=0.872403)
        bundle = ModelBundle(models=tuple(
            entry if m.channel == 10 else m for m in models.models
        ))
        record = generate_synthetic_cohort(1, 0).records[0]
        pred = predict_one(bundle, record)[9]
        assert pred.rmse_hint == "RMSE 0.87 kΩ"

    def test_missing_channel_is_incompatible(self, small_study):
        _, models = small_study
        partial = ModelBundle(models=tuple(m for m in models.models if m.channel != 4))
        record = generate_synthetic_cohort(1, 0).records[0]
        with pytest.raises(IncompatibleBundleError):
            predict_one(partial, record)


def test_report_json_roundtrip(small_study):
    report, _ = small_study
    text = report_to_json(report)
    again = report_from_json(text)
    assert again == report
    assert report_to_json(again) == text
