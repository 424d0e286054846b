import numpy as np
import pytest

from impforecast.domain import (
    CHANNELS,
    FeatureGroup,
    KIND_ORDER,
    ModelKind,
    PatientRecord,
    assemble_features,
    check_channel,
    feature_matrix,
    label_vector,
    published_range,
    Cohort,
)


def make_record(age=2.5, intra=None, labels=None):
    intra = tuple(intra) if intra is not None else tuple(5.0 for _ in CHANNELS)
    return PatientRecord(age=age, ei_intra=intra, ei_1m=labels)


class TestPublishedRanges:
    def test_channel_1(self):
        r = published_range(1)
        assert (r.min, r.max, r.range) == (4.48, 16.86, 12.38)

    def test_channel_10(self):
        r = published_range(10)
        assert (r.min, r.max, r.range) == (2.12, 8.00, 5.88)

    def test_channel_9(self):
        r = published_range(9)
        assert (r.min, r.max, r.range) == (2.34, 8.30, 5.96)

    def test_internally_consistent_to_a_cent(self):
        # range column agrees with max - min for every channel
        for c in CHANNELS:
            r = published_range(c)
            assert abs(r.range - (r.max - r.min)) <= 0.01
            assert r.min < r.max

    @pytest.mark.parametrize("bad", [0, 13, -1, 2.5, "3"])
    def test_rejects_bad_channels(self, bad):
        with pytest.raises(ValueError):
            check_channel(bad)


class TestAssembleFeatures:
    def test_group1_is_age_only(self):
        v = assemble_features(make_record(age=2.5), FeatureGroup.G1)
        assert v.tolist() == [2.5]

    def test_group2_layout(self):
        intra = tuple(5.0 + 0.1 * i for i in range(12))
        v = assemble_features(make_record(age=2.5, intra=intra), FeatureGroup.G2)
        assert v.shape == (13,)
        assert v[0] == 2.5
        assert v[1:].tolist() == list(intra)

    def test_group2_length_fixed(self):
        rng = np.random.default_rng(0)
        for _ in range(10):
            rec = make_record(age=float(rng.uniform(1, 6)), intra=rng.uniform(2, 9, 12))
            assert assemble_features(rec, FeatureGroup.G2).shape == (13,)

    def test_pure_function(self):
        rec = make_record()
        a = assemble_features(rec, FeatureGroup.G2)
        b = assemble_features(rec, FeatureGroup.G2)
        assert np.array_equal(a, b)

    def test_group_dimensions(self):
        assert FeatureGroup.G1.dimension == 1
        assert FeatureGroup.G2.dimension == 13
        assert FeatureGroup.G1.number == 1
        assert FeatureGroup.G2.number == 2


def test_kind_order_is_the_five_kinds():
    assert KIND_ORDER == (
        ModelKind.LR,
        ModelKind.BLR,
        ModelKind.DFR,
        ModelKind.BDTR,
        ModelKind.NNR,
    )


def test_feature_matrix_and_labels():
    recs = tuple(
        make_record(age=1.0 + i, labels=tuple(float(10 * i + c) for c in CHANNELS))
        for i in range(3)
    )
    cohort = Cohort(records=recs)
    X = feature_matrix(cohort, FeatureGroup.G2)
    assert X.shape == (3, 13)
    assert X[:, 0].tolist() == [1.0, 2.0, 3.0]
    y = label_vector(cohort, 4)
    assert y.tolist() == [4.0, 14.0, 24.0]


def test_labeled_flag_tracks_records():
    full = Cohort(records=(make_record(labels=tuple(5.0 for _ in CHANNELS)),))
    partial = Cohort(records=(make_record(labels=None),))
    assert full.labeled and not partial.labeled
