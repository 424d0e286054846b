"""Core value types: the fixed 12-channel schema, published per-channel
impedance ranges, and feature-vector assembly for the two feature groups.

All types are immutable values and safe to share between threads.
Impedances are kilo-ohms throughout; ages are decimal years.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

N_CHANNELS = 12
CHANNELS = tuple(range(1, N_CHANNELS + 1))


class ModelKind(enum.Enum):
    """The five regression algorithm families."""

    LR = "LR"
    BLR = "BLR"
    DFR = "DFR"
    BDTR = "BDTR"
    NNR = "NNR"


# Canonical simplicity order, used to break RMSE ties (simpler kind wins).
KIND_ORDER = (ModelKind.LR, ModelKind.BLR, ModelKind.DFR, ModelKind.BDTR, ModelKind.NNR)

KIND_LONG_NAMES = {
    ModelKind.LR: "Linear Regression",
    ModelKind.BLR: "Bayesian Linear Regression",
    ModelKind.DFR: "Decision Forest Regression",
    ModelKind.BDTR: "Boosted Decision Tree Regression",
    ModelKind.NNR: "Neural Network Regression",
}


def kind_index(kind: ModelKind) -> int:
    return KIND_ORDER.index(kind)


class FeatureGroup(enum.Enum):
    """Input feature set: G1 = age only, G2 = age + 12 intraoperative impedances."""

    G1 = "G1"
    G2 = "G2"

    @property
    def dimension(self) -> int:
        return 1 if self is FeatureGroup.G1 else 1 + N_CHANNELS

    @property
    def number(self) -> int:
        return 1 if self is FeatureGroup.G1 else 2


GROUP_ORDER = (FeatureGroup.G1, FeatureGroup.G2)


def group_index(group: FeatureGroup) -> int:
    return GROUP_ORDER.index(group)


@dataclass(frozen=True)
class PatientRecord:
    """One patient: age at implantation plus per-channel impedances.

    ``ei_intra`` holds the 12 intraoperative measurements (channel order
    1..12); ``ei_1m`` the optional 12 one-month labels.
    """

    age: float
    ei_intra: tuple[float, ...]
    ei_1m: tuple[float, ...] | None = None


@dataclass(frozen=True)
class Cohort:
    """Ordered collection of patient records."""

    records: tuple[PatientRecord, ...]

    @property
    def labeled(self) -> bool:
        return all(r.ei_1m is not None for r in self.records)

    def __len__(self) -> int:
        return len(self.records)


@dataclass(frozen=True)
class ChannelRange:
    """Published [min, max] of the one-month impedance for one channel (kOhm)."""

    channel: int
    min: float
    max: float
    range: float


# Published per-channel one-month impedance bounds (kOhm) from the reference
# cohort. Single source of truth for label validation and synthesis bounds.
_RANGE_TABLE = {
    1: (4.48, 16.86, 12.38),
    2: (5.37, 17.64, 12.27),
    3: (4.19, 14.57, 10.38),
    4: (3.38, 17.47, 14.09),
    5: (2.71, 16.50, 13.79),
    6: (2.10, 10.55, 8.45),
    7: (1.97, 8.94, 6.97),
    8: (2.34, 8.59, 6.25),
    9: (2.34, 8.30, 5.96),
    10: (2.12, 8.00, 5.88),
    11: (2.12, 9.62, 7.50),
    12: (2.12, 9.31, 7.19),
}

PUBLISHED_RANGES = {
    c: ChannelRange(c, lo, hi, span) for c, (lo, hi, span) in _RANGE_TABLE.items()
}


def check_channel(channel: int) -> int:
    """Validate a channel id (1..12) and return it."""
    if not isinstance(channel, (int, np.integer)) or isinstance(channel, bool):
        raise ValueError(f"channel must be an integer, got {channel!r}")
    if not 1 <= channel <= N_CHANNELS:
        raise ValueError(f"channel must be in 1..{N_CHANNELS}, got {channel}")
    return int(channel)


def published_range(channel: int) -> ChannelRange:
    """Published one-month impedance range for ``channel``."""
    return PUBLISHED_RANGES[check_channel(channel)]


def assemble_features(record: PatientRecord, group: FeatureGroup) -> np.ndarray:
    """Feature vector for one record: [age] for G1, [age, intra 1..12] for G2."""
    if group is FeatureGroup.G1:
        return np.array([record.age], dtype=float)
    return np.array([record.age, *record.ei_intra], dtype=float)


def feature_matrix(cohort: Cohort, group: FeatureGroup) -> np.ndarray:
    """Stack per-record feature vectors into an (n, d) matrix."""
    if not cohort.records:
        return np.empty((0, group.dimension), dtype=float)
    return np.stack([assemble_features(r, group) for r in cohort.records])


def label_vector(cohort: Cohort, channel: int) -> np.ndarray:
    """One-month labels for ``channel`` across the cohort (requires labels)."""
    c = check_channel(channel)
    return np.array([r.ei_1m[c - 1] for r in cohort.records], dtype=float)
