import numpy as np
import pytest

from impforecast.dataio import SYNTH_AGE_COEF, SYNTH_SLOPE, synth_offset
from impforecast.domain import CHANNELS, Cohort, PatientRecord, published_range


def build_linear_cohort(n: int, seed: int, sigma: float = 0.1) -> Cohort:
    """Labeled cohort whose labels follow the documented linear rule with
    Gaussian noise ``sigma`` and no clipping (useful as a known-truth
    fixture for model evaluation)."""
    rng = np.random.default_rng(seed)
    lo = np.array([published_range(c).min for c in CHANNELS])
    hi = np.array([published_range(c).max for c in CHANNELS])
    ages = rng.uniform(1.0, 6.0, size=n)
    intra = lo + (hi - lo) * rng.uniform(0.0, 1.0, size=(n, 12))
    offsets = np.array([synth_offset(c) for c in CHANNELS])
    labels = (
        SYNTH_SLOPE * intra
        + SYNTH_AGE_COEF * ages[:, None]
        + offsets
        + sigma * rng.standard_normal((n, 12))
    )
    records = tuple(
        PatientRecord(
            age=float(ages[i]),
            ei_intra=tuple(float(v) for v in intra[i]),
            ei_1m=tuple(float(v) for v in labels[i]),
        )
        for i in range(n)
    )
    return Cohort(records=records)


@pytest.fixture
def linear_cohort_factory():
    return build_linear_cohort
