"""Persisted model bundles: the 12 winning per-channel regressors.

A bundle is one JSON document holding, per channel, the fitted estimator
(kind, hyperparameters, standardizer, parameter block, seed) plus the
held-out RMSE used as an uncertainty hint at prediction time. Numbers are
serialized with shortest round-trip precision, so save -> load -> predict
is bit-identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .domain import CHANNELS, FeatureGroup, ModelKind
from .errors import IncompatibleBundleError
from .regressors import ESTIMATOR_CLASSES, BaseRegressor, Standardizer

BUNDLE_FORMAT_VERSION = 1


@dataclass(frozen=True)
class ChannelModel:
    """One channel's winning fitted regressor with its selection context."""

    channel: int
    kind: ModelKind
    group: FeatureGroup
    rmse: float
    estimator: BaseRegressor

    def to_dict(self) -> dict:
        params = dict(self.estimator.get_params())
        seed = params.pop("seed", 0)
        return {
            "format_version": BUNDLE_FORMAT_VERSION,
            "channel": self.channel,
            "kind": self.kind.value,
            "group": self.group.value,
            "rmse": self.rmse,
            "seed": seed,
            "hyper": params,
            "standardizer": self.estimator.standardizer_.to_dict(),
            "params": self.estimator.fitted_params(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ChannelModel":
        if d.get("format_version") != BUNDLE_FORMAT_VERSION:
            raise IncompatibleBundleError(
                f"unsupported model format_version {d.get('format_version')!r}"
            )
        kind = ModelKind(d["kind"])
        estimator = ESTIMATOR_CLASSES[kind](seed=int(d.get("seed", 0)), **d["hyper"])
        estimator.load_fitted_params(d["params"], Standardizer.from_dict(d["standardizer"]))
        return cls(
            channel=int(d["channel"]),
            kind=kind,
            group=FeatureGroup(d["group"]),
            rmse=float(d["rmse"]),
            estimator=estimator,
        )


@dataclass(frozen=True)
class ModelBundle:
    """Complete per-channel model set (channels 1..12, ascending)."""

    models: tuple[ChannelModel, ...]

    def model_for(self, channel: int) -> ChannelModel:
        for m in self.models:
            if m.channel == channel:
                return m
        raise IncompatibleBundleError(f"bundle has no model for channel {channel}")

    def check_complete(self) -> "ModelBundle":
        have = {m.channel for m in self.models}
        missing = [c for c in CHANNELS if c not in have]
        if missing:
            raise IncompatibleBundleError(
                "bundle is missing channel(s): " + ", ".join(map(str, missing))
            )
        return self


def bundle_to_json(bundle: ModelBundle) -> str:
    doc = {
        "format_version": BUNDLE_FORMAT_VERSION,
        "models": [m.to_dict() for m in sorted(bundle.models, key=lambda m: m.channel)],
    }
    return json.dumps(doc, indent=2) + "\n"


def bundle_from_json(text: str | bytes) -> ModelBundle:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise IncompatibleBundleError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("format_version") != BUNDLE_FORMAT_VERSION:
        raise IncompatibleBundleError(
            f"unsupported bundle format_version {doc.get('format_version')!r}"
            if isinstance(doc, dict)
            else "bundle document must be a JSON object"
        )
    models = tuple(ChannelModel.from_dict(m) for m in doc.get("models", []))
    return ModelBundle(models=models)


def save_bundle(bundle: ModelBundle, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(bundle_to_json(bundle))


def load_bundle(path) -> ModelBundle:
    with open(path, "r", encoding="utf-8") as fh:
        return bundle_from_json(fh.read())
