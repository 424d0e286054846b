"""Hyperparameter blocks for the five regressor kinds.

None of these settings come from published results; they are standard
defaults sized for a small (tens of rows) tabular cohort and every field
can be overridden via the library API or the CLI ``--hyper`` flags.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

from ..domain import ModelKind


@dataclass(frozen=True)
class LinearConfig:
    ridge: float = 1e-8


@dataclass(frozen=True)
class BayesConfig:
    alpha: float = 1e-2
    beta: float = 1.0
    evidence_iters: int = 30


@dataclass(frozen=True)
class ForestConfig:
    trees: int = 100
    max_depth: int = 8
    min_leaf: int = 2
    feature_subset: int | None = None  # None -> ceil(sqrt(d))
    bootstrap: bool = True


@dataclass(frozen=True)
class BoostConfig:
    trees: int = 200
    max_depth: int = 3
    learning_rate: float = 0.1
    min_leaf: int = 2


@dataclass(frozen=True)
class NeuralConfig:
    hidden_units: int = 16
    epochs: int = 2000
    step: float = 1e-2
    momentum: float = 0.9
    init_scale: float = 1.0


@dataclass(frozen=True)
class HyperParams:
    """One configuration block per model kind."""

    lr: LinearConfig = field(default_factory=LinearConfig)
    blr: BayesConfig = field(default_factory=BayesConfig)
    dfr: ForestConfig = field(default_factory=ForestConfig)
    bdtr: BoostConfig = field(default_factory=BoostConfig)
    nnr: NeuralConfig = field(default_factory=NeuralConfig)

    def for_kind(self, kind: ModelKind):
        return getattr(self, kind.value.lower())

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "HyperParams":
        return cls(
            lr=LinearConfig(**d.get("lr", {})),
            blr=BayesConfig(**d.get("blr", {})),
            dfr=ForestConfig(**d.get("dfr", {})),
            bdtr=BoostConfig(**d.get("bdtr", {})),
            nnr=NeuralConfig(**d.get("nnr", {})),
        )

    def with_overrides(self, overrides: dict[str, object]) -> "HyperParams":
        """Apply ``{"kind.field": value}`` overrides, rejecting unknown keys."""
        blocks = {f.name: getattr(self, f.name) for f in dataclasses.fields(self)}
        for key, value in overrides.items():
            block_name, _, field_name = key.partition(".")
            if block_name not in blocks or not field_name:
                raise KeyError(f"unknown hyperparameter key {key!r}")
            block = blocks[block_name]
            if field_name not in {f.name for f in dataclasses.fields(block)}:
                raise KeyError(f"unknown hyperparameter key {key!r}")
            blocks[block_name] = dataclasses.replace(block, **{field_name: value})
        return HyperParams(**blocks)
