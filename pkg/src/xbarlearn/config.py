"""Experiment configuration: defaults, TOML files, overrides, hashing.

One ExperimentConfig bundles every parameter block a run needs (device
technology and constants, array geometry, neuron, training loop, noise)
plus artifact plumbing (data path, output directory).  Every field has
a working default, so a run needs no configuration file at all.

File format is TOML with one section per block::

    [run]
    device = "mosfet"
    output_dir = "runs/demo"

    [train]
    eta = 0.1
    epochs = 100

    [device]            # constants of the selected technology
    tau_retention = 1e-3

Individual keys can be overridden from the command line with dotted
paths like ``train.eta=0.05``.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib

from .crossbar import CrossbarConfig
from .devices import (DEVICE_MODELS, DomainWallParams, MosfetSynapseParams,
                      RramParams, make_device)
from .learner import TrainConfig
from .neuron import NeuronParams
from .perturb import NoiseSpec

ENV_CONFIG_PATH = "XBARLEARN_CONFIG"

_PARAM_CLASSES = {
    "mosfet": MosfetSynapseParams,
    "domain_wall": DomainWallParams,
    "rram": RramParams,
    "ideal": None,
}

_SECTION_CLASSES = {
    "crossbar": CrossbarConfig,
    "neuron": NeuronParams,
    "train": TrainConfig,
    "noise": NoiseSpec,
}


class ConfigError(ValueError):
    """Malformed or inconsistent experiment configuration."""


@dataclass(frozen=True)
class ExperimentConfig:
    """All parameter blocks of one experiment, with artifact plumbing."""

    device: str = "mosfet"
    output_dir: str = "runs/latest"
    data_path: Optional[str] = None  # None selects the bundled dataset
    n_train: int = 100
    device_overrides: Dict[str, Any] = field(default_factory=dict)
    crossbar: CrossbarConfig = field(default_factory=CrossbarConfig)
    neuron: NeuronParams = field(default_factory=NeuronParams)
    train: TrainConfig = field(default_factory=TrainConfig)
    noise: NoiseSpec = field(default_factory=NoiseSpec)

    def __post_init__(self):
        if self.device not in DEVICE_MODELS:
            raise ConfigError(
                f"unknown device {self.device!r}; "
                f"choose from {sorted(DEVICE_MODELS)}")
        if not 0 < self.n_train:
            raise ConfigError("n_train must be positive")

    # -- construction -----------------------------------------------------

    @classmethod
    def from_dict(cls, raw: Dict[str, Any]) -> "ExperimentConfig":
        raw = dict(raw)
        kwargs: Dict[str, Any] = {}
        run = dict(raw.pop("run", {}))
        for key in ("device", "output_dir", "data_path", "n_train"):
            if key in run:
                kwargs[key] = run.pop(key)
        if run:
            raise ConfigError(f"unknown [run] keys: {sorted(run)}")
        kwargs["device_overrides"] = dict(raw.pop("device", {}))
        for section, section_cls in _SECTION_CLASSES.items():
            if section in raw:
                values = raw.pop(section)
                try:
                    kwargs[section] = section_cls(**values)
                except (TypeError, ValueError) as exc:
                    raise ConfigError(f"bad [{section}] block: {exc}") from exc
        if raw:
            raise ConfigError(f"unknown config sections: {sorted(raw)}")
        try:
            return cls(**kwargs)
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from exc

    @classmethod
    def from_toml(cls, path) -> "ExperimentConfig":
        with open(path, "rb") as fh:
            try:
                raw = tomllib.load(fh)
            except tomllib.TOMLDecodeError as exc:
                raise ConfigError(f"{path}: {exc}") from exc
        return cls.from_dict(raw)

    @classmethod
    def load(cls, path=None, overrides: Sequence[str] = ()) -> "ExperimentConfig":
        """File (explicit, or $XBARLEARN_CONFIG, or none) plus overrides."""
        if path is None:
            path = os.environ.get(ENV_CONFIG_PATH) or None
        cfg = cls.from_toml(path) if path is not None else cls()
        if overrides:
            cfg = cfg.with_overrides(overrides)
        return cfg

    def with_overrides(self, assignments: Sequence[str]) -> "ExperimentConfig":
        """Apply ``section.key=value`` assignments on top of this config."""
        raw = self.to_dict()
        for item in assignments:
            if "=" not in item:
                raise ConfigError(f"override {item!r} is not key=value")
            dotted, text = item.split("=", 1)
            parts = dotted.strip().split(".")
            if len(parts) != 2:
                raise ConfigError(
                    f"override key {dotted!r} must be section.key")
            section, key = parts
            raw.setdefault(section, {})[key] = _parse_value(text.strip())
        return self.from_dict(raw)

    # -- derived objects ----------------------------------------------------

    def device_params(self):
        """The device-constant dataclass for the selected technology."""
        cls = _PARAM_CLASSES[self.device]
        if cls is None:
            if self.device_overrides:
                raise ConfigError(
                    "ideal device takes no [device] parameters")
            return None
        try:
            return cls(**{**_asdict(cls()), **self.device_overrides})
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad [device] block: {exc}") from exc

    def make_device(self):
        return make_device(self.device, self.device_params())

    def noise_spec(self) -> NoiseSpec:
        """Noise spec with the seed defaulted from the training seed."""
        if self.noise.seed is None:
            return dataclasses.replace(self.noise, seed=self.train.seed)
        return self.noise

    # -- canonical form --------------------------------------------------

    def to_dict(self) -> Dict[str, Any]:
        """Nested plain-dict form; the canonical serialization."""
        out: Dict[str, Any] = {
            "run": {
                "device": self.device,
                "output_dir": self.output_dir,
                "data_path": self.data_path,
                "n_train": self.n_train,
            },
            "device": dict(self.device_overrides),
        }
        for section in _SECTION_CLASSES:
            out[section] = _asdict(getattr(self, section))
        return out

    def config_hash(self) -> str:
        """Stable digest of everything that affects run results."""
        payload = self.to_dict()
        payload["run"].pop("output_dir")  # placement does not change results
        blob = json.dumps(payload, sort_keys=True, default=_jsonify)
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _asdict(obj) -> Dict[str, Any]:
    d = dataclasses.asdict(obj)
    return {k: (list(v) if isinstance(v, tuple) else v) for k, v in d.items()}


def _jsonify(value):
    if isinstance(value, tuple):
        return list(value)
    raise TypeError(f"not JSON-serializable: {value!r}")


def _parse_value(text: str):
    """Scalar override parsing: bool, int, float, else bare string."""
    low = text.lower()
    if low in ("true", "false"):
        return low == "true"
    if low in ("none", "null", ""):
        return None
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            continue
    return text.strip("\"'")
