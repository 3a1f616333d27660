"""Behavioral simulator of on-chip SGD training in analog crossbar networks.

The package models a single-layer neural network whose weights live in
the conductances of a synaptic device array (conventional transistor,
domain-wall, or differential RRAM pair), trains it on-chip with
per-sample gradient descent, and accounts energy and time per device
operation so technologies can be compared on equal footing.
"""

from .crossbar import (CrossbarArray, CrossbarConfig, InputOutOfRange,
                       load_weights_csv, save_weights_csv)
from .config import ConfigError, ExperimentConfig
from .dataio import (Dataset, FeatureScaler, encode_targets, load_iris,
                     normalize, prepare_dataset, sensor_expand, split,
                     stratified_split)
from .devices import (DomainWallParams, DomainWallSynapse, EnergyEvent,
                      IdealSynapse, MosfetSynapse, MosfetSynapseParams,
                      OverdrivePulse, RramPairSynapse, RramParams,
                      WeightOutOfRange, make_device)
from .estimator import CrossbarClassifier
from .learner import (ClampWarning, EpochTrace, RunLedger, TrainConfig,
                      delta_w, evaluate, pulse_for_delta, run_training,
                      train_sample)
from .neuron import NeuronParams, activate, activate_derivative
from .perturb import NoiseSpec, PerturbationModel

__version__ = "0.1.0"

__all__ = [
    "ClampWarning",
    "ConfigError",
    "CrossbarArray",
    "CrossbarClassifier",
    "CrossbarConfig",
    "Dataset",
    "DomainWallParams",
    "DomainWallSynapse",
    "EnergyEvent",
    "EpochTrace",
    "ExperimentConfig",
    "FeatureScaler",
    "IdealSynapse",
    "InputOutOfRange",
    "MosfetSynapse",
    "MosfetSynapseParams",
    "NeuronParams",
    "NoiseSpec",
    "OverdrivePulse",
    "PerturbationModel",
    "RramPairSynapse",
    "RramParams",
    "RunLedger",
    "TrainConfig",
    "WeightOutOfRange",
    "activate",
    "activate_derivative",
    "delta_w",
    "encode_targets",
    "evaluate",
    "load_iris",
    "load_weights_csv",
    "make_device",
    "normalize",
    "prepare_dataset",
    "pulse_for_delta",
    "run_training",
    "save_weights_csv",
    "sensor_expand",
    "split",
    "stratified_split",
    "train_sample",
    "__version__",
]
