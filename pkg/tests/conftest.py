"""Shared fixtures: the dataset and one session-scoped reference run.

The full default training run costs under a second but is reused by
many tests, so it is built once per session.
"""

import numpy as np
import pytest

from xbarlearn import (CrossbarArray, CrossbarConfig, NeuronParams, NoiseSpec,
                       PerturbationModel, TrainConfig, prepare_dataset,
                       run_training)

DEFAULT_SEED = 7


@pytest.fixture(scope="session")
def iris_dataset():
    return prepare_dataset(n_train=100, seed=DEFAULT_SEED)


def make_run(dataset, device="mosfet", seed=DEFAULT_SEED, noise=None,
             train_overrides=None, neuron=None):
    """One full training run; returns (xbar, ledger)."""
    import dataclasses

    noise = noise or NoiseSpec(seed=seed)
    config = TrainConfig(seed=seed)
    if train_overrides:
        config = dataclasses.replace(config, **train_overrides)
    xbar = CrossbarArray(CrossbarConfig(), device,
                         init_weights=config.init_weight,
                         perturbation=PerturbationModel(noise))
    ledger = run_training(xbar, dataset.X_train, dataset.Y_train, config,
                          neuron or NeuronParams(), noise,
                          X_test=dataset.X_test, Y_test=dataset.Y_test)
    return xbar, ledger


@pytest.fixture(scope="session")
def mosfet_run(iris_dataset):
    """The default-configuration reference run (criteria 1-4, 8, 9)."""
    return make_run(iris_dataset)
