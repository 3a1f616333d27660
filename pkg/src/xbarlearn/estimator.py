"""Scikit-learn estimator facade over the on-chip training simulator.

CrossbarClassifier wraps the whole pipeline (min-max scaling, sensor
expansion, device array construction, on-chip SGD) behind the standard
fit/predict API, so the simulated hardware can sit in sklearn pipelines
and model-selection tooling.  ``predict`` uses the argmax class
decision; the hardware's own conjunctive success criterion is exposed
separately as :meth:`success_rate`.
"""

from __future__ import annotations

from typing import Optional

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from .crossbar import CrossbarArray, CrossbarConfig
from .dataio import (FeatureScaler, N_SENSORS_PER_FEATURE, decode_outputs,
                     encode_targets, sensor_expand)
from .learner import TrainConfig, evaluate, run_training
from .neuron import NeuronParams, activate
from .perturb import NoiseSpec, PerturbationModel


class CrossbarClassifier(BaseEstimator, ClassifierMixin):
    """Analog-hardware classifier trained on-chip by SGD.

    Parameters mirror the simulator configuration: ``device`` selects
    the synapse technology, ``eta``/``lam`` the SGD and activation
    gains, the noise amplitudes the perturbation study knobs.
    ``random_state`` must be an int (or None for the default seed); it
    seeds the data order, device mismatch and noise streams.

    Attributes (after fit): ``classes_``, ``n_features_in_``,
    ``scaler_``, ``xbar_`` (the trained array), ``ledger_`` (training
    traces and energy/time totals).
    """

    def __init__(self, device: str = "mosfet", eta: float = 0.025,
                 lam: float = 1.1, epochs: int = 100,
                 success_band: float = 0.40, init_weight: float = 0.6,
                 sample_period: float = 1.0e-9, gain_error: float = 0.0,
                 device_variability: float = 0.0, input_noise: float = 0.0,
                 update_noise: float = 0.0,
                 random_state: Optional[int] = None):
        self.device = device
        self.eta = eta
        self.lam = lam
        self.epochs = epochs
        self.success_band = success_band
        self.init_weight = init_weight
        self.sample_period = sample_period
        self.gain_error = gain_error
        self.device_variability = device_variability
        self.input_noise = input_noise
        self.update_noise = update_noise
        self.random_state = random_state

    def _seed(self) -> int:
        if self.random_state is None:
            return 0
        if not isinstance(self.random_state, (int, np.integer)):
            raise ValueError("random_state must be an int or None")
        return int(self.random_state)

    def fit(self, X, y) -> "CrossbarClassifier":
        X, y = check_X_y(X, y, dtype=float)
        self.classes_, labels = np.unique(y, return_inverse=True)
        if self.classes_.shape[0] < 2:
            raise ValueError("need at least two classes")
        self.n_features_in_ = X.shape[1]

        self.scaler_ = FeatureScaler.fit(X)
        X_enc = sensor_expand(self.scaler_.transform(X))
        Y_enc = encode_targets(labels, n_classes=self.classes_.shape[0])

        seed = self._seed()
        noise = NoiseSpec(device_variability=self.device_variability,
                          input_noise=self.input_noise,
                          update_noise=self.update_noise, seed=seed)
        config = TrainConfig(eta=self.eta, epochs=self.epochs,
                             sample_period=self.sample_period,
                             success_band=self.success_band, seed=seed,
                             init_weight=self.init_weight)
        self.neuron_params_ = NeuronParams(lam=self.lam,
                                           gain_error=self.gain_error)
        xbar_config = CrossbarConfig(
            m_inputs=self.n_features_in_ * N_SENSORS_PER_FEATURE,
            n_outputs=self.classes_.shape[0])
        self.xbar_ = CrossbarArray(xbar_config, self.device,
                                   init_weights=self.init_weight,
                                   perturbation=PerturbationModel(noise))
        self.ledger_ = run_training(self.xbar_, X_enc, Y_enc, config,
                                    self.neuron_params_, noise)
        return self

    def _encode(self, X) -> np.ndarray:
        check_is_fitted(self, "xbar_")
        X = check_array(X, dtype=float)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"expected {self.n_features_in_} features, got {X.shape[1]}")
        return sensor_expand(self.scaler_.transform(X))

    def decision_function(self, X) -> np.ndarray:
        """Analog node outputs in [-1, 1], one column per class."""
        z = self.xbar_.forward(self._encode(X))
        return np.asarray(activate(z, self.neuron_params_))

    def predict(self, X) -> np.ndarray:
        """Class of the most positive output node."""
        check_is_fitted(self, "xbar_")
        return self.classes_[decode_outputs(self.decision_function(X))]

    def success_rate(self, X, y) -> float:
        """Fraction meeting the hardware criterion: every node in band."""
        X_enc = self._encode(X)
        labels = np.searchsorted(self.classes_, np.asarray(y))
        if np.any(labels >= self.classes_.shape[0]) or \
                np.any(self.classes_[labels] != np.asarray(y)):
            raise ValueError("y contains labels unseen during fit")
        Y_enc = encode_targets(labels, n_classes=self.classes_.shape[0])
        return evaluate(self.xbar_, X_enc, Y_enc, self.neuron_params_,
                        self.success_band)
