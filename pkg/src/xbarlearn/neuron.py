"""Output neuron: shifted-sigmoid activation and its derivative.

The activation is the logistic curve rescaled to (-1, 1),

    y = 2 / (1 + exp(-lam * z)) - 1,

which is algebraically tanh(lam * z / 2).  The tanh form is used for
numerical stability at large |z|; tests pin the equivalence.  The
neuron circuit's current-to-z transimpedance is folded into the array's
normalization, so everything here is in algorithmic units.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

Number = Union[float, np.ndarray]


@dataclass(frozen=True)
class NeuronParams:
    """Activation gain and the comparator's multiplicative gain error.

    The default gain is the value tuned once for the reference task
    (together with the learning rate) and then frozen.
    """

    lam: float = 1.1
    gain_error: float = 0.0

    def __post_init__(self):
        if self.lam <= 0:
            raise ValueError("lam must be strictly positive")
        if not abs(self.gain_error) < 0.2:
            raise ValueError("|gain_error| must be below 0.2")


def activate(z: Number, p: NeuronParams = NeuronParams()) -> Number:
    """Neuron output for summed input ``z``; lies in [-1, 1].

    y = (1 + gain_error) * (2 / (1 + exp(-lam z)) - 1), clamped so a
    positive gain error cannot push the output past the rails.
    """
    y = (1.0 + p.gain_error) * np.tanh(0.5 * p.lam * z)
    return np.clip(y, -1.0, 1.0)


def activate_derivative(y: Number, p: NeuronParams = NeuronParams()) -> Number:
    """dy/dz expressed through the measured output ``y``.

    Equals (lam / 2) * (1 - y**2).  This is the form the feedback
    circuit can compute: it sees the neuron output, never z itself.
    """
    y = np.asarray(y)
    if np.any(np.abs(y) > 1.0 + 1e-12):
        raise ValueError("|y| must not exceed 1")
    return 0.5 * p.lam * (1.0 - y * y)
