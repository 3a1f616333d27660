"""Noise and variability injection.

Three independent perturbation channels, each with its own seeded
substream so enabling one never shifts the draws of another:

* device variability -- a static multiplicative factor per device,
  drawn once when the array is built;
* input noise -- fresh multiplicative perturbation of the input
  voltages on every presented sample;
* update noise -- fresh multiplicative perturbation of every weight
  update as it is applied.

Amplitudes are fractions (0.05 means +/-5%).  The default distribution
is uniform on [1 - a, 1 + a]; a gaussian alternative with sigma = a
is available for sensitivity studies.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

_MAX_AMPLITUDE = 0.10

_STREAMS = ("variability", "input", "update")


@dataclass(frozen=True)
class NoiseSpec:
    """Perturbation amplitudes and the seed of the noise generators."""

    device_variability: float = 0.0
    input_noise: float = 0.0
    update_noise: float = 0.0
    seed: Optional[int] = None
    distribution: str = "uniform"

    def __post_init__(self):
        for name in ("device_variability", "input_noise", "update_noise"):
            value = getattr(self, name)
            if not 0.0 <= value <= _MAX_AMPLITUDE:
                raise ValueError(
                    f"{name} must lie in [0, {_MAX_AMPLITUDE}], got {value}")
        if self.distribution not in ("uniform", "gaussian"):
            raise ValueError("distribution must be 'uniform' or 'gaussian'")

    @property
    def any_enabled(self) -> bool:
        return (self.device_variability > 0 or self.input_noise > 0
                or self.update_noise > 0)


class PerturbationModel:
    """Seeded sampler for the three noise channels of a run."""

    def __init__(self, spec: Optional[NoiseSpec] = None):
        self.spec = spec or NoiseSpec()
        children = np.random.SeedSequence(self.spec.seed).spawn(len(_STREAMS))
        self._rngs = {name: np.random.default_rng(child)
                      for name, child in zip(_STREAMS, children)}

    def _factors(self, stream: str, amplitude: float, shape):
        if amplitude == 0.0:
            return np.ones(shape)
        rng = self._rngs[stream]
        if self.spec.distribution == "uniform":
            return rng.uniform(1.0 - amplitude, 1.0 + amplitude, shape)
        return 1.0 + amplitude * rng.standard_normal(shape)

    def draw_device_factors(self, shape):
        """Static mismatch factors; call once per array construction."""
        return self._factors("variability", self.spec.device_variability, shape)

    def perturb_input(self, x: np.ndarray) -> np.ndarray:
        """Fresh multiplicative noise on one sample's input vector.

        Clamped back to [0, 1]: the drivers cannot produce voltages
        outside the read range.
        """
        x = np.asarray(x, dtype=float)
        if self.spec.input_noise == 0.0:
            return x
        return np.clip(x * self._factors("input", self.spec.input_noise,
                                         x.shape), 0.0, 1.0)

    def perturb_update(self, deltas: np.ndarray) -> np.ndarray:
        """Fresh elementwise noise on one sample's weight updates."""
        deltas = np.asarray(deltas, dtype=float)
        return deltas * self._factors("update", self.spec.update_noise,
                                      deltas.shape)
