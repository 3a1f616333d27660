"""Crossbar array: analog vector-matrix multiplication over device states.

One array holds an (n_inputs + 1) x n_outputs grid of synapses; the
extra last row is the bias, driven by a constant full-scale input.
Inputs in [0, 1] scale the read voltage on each row wire; each column
wire sums the device currents, and a parallel reference path subtracts
the midscale current so columns carry signed signals.  The normalized
column signal

    z_j = sum_i x_i * (G_ij - g_ref) / weight_scale

is what the output neuron sees; the physical current is v_read_max
times the unnormalized sum, and the v_read_max factor cancels in z.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from .devices import (EnergyEvent, IdealSynapse, ProgramStats,
                      WeightOutOfRange, make_device)
from .perturb import PerturbationModel

_INPUT_TOL = 1e-9


class InputOutOfRange(ValueError):
    """Input component outside the [0, 1] read-voltage range."""


@dataclass(frozen=True)
class CrossbarConfig:
    """Array geometry and the read/reference electrical constants.

    ``g_ref`` and ``weight_scale`` default to the device's natural
    values (midscale reference, half-window scale, so weights span
    exactly [-1, 1]); explicit values are honored only for devices
    using the parallel-reference scheme.
    """

    m_inputs: int = 16
    n_outputs: int = 3
    g_ref: Optional[float] = None
    v_read_max: float = 0.1
    weight_scale: Optional[float] = None
    bias: bool = True
    read_pulse_width: float = 1.0e-9

    def __post_init__(self):
        if self.m_inputs < 1 or self.n_outputs < 1:
            raise ValueError("array must have at least one input and output")
        if not 0 < self.v_read_max <= 0.1:
            raise ValueError(
                "v_read_max must be in (0, 0.1] V (linear drain regime)")
        if self.read_pulse_width <= 0:
            raise ValueError("read_pulse_width must be positive")
        if self.weight_scale is not None and self.weight_scale <= 0:
            raise ValueError("weight_scale must be strictly positive")


class CrossbarArray:
    """Device-state container plus the analog read and program paths.

    Parameters
    ----------
    config : CrossbarConfig or None for the 16x3 default geometry.
    device : device model instance or technology name; default ideal.
    init_weights : scalar or (rows, cols) array of initial weights.
    perturbation : PerturbationModel supplying static device mismatch.
    """

    def __init__(self, config: Optional[CrossbarConfig] = None, device=None,
                 init_weights: Union[float, np.ndarray] = 0.0,
                 perturbation: Optional[PerturbationModel] = None):
        self.config = config or CrossbarConfig()
        if device is None:
            device = IdealSynapse()
        elif isinstance(device, str):
            device = make_device(device)
        self.device = device

        cfg = self.config
        self.n_inputs = cfg.m_inputs
        self.n_outputs = cfg.n_outputs
        self.bias = cfg.bias
        self.n_rows = self.n_inputs + (1 if self.bias else 0)
        self.v_read_max = cfg.v_read_max
        self.read_pulse_width = cfg.read_pulse_width

        if device.reference_scheme != "parallel_resistor" and (
                cfg.g_ref is not None or cfg.weight_scale is not None):
            raise ValueError(
                f"{device.kind} fixes its own reference; g_ref and "
                "weight_scale cannot be overridden")
        self.g_ref = (device.natural_g_ref if cfg.g_ref is None
                      else float(cfg.g_ref))
        self.weight_scale = (device.natural_weight_scale
                             if cfg.weight_scale is None
                             else float(cfg.weight_scale))
        if device.reference_scheme == "parallel_resistor":
            p = device.params
            if not p.g_min <= self.g_ref <= p.g_max:
                raise ValueError("g_ref must lie within [g_min, g_max]")

        self._perturbation = perturbation
        shape = (self.n_rows, self.n_outputs)
        if perturbation is not None:
            self._factors = perturbation.draw_device_factors(shape)
        else:
            self._factors = np.ones(shape)
        self.set_weights(init_weights)

    # -- state ----------------------------------------------------------

    def set_weights(self, weights: Union[float, np.ndarray]) -> None:
        """(Re)program the whole array to nominal weights, ideally.

        Off-line initialization path: bypasses pulse granularity and
        costs no ledger energy.  Static mismatch factors are preserved.
        """
        w = np.broadcast_to(np.asarray(weights, dtype=float),
                            (self.n_rows, self.n_outputs)).copy()
        if self.device.kind == "mosfet":
            self.state = self.device.init_state(
                w, self._factors, g_ref=self.g_ref,
                weight_scale=self.weight_scale)
        else:
            self.state = self.device.init_state(w, self._factors)

    def get_weights(self) -> np.ndarray:
        """Nominal stored weights (device mismatch factored out)."""
        return np.asarray(
            self.device.nominal_offset(self.state, self.g_ref),
            dtype=float) / self.weight_scale

    def effective_weights(self) -> np.ndarray:
        """Weights as the read path sees them, mismatch included."""
        return np.asarray(
            self.device.signal_offset(self.state, self.g_ref),
            dtype=float) / self.weight_scale

    # -- read path --------------------------------------------------------

    def augment(self, x: np.ndarray) -> np.ndarray:
        """Append the constant bias input to one sample or a batch."""
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.n_inputs:
            raise ValueError(
                f"expected {self.n_inputs} inputs, got {x.shape[-1]}")
        if not self.bias:
            return x
        pad = np.ones(x.shape[:-1] + (1,))
        return np.concatenate([x, pad], axis=-1)

    def forward(self, x: np.ndarray, with_read_event: bool = False):
        """Normalized column signals for inputs ``x`` in [0, 1].

        ``x`` is one sample (n_inputs,) or a batch (n, n_inputs); the
        bias line is appended internally.  With ``with_read_event`` the
        joule heating of the read is aggregated into one event.
        """
        x = np.asarray(x, dtype=float)
        if np.any(x < -_INPUT_TOL) or np.any(x > 1.0 + _INPUT_TOL):
            raise InputOutOfRange("inputs must lie in [0, 1]")
        x_full = self.augment(x)
        squeeze = x_full.ndim == 1
        x_full = np.atleast_2d(x_full)

        device = self.device
        if getattr(device.params, "vds_gain", 0.0) != 0.0:
            # conductance depends on the per-row read voltage
            v_ds = x_full[:, :, None] * self.v_read_max
            offsets = device.signal_offset(self.state, self.g_ref, v_ds)
            z = np.einsum("ni,nio->no", x_full, offsets) / self.weight_scale
        else:
            offsets = device.signal_offset(self.state, self.g_ref)
            z = x_full @ offsets / self.weight_scale

        if squeeze:
            z = z[0]
        if not with_read_event:
            return z
        g = device.read_conductance(self.state)
        v_sq = np.sum((x_full * self.v_read_max) ** 2, axis=0)
        energy = float(v_sq @ np.sum(g, axis=1)) if np.ndim(g) == 2 else float(
            np.sum(v_sq) * g)
        event = EnergyEvent("read", energy * self.read_pulse_width,
                            self.read_pulse_width)
        return z, event

    # -- programming ------------------------------------------------------

    def apply_gate_pulses(self, i_gate: np.ndarray,
                          width: float) -> ProgramStats:
        """Drive the gate-current programming pulses (gate-charge devices)."""
        if self.device.programming != "gate_current":
            raise TypeError(
                f"{self.device.kind} is not programmed by gate current")
        self.state, stats = self.device.apply_gate_pulses(
            self.state, i_gate, width)
        return stats

    def program_deltas(self, deltas: np.ndarray) -> ProgramStats:
        """Shift stored weights by ``deltas`` (directly-programmed devices)."""
        if self.device.programming != "direct":
            raise TypeError(
                f"{self.device.kind} is not programmed by weight deltas")
        deltas = np.broadcast_to(np.asarray(deltas, dtype=float),
                                 (self.n_rows, self.n_outputs))
        self.state, stats = self.device.program(self.state, deltas)
        return stats

    def elapse_idle(self, duration: float) -> None:
        """Let volatile device state leak for ``duration`` seconds."""
        if duration < 0:
            raise ValueError("duration must be nonnegative")
        if duration > 0 and self.device.volatile:
            self.state = self.device.decay(self.state, duration)


def save_weights_csv(xbar: CrossbarArray, path, comment: str = "") -> None:
    """Export nominal weights: row = input index (bias last), col = output."""
    w = xbar.get_weights()
    with open(path, "w", newline="") as fh:
        if comment:
            fh.write(f"# {comment}\n")
        writer = csv.writer(fh)
        writer.writerow([f"output_{j}" for j in range(w.shape[1])])
        for row in w:
            writer.writerow([repr(float(v)) for v in row])


def load_weights_csv(path) -> np.ndarray:
    """Read a weight matrix written by :func:`save_weights_csv`."""
    rows = []
    with open(path, newline="") as fh:
        for line in fh:
            if line.startswith("#") or not line.strip():
                continue
            rows.append(line.strip().split(","))
    if not rows:
        raise ValueError("empty weight file")
    data = rows[1:]  # first non-comment line is the header
    return np.array([[float(v) for v in row] for row in data])
