"""On-chip SGD: feedback deltas, pulse conversion, training loop, scoring.

Per presented sample the loop runs one analog forward pass, measures the
node outputs, computes the per-synapse weight increments

    delta_w = eta * (Y_n - y_n) * (lam / 2) * (1 - y_n**2) * x_m

(the sign that descends the quadratic per-sample error), converts them
to programming operations for the array's device technology, and lets
volatile state decay over the sample period.  Accuracy bookkeeping uses
the conjunctive success band: a sample counts as correct only when every
output node lies within the band of its +/-1 target.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .crossbar import CrossbarArray
from .devices import MosfetSynapseParams, ProgramStats
from .neuron import NeuronParams, activate, activate_derivative
from .perturb import NoiseSpec, PerturbationModel

TARGET_SPAN = 2.0  # output nodes swing between -1 and +1


class ClampWarning(UserWarning):
    """A requested programming current hit the current-source compliance."""


@dataclass(frozen=True)
class TrainConfig:
    """Training-loop hyperparameters and bookkeeping switches.

    ``sample_period`` is the wall-clock time budgeted per presented
    sample; a device whose programming takes longer stretches the
    ledger entry for that sample.  ``trace_epochs`` selects epochs whose
    per-sample node outputs are recorded in full.
    """

    eta: float = 0.025
    epochs: int = 100
    sample_period: float = 1.0e-9
    success_band: float = 0.40
    seed: int = 7
    init_weight: float = 0.6
    shuffle_each_epoch: bool = False
    trace_epochs: Tuple[int, ...] = ()
    track_read_energy: bool = False

    def __post_init__(self):
        object.__setattr__(self, "trace_epochs", tuple(self.trace_epochs))
        if self.eta <= 0:
            raise ValueError("eta must be strictly positive")
        if not 0 < self.success_band < 1:
            raise ValueError("success_band must lie in (0, 1)")
        if self.sample_period <= 0:
            raise ValueError("sample_period must be strictly positive")
        if self.epochs < 0:
            raise ValueError("epochs must be nonnegative")
        if abs(self.init_weight) > 1:
            raise ValueError("init_weight must lie in [-1, 1]")


@dataclass
class EpochTrace:
    """Per-epoch ledger row (cumulative quantities are nondecreasing)."""

    epoch: int  # 1-based
    train_accuracy: float  # online accuracy over this epoch's updates
    cumulative_write_energy: float  # joules, write events only
    cumulative_time: float  # seconds
    epoch_write_energy: float
    epoch_reset_energy: float
    cumulative_reset_energy: float
    mean_loss: float
    n_clamped: int  # compliance-clamped pulses so far, cumulative
    n_resets: int  # reset events so far, cumulative
    node_records: Optional[np.ndarray] = None  # (samples, nodes, 2): y, Y


@dataclass
class RunLedger:
    """Everything one training run produced, traces plus totals."""

    epoch_traces: List[EpochTrace]
    final_train_accuracy: float
    final_test_accuracy: Optional[float]
    total_write_energy: float
    total_reset_energy: float
    total_read_energy: float
    total_time: float
    n_clamped_pulses: int
    n_reset_events: int

    def __iter__(self):
        return iter(self.epoch_traces)

    def __len__(self):
        return len(self.epoch_traces)

    @property
    def total_update_energy(self) -> float:
        """Write plus reset energy: the synapse programming total."""
        return self.total_write_energy + self.total_reset_energy


def delta_w(Y: float, y: float, x_m: float, eta: float = 0.025,
            lam: float = 1.1) -> float:
    """Weight increment for one synapse from one sample's feedback.

    Returns +eta*(lam/2)*(Y - y)*(1 - y**2)*x_m, applied as w <- w + delta;
    this is the sign that descends the per-sample quadratic error.  The
    bias row uses x_m = 1.
    """
    p = NeuronParams(lam=lam)
    return eta * (Y - y) * activate_derivative(y, p) * x_m


def _gate_pulses(deltas: np.ndarray, params: MosfetSynapseParams,
                 weight_scale: float) -> Tuple[np.ndarray, float, int]:
    """Convert weight deltas to gate-current pulses; clamp to compliance.

    Inverts Q = C V: the pulse current that moves the gate voltage by
    exactly delta * weight_scale / k in one pulse width.  Returns the
    (possibly clamped) currents, the width, and the clamp count.
    """
    width = params.pulse_width
    i_raw = np.asarray(deltas, dtype=float) * weight_scale / params.slope \
        * params.c_gate / width
    n_clamped = int(np.sum(np.abs(i_raw) > params.i_pulse_max))
    if n_clamped:
        i_raw = np.clip(i_raw, -params.i_pulse_max, params.i_pulse_max)
    return i_raw, width, n_clamped


def pulse_for_delta(delta, params: MosfetSynapseParams,
                    weight_scale: float):
    """Gate-current pulse realizing the weight change ``delta``.

    Magnitudes beyond the current-source compliance are clamped and a
    ClampWarning is issued (the feedback circuit asked for more than
    the pump can deliver; the realized update is smaller).
    """
    i_gate, width, n_clamped = _gate_pulses(delta, params, weight_scale)
    if n_clamped:
        warnings.warn(
            f"{n_clamped} pulse(s) clamped to compliance "
            f"{params.i_pulse_max:.3g} A", ClampWarning, stacklevel=2)
    if np.ndim(delta) == 0:
        return float(i_gate), width
    return i_gate, width


@dataclass
class SampleResult:
    """Outcome of presenting one training sample."""

    y: np.ndarray
    success: bool
    loss: float
    stats: ProgramStats
    n_clamped: int = 0
    read_energy: float = 0.0


def train_sample(xbar: CrossbarArray, x: np.ndarray, target: np.ndarray,
                 neuron_params: NeuronParams, config: TrainConfig,
                 perturb: PerturbationModel) -> SampleResult:
    """One SGD step: forward, feedback deltas, program, decay.

    The input perturbation is applied before the forward pass, so the
    same noisy voltages drive both the read and the delta computation,
    as they would on chip.  The bias line stays at exactly 1.
    """
    x_in = perturb.perturb_input(x)
    read_energy = 0.0
    if config.track_read_energy:
        z, ev = xbar.forward(x_in, with_read_event=True)
        read_energy = ev.energy
    else:
        z = xbar.forward(x_in)
    y = activate(z, neuron_params)

    band = config.success_band * TARGET_SPAN
    success = bool(np.all(np.abs(y - target) <= band))
    loss = 0.5 * float(np.sum((target - y) ** 2))

    err = (target - y) * activate_derivative(y, neuron_params)
    deltas = config.eta * np.outer(xbar.augment(x_in), err)
    deltas = perturb.perturb_update(deltas)

    if xbar.device.programming == "gate_current":
        i_gate, width, n_clamped = _gate_pulses(
            deltas, xbar.device.params, xbar.weight_scale)
        stats = xbar.apply_gate_pulses(i_gate, width)
    else:
        n_clamped = 0
        stats = xbar.program_deltas(deltas)

    # The sample occupies at least the sample period; slower programming
    # stretches it.  Volatile state leaks for the whole slot.
    elapsed = max(config.sample_period, stats.duration)
    xbar.elapse_idle(elapsed)
    stats.duration = elapsed
    return SampleResult(y, success, loss, stats, n_clamped, read_energy)


def evaluate(xbar: CrossbarArray, X: np.ndarray, Y: np.ndarray,
             neuron_params: NeuronParams = NeuronParams(),
             success_band: float = 0.40) -> float:
    """Fraction of samples with every node inside the success band."""
    if not 0 < success_band < 1:
        raise ValueError("success_band must lie in (0, 1)")
    y = activate(xbar.forward(np.atleast_2d(X)), neuron_params)
    band = success_band * TARGET_SPAN
    ok = np.all(np.abs(y - np.atleast_2d(Y)) <= band, axis=1)
    return float(np.mean(ok))


def run_training(xbar: CrossbarArray, X_train: np.ndarray,
                 Y_train: np.ndarray, config: TrainConfig,
                 neuron_params: NeuronParams = NeuronParams(),
                 noise: Optional[NoiseSpec] = None,
                 X_test: Optional[np.ndarray] = None,
                 Y_test: Optional[np.ndarray] = None) -> RunLedger:
    """Full on-chip training run; returns the ledger of epoch traces.

    Sample order is the (already shuffled) dataset order, identical in
    every epoch unless ``shuffle_each_epoch`` is set.  Train accuracy is
    scored online, on each sample's pre-update outputs, which is what
    the hardware can observe during learning.
    """
    perturb = PerturbationModel(noise or NoiseSpec(seed=config.seed))
    n_samples = X_train.shape[0]
    order_rng = np.random.default_rng(config.seed)

    traces: List[EpochTrace] = []
    cum_write = cum_reset = cum_read = 0.0
    cum_clamped = cum_resets = 0
    # Slot durations are summed with fsum so runs of identical periods
    # total exactly (n * period), without accumulation drift.
    slot_durations: List[float] = []

    for epoch in range(1, config.epochs + 1):
        order = (order_rng.permutation(n_samples)
                 if config.shuffle_each_epoch else np.arange(n_samples))
        n_success = 0
        epoch_write = epoch_reset = 0.0
        loss_sum = 0.0
        record = (np.empty((n_samples, Y_train.shape[1], 2))
                  if epoch in config.trace_epochs else None)

        for pos, idx in enumerate(order):
            result = train_sample(xbar, X_train[idx], Y_train[idx],
                                  neuron_params, config, perturb)
            n_success += result.success
            loss_sum += result.loss
            epoch_write += result.stats.write_energy
            epoch_reset += result.stats.reset_energy
            slot_durations.append(result.stats.duration)
            cum_read += result.read_energy
            cum_clamped += result.n_clamped
            cum_resets += result.stats.n_reset_events
            if record is not None:
                record[pos, :, 0] = result.y
                record[pos, :, 1] = Y_train[idx]

        cum_write += epoch_write
        cum_reset += epoch_reset
        traces.append(EpochTrace(
            epoch=epoch,
            train_accuracy=n_success / n_samples,
            cumulative_write_energy=cum_write,
            cumulative_time=math.fsum(slot_durations),
            epoch_write_energy=epoch_write,
            epoch_reset_energy=epoch_reset,
            cumulative_reset_energy=cum_reset,
            mean_loss=loss_sum / n_samples,
            n_clamped=cum_clamped,
            n_resets=cum_resets,
            node_records=record,
        ))

    final_train = (traces[-1].train_accuracy if traces else
                   evaluate(xbar, X_train, Y_train, neuron_params,
                            config.success_band))
    final_test = None
    if X_test is not None and Y_test is not None:
        final_test = evaluate(xbar, X_test, Y_test, neuron_params,
                              config.success_band)
    return RunLedger(
        epoch_traces=traces,
        final_train_accuracy=final_train,
        final_test_accuracy=final_test,
        total_write_energy=cum_write,
        total_reset_energy=cum_reset,
        total_read_energy=cum_read,
        total_time=math.fsum(slot_durations),
        n_clamped_pulses=cum_clamped,
        n_reset_events=cum_resets,
    )
