"""Behavioral synaptic device models.

Three device technologies store one analog weight each, behind a common
interface used by the crossbar array:

* ``MosfetSynapse`` -- a conventional transistor whose drain-source
  conductance is set by the charge held on its gate oxide.  Programming
  is a gate current pulse; the stored voltage leaks away with an RC time
  constant, so the weight is volatile.
* ``DomainWallSynapse`` -- an idealized nonvolatile device with a linear,
  bipolar conductance response to a position-like internal coordinate.
* ``RramPairSynapse`` -- two unipolar resistive cells per synapse wired
  differentially.  Set pulses only increase conductance, with a
  saturating increment, so occasional full resets are required.
* ``IdealSynapse`` -- a floating-point weight holder used as the
  software baseline (no energy, no leak, no compliance limit).

All state containers hold either python floats or numpy arrays; the
formula functions broadcast over whichever they are given.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional, Tuple, Union

import numpy as np

Number = Union[float, np.ndarray]

READ = "read"
WRITE = "write"
RESET = "reset"


class OverdrivePulse(ValueError):
    """Requested gate current exceeds what the current source can deliver."""


class WeightOutOfRange(ValueError):
    """Requested weight is outside the representable conductance window."""


@dataclass(frozen=True)
class EnergyEvent:
    """One energy-consuming device operation, for the run ledger."""

    kind: str  # READ, WRITE or RESET
    energy: float  # joules
    duration: float  # seconds
    device_index: Optional[Tuple[int, int]] = None

    def __post_init__(self):
        if self.kind not in (READ, WRITE, RESET):
            raise ValueError(f"unknown event kind {self.kind!r}")
        if self.energy < 0 or self.duration < 0:
            raise ValueError("energy and duration must be nonnegative")


def synapse_read_energy(g: Number, v_ds: Number, width: float,
                        device_index=None) -> EnergyEvent:
    """Joule heating of a conductance ``g`` read at ``v_ds`` for ``width`` s."""
    if width <= 0:
        raise ValueError("read width must be positive")
    energy = float(np.sum(g * v_ds * v_ds)) * width
    return EnergyEvent(READ, energy, width, device_index)


# ---------------------------------------------------------------------------
# transistor synapse


@dataclass(frozen=True)
class MosfetSynapseParams:
    """Constants of the capacitive-gate transistor synapse.

    The drain-source conductance is modeled as an affine function of the
    gate voltage over the operating window, with a residual drain-voltage
    dependence available through ``vds_gain`` (off by default).  The gate
    oxide is a capacitor: a current pulse of charge Q shifts the gate
    voltage by Q / c_gate, and the stored charge leaks toward the floor
    with time constant ``tau_retention``.
    """

    v_gs_min: float = 0.6  # volts
    v_gs_max: float = 1.6  # volts
    g_min: float = 1.0e-3  # siemens
    g_max: float = 6.0e-3  # siemens
    c_gate: float = 1.0e-15  # farads
    pulse_width: float = 1.0e-9  # seconds
    i_pulse_max: float = 132e-9  # amperes, current-source compliance
    tau_retention: float = 1.0e-3  # seconds
    vds_gain: float = 0.0  # 1/volts, second-order G(V_DS) correction

    def __post_init__(self):
        if not self.v_gs_min < self.v_gs_max:
            raise ValueError("require v_gs_min < v_gs_max")
        if not 0 < self.g_min < self.g_max:
            raise ValueError("require 0 < g_min < g_max")
        for name in ("c_gate", "pulse_width", "i_pulse_max", "tau_retention"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be strictly positive")

    @property
    def slope(self) -> float:
        """Conductance gained per volt of gate overdrive (siemens/volt)."""
        return (self.g_max - self.g_min) / (self.v_gs_max - self.v_gs_min)


@dataclass
class MosfetState:
    """Stored gate voltage plus the static per-device mismatch factor."""

    v_gs: Number
    variability_factor: Number = 1.0


def mosfet_conductance(state: MosfetState, params: MosfetSynapseParams,
                       v_ds: Number = 0.0) -> Number:
    """Drain-source conductance for the stored gate voltage.

    Affine and monotone in v_gs across the operating window; the
    per-device variability factor scales the whole curve.  ``v_ds``
    only matters when the second-order correction gain is nonzero.
    """
    g = params.g_min + params.slope * (state.v_gs - params.v_gs_min)
    if params.vds_gain != 0.0:
        g = g * (1.0 + params.vds_gain * v_ds)
    return state.variability_factor * g


def mosfet_apply_pulse(state: MosfetState, i_gate: Number, width: float,
                       params: MosfetSynapseParams,
                       device_index=None) -> Tuple[MosfetState, EnergyEvent]:
    """Charge or discharge the gate with a current pulse.

    The gate voltage moves by i * width / c_gate and is clamped to the
    operating window.  Write energy is approximated as |i| times the
    mean of the pre/post gate voltage times the pulse width.
    """
    if width <= 0:
        raise ValueError("pulse width must be positive")
    if np.any(np.abs(i_gate) > params.i_pulse_max * (1 + 1e-12)):
        raise OverdrivePulse(
            f"|i_gate| exceeds compliance {params.i_pulse_max:.3g} A")
    v_new = np.clip(state.v_gs + i_gate * width / params.c_gate,
                    params.v_gs_min, params.v_gs_max)
    energy = float(np.sum(np.abs(i_gate) * 0.5 * (state.v_gs + v_new))) * width
    return (MosfetState(v_new, state.variability_factor),
            EnergyEvent(WRITE, energy, width, device_index))


def mosfet_decay(state: MosfetState, elapsed: float,
                 params: MosfetSynapseParams) -> MosfetState:
    """Leak the gate charge toward the zero-charge floor.

    Single-pole RC decay of the overdrive (v_gs - v_gs_min) with time
    constant tau_retention.
    """
    if elapsed < 0:
        raise ValueError("elapsed time must be nonnegative")
    if elapsed == 0:
        return state
    factor = np.exp(-elapsed / params.tau_retention)
    v_new = params.v_gs_min + (state.v_gs - params.v_gs_min) * factor
    return MosfetState(v_new, state.variability_factor)


# ---------------------------------------------------------------------------
# domain-wall synapse


@dataclass(frozen=True)
class DomainWallParams:
    """Idealized linear bipolar nonvolatile synapse.

    The internal coordinate ``position`` in [0, 1] maps linearly to the
    conductance window; updates move it in either direction.  The energy
    constant is a calibration knob: a full sweep of the coordinate costs
    ``energy_per_full_sweep`` joules and any update takes ``update_time``.
    """

    g_min: float = 1.0e-3  # siemens
    g_max: float = 6.0e-3  # siemens
    update_time: float = 3.0e-9  # seconds
    energy_per_full_sweep: float = 2.7e-17  # joules, calibration constant

    def __post_init__(self):
        if not 0 < self.g_min < self.g_max:
            raise ValueError("require 0 < g_min < g_max")
        if self.update_time <= 0 or self.energy_per_full_sweep <= 0:
            raise ValueError("timing and energy constants must be positive")


@dataclass
class DomainWallState:
    position: Number  # in [0, 1]
    variability_factor: Number = 1.0


def dw_conductance(state: DomainWallState, params: DomainWallParams) -> Number:
    return state.variability_factor * (
        params.g_min + state.position * (params.g_max - params.g_min))


def dw_program(state: DomainWallState, delta_weight: Number,
               params: DomainWallParams,
               device_index=None) -> Tuple[DomainWallState, EnergyEvent]:
    """Move the coordinate by half the weight delta (weight spans [-1, 1]).

    Energy is proportional to the realized motion; duration is the fixed
    update time regardless of magnitude.
    """
    if np.any(np.abs(delta_weight) > 2.0 + 1e-12):
        raise WeightOutOfRange("|delta_weight| exceeds the full weight range")
    p_new = np.clip(state.position + np.asarray(delta_weight) / 2.0, 0.0, 1.0)
    moved = float(np.sum(np.abs(p_new - state.position)))
    energy = params.energy_per_full_sweep * moved
    return (DomainWallState(p_new, state.variability_factor),
            EnergyEvent(WRITE, energy, params.update_time, device_index))


# ---------------------------------------------------------------------------
# RRAM differential pair


@dataclass(frozen=True)
class RramParams:
    """Differential pair of unipolar resistive cells.

    Set pulses only increase conductance; the per-pulse increment decays
    as (1 - s)**gamma with the normalized conductance s, so a cell
    saturates and must eventually be reset to g_min with a long,
    expensive reset pulse.  Energy constants are calibrated so a full
    training run lands at microjoule order.
    """

    g_min: float = 1.0e-3  # siemens
    g_max: float = 6.0e-3  # siemens
    set_pulse_width: float = 200e-9  # seconds
    reset_pulse_width: float = 6.0e-6  # seconds
    nonlinearity_gamma: float = 2.0
    delta_g_per_pulse_at_gmin: float = 1.0e-6  # siemens, fresh-cell increment
    e_set_pulse: float = 1.0e-12  # joules
    e_reset_pulse: float = 1.0e-10  # joules
    saturation_floor: float = 0.01  # of the fresh increment; below -> reset

    def __post_init__(self):
        if not 0 < self.g_min < self.g_max:
            raise ValueError("require 0 < g_min < g_max")
        if self.delta_g_per_pulse_at_gmin <= 0:
            raise ValueError("delta_g_per_pulse_at_gmin must be positive")
        if not 0 < self.saturation_floor < 1:
            raise ValueError("saturation_floor must be in (0, 1)")
        for name in ("set_pulse_width", "reset_pulse_width",
                     "e_set_pulse", "e_reset_pulse"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be strictly positive")

    @property
    def g_range(self) -> float:
        return self.g_max - self.g_min


@dataclass
class RramPairState:
    g_plus: Number
    g_minus: Number
    variability_plus: Number = 1.0
    variability_minus: Number = 1.0


def rram_set_increment(g: Number, params: RramParams) -> Number:
    """Conductance gained by one set pulse at the current level ``g``."""
    s = (np.asarray(g) - params.g_min) / params.g_range
    return params.delta_g_per_pulse_at_gmin * np.clip(1.0 - s, 0.0, None) \
        ** params.nonlinearity_gamma


_LADDER_CACHE: dict = {}


def rram_pulse_ladder(params: RramParams) -> Tuple[np.ndarray, np.ndarray, float]:
    """Conductance staircase a cell climbs from g_min, one set pulse a rung.

    The increment law depends only on the present conductance, so every
    cell walks the same precomputed ladder; programming reduces to
    moving an index along it.  Returns (rungs, midpoints between
    consecutive rungs, terminal increment).  The ladder ends where the
    increment falls under the saturation floor.
    """
    cached = _LADDER_CACHE.get(params)
    if cached is not None:
        return cached
    floor = params.saturation_floor * params.delta_g_per_pulse_at_gmin
    rungs = [params.g_min]
    while True:
        inc = float(rram_set_increment(rungs[-1], params))
        if inc < floor or len(rungs) > 10_000_000:
            break
        rungs.append(min(rungs[-1] + inc, params.g_max))
    ladder = np.array(rungs)
    mid = 0.5 * (ladder[:-1] + ladder[1:])
    result = (ladder, mid, inc)
    _LADDER_CACHE[params] = result
    return result


def _ladder_index(ladder: np.ndarray, g) -> np.ndarray:
    """Rung index of conductances that lie exactly on the ladder."""
    idx = np.searchsorted(ladder, np.asarray(g))
    if np.any(np.asarray(ladder[np.minimum(idx, ladder.size - 1)]) != g):
        raise ValueError("conductance off the pulse ladder; "
                         "state was not produced by ladder programming")
    return idx


def _pulses_toward(ladder: np.ndarray, mid: np.ndarray, inc_terminal: float,
                   k, needed_g):
    """Round-to-nearest pulse count from rung ``k`` toward ``k``'s g + demand.

    One more pulse is fired while the remaining shortfall exceeds half
    the next increment.  Returns (new rung index, saturated flag);
    saturated means the ladder ended with demand still outstanding.
    """
    k = np.asarray(k)
    target = ladder[k] + np.asarray(needed_g)
    j = np.maximum(np.searchsorted(mid, target), k)
    at_end = j >= mid.size  # parked on the terminal rung
    j = np.minimum(j, ladder.size - 1)
    saturated = at_end & ((target - ladder[j]) > 0.5 * inc_terminal)
    return j, saturated


def rram_pair_weight(state: RramPairState, params: RramParams) -> Number:
    """Effective weight of the pair, in [-1, 1] for nominal cells."""
    return (state.variability_plus * state.g_plus
            - state.variability_minus * state.g_minus) / params.g_range


def rram_program(state: RramPairState, delta_weight: float,
                 params: RramParams,
                 device_index=None) -> Tuple[RramPairState, list]:
    """Shift the pair's effective weight by ``delta_weight``.

    Positive deltas apply set pulses to the plus cell, negative deltas
    to the minus cell, rounding the demand to the nearest whole pulse.
    When the targeted cell is too saturated to realize the increment,
    both cells are reset to g_min (two reset events) and the pair is
    reprogrammed from scratch toward the previous nominal weight plus
    the delta (best effort; no second reset).
    """
    ladder, mid, inc_term = rram_pulse_ladder(params)
    events: list = []
    if delta_weight == 0.0:
        return state, events
    w_nominal = (state.g_plus - state.g_minus) / params.g_range
    target_w = float(np.clip(w_nominal + delta_weight, -1.0, 1.0))
    needed = (target_w - w_nominal) * params.g_range
    if needed == 0.0:
        return state, events

    k_plus = int(_ladder_index(ladder, state.g_plus))
    k_minus = int(_ladder_index(ladder, state.g_minus))

    def pulse(k: int, demand: float) -> Tuple[int, bool]:
        j, saturated = _pulses_toward(ladder, mid, inc_term, k, demand)
        for _ in range(int(j) - k):
            events.append(EnergyEvent(WRITE, params.e_set_pulse,
                                      params.set_pulse_width, device_index))
        return int(j), bool(saturated)

    if needed > 0:
        k_plus, saturated = pulse(k_plus, needed)
    else:
        k_minus, saturated = pulse(k_minus, -needed)

    if saturated:
        k_plus = k_minus = 0
        for _ in range(2):
            events.append(EnergyEvent(RESET, params.e_reset_pulse,
                                      params.reset_pulse_width, device_index))
        if target_w > 0:
            k_plus, _ = pulse(0, target_w * params.g_range)
        elif target_w < 0:
            k_minus, _ = pulse(0, -target_w * params.g_range)

    new_state = RramPairState(float(ladder[k_plus]), float(ladder[k_minus]),
                              state.variability_plus, state.variability_minus)
    return new_state, events


# ---------------------------------------------------------------------------
# array-level device models (used by the crossbar)
#
# Each model wraps one parameter set and operates on whole state arrays.
# ``reference_scheme`` tells the crossbar how negative weights are formed:
# gate devices rely on the array's parallel reference conductance, the
# RRAM pair is differential by construction.


@dataclass
class ProgramStats:
    """Aggregate outcome of programming one sample's updates."""

    write_energy: float = 0.0  # joules, set/write pulses
    reset_energy: float = 0.0  # joules, reset pulses
    duration: float = 0.0  # seconds, parallel across synapses
    n_reset_events: int = 0


class MosfetSynapse:
    """Array model of the capacitive-gate transistor synapse."""

    kind = "mosfet"
    programming = "gate_current"
    volatile = True
    reference_scheme = "parallel_resistor"

    def __init__(self, params: Optional[MosfetSynapseParams] = None):
        self.params = params or MosfetSynapseParams()

    @property
    def natural_g_ref(self) -> float:
        return 0.5 * (self.params.g_min + self.params.g_max)

    @property
    def natural_weight_scale(self) -> float:
        return 0.5 * (self.params.g_max - self.params.g_min)

    def init_state(self, weights, factors=1.0, g_ref=None,
                   weight_scale=None) -> MosfetState:
        p = self.params
        g_ref = self.natural_g_ref if g_ref is None else g_ref
        scale = self.natural_weight_scale if weight_scale is None else weight_scale
        g_target = g_ref + np.asarray(weights, dtype=float) * scale
        if np.any(g_target < p.g_min - 1e-15) or np.any(g_target > p.g_max + 1e-15):
            raise WeightOutOfRange("weights map outside the conductance window")
        v_gs = p.v_gs_min + (g_target - p.g_min) / p.slope
        return MosfetState(v_gs, np.asarray(factors, dtype=float))

    def signal_offset(self, state: MosfetState, g_ref: float,
                      v_ds: Number = 0.0) -> Number:
        return mosfet_conductance(state, self.params, v_ds) - g_ref

    def nominal_offset(self, state: MosfetState, g_ref: float) -> Number:
        return mosfet_conductance(
            MosfetState(state.v_gs, 1.0), self.params) - g_ref

    def read_conductance(self, state: MosfetState) -> Number:
        return mosfet_conductance(state, self.params)

    def apply_gate_pulses(self, state: MosfetState, i_gate: Number,
                          width: float) -> Tuple[MosfetState, ProgramStats]:
        state, event = mosfet_apply_pulse(state, i_gate, width, self.params)
        return state, ProgramStats(write_energy=event.energy, duration=width)

    def decay(self, state: MosfetState, elapsed: float) -> MosfetState:
        return mosfet_decay(state, elapsed, self.params)


class DomainWallSynapse:
    """Array model of the linear bipolar nonvolatile synapse."""

    kind = "domain_wall"
    programming = "direct"
    volatile = False
    reference_scheme = "parallel_resistor"

    def __init__(self, params: Optional[DomainWallParams] = None):
        self.params = params or DomainWallParams()

    @property
    def natural_g_ref(self) -> float:
        return 0.5 * (self.params.g_min + self.params.g_max)

    @property
    def natural_weight_scale(self) -> float:
        return 0.5 * (self.params.g_max - self.params.g_min)

    def init_state(self, weights, factors=1.0) -> DomainWallState:
        w = np.asarray(weights, dtype=float)
        if np.any(np.abs(w) > 1.0 + 1e-12):
            raise WeightOutOfRange("weights must lie in [-1, 1]")
        return DomainWallState((w + 1.0) / 2.0, np.asarray(factors, dtype=float))

    def signal_offset(self, state: DomainWallState, g_ref: float,
                      v_ds: Number = 0.0) -> Number:
        return dw_conductance(state, self.params) - g_ref

    def nominal_offset(self, state: DomainWallState, g_ref: float) -> Number:
        return dw_conductance(
            DomainWallState(state.position, 1.0), self.params) - g_ref

    def read_conductance(self, state: DomainWallState) -> Number:
        return dw_conductance(state, self.params)

    def program(self, state: DomainWallState,
                deltas: Number) -> Tuple[DomainWallState, ProgramStats]:
        state, event = dw_program(state, deltas, self.params)
        return state, ProgramStats(write_energy=event.energy,
                                   duration=self.params.update_time)

    def decay(self, state: DomainWallState, elapsed: float) -> DomainWallState:
        return state


class RramPairSynapse:
    """Array model of the differential unipolar RRAM synapse."""

    kind = "rram"
    programming = "direct"
    volatile = False
    reference_scheme = "differential_pair"

    def __init__(self, params: Optional[RramParams] = None):
        self.params = params or RramParams()

    @property
    def natural_g_ref(self) -> float:
        return 0.0

    @property
    def natural_weight_scale(self) -> float:
        return self.params.g_range

    def init_state(self, weights, factors=1.0) -> RramPairState:
        """Program fresh (reset) cells toward the requested weights.

        Both cells start at g_min; the signed weight goes on one cell of
        the pair via whole set pulses, so initial conductances land on
        the pulse ladder (exact weights are not representable).
        """
        p = self.params
        w = np.asarray(weights, dtype=float)
        if np.any(np.abs(w) > 1.0 + 1e-12):
            raise WeightOutOfRange("weights must lie in [-1, 1]")
        ladder, mid, inc_term = rram_pulse_ladder(p)
        zeros = np.zeros_like(w, dtype=int)
        k_plus, _ = _pulses_toward(ladder, mid, inc_term, zeros,
                                   np.clip(w, 0.0, None) * p.g_range)
        k_minus, _ = _pulses_toward(ladder, mid, inc_term, zeros,
                                    np.clip(-w, 0.0, None) * p.g_range)
        f = np.broadcast_to(np.asarray(factors, dtype=float), w.shape).copy() \
            if np.ndim(w) else np.asarray(factors, dtype=float)
        return RramPairState(ladder[k_plus], ladder[k_minus],
                             f, f.copy() if np.ndim(w) else f)

    def signal_offset(self, state: RramPairState, g_ref: float,
                      v_ds: Number = 0.0) -> Number:
        return (state.variability_plus * state.g_plus
                - state.variability_minus * state.g_minus)

    def nominal_offset(self, state: RramPairState, g_ref: float) -> Number:
        return np.asarray(state.g_plus) - np.asarray(state.g_minus)

    def read_conductance(self, state: RramPairState) -> Number:
        # both cells of the pair see the read voltage
        return (state.variability_plus * state.g_plus
                + state.variability_minus * state.g_minus)

    def program(self, state: RramPairState,
                deltas: Number) -> Tuple[RramPairState, ProgramStats]:
        """Vectorized counterpart of :func:`rram_program`.

        Same per-pair pulse/reset semantics on every synapse at once;
        pulse counts come from the shared conductance ladder.  Duration
        is the longest per-synapse pulse sequence (synapses update in
        parallel, pulses within one synapse are sequential).
        """
        p = self.params
        deltas = np.asarray(deltas, dtype=float)
        if deltas.ndim == 0:
            new_state, events = rram_program(state, float(deltas), p)
            return new_state, _stats_from_events(events)

        ladder, mid, inc_term = rram_pulse_ladder(p)
        k_plus = _ladder_index(ladder, state.g_plus)
        k_minus = _ladder_index(ladder, state.g_minus)

        w_nominal = (ladder[k_plus] - ladder[k_minus]) / p.g_range
        target = np.clip(w_nominal + deltas, -1.0, 1.0)
        needed_g = (target - w_nominal) * p.g_range

        j_plus, sat_p = _pulses_toward(ladder, mid, inc_term, k_plus,
                                       np.clip(needed_g, 0.0, None))
        j_minus, sat_m = _pulses_toward(ladder, mid, inc_term, k_minus,
                                        np.clip(-needed_g, 0.0, None))
        saturated = (sat_p & (needed_g > 0)) | (sat_m & (needed_g < 0))
        n_set = (j_plus - k_plus) + (j_minus - k_minus)
        time = n_set * p.set_pulse_width

        stats = ProgramStats()
        if saturated.any():
            zeros = np.zeros_like(j_plus)
            j_plus = np.where(saturated, zeros, j_plus)
            j_minus = np.where(saturated, zeros, j_minus)
            rb_plus, _ = _pulses_toward(
                ladder, mid, inc_term, zeros,
                np.where(saturated, np.clip(target, 0.0, None), 0.0)
                * p.g_range)
            rb_minus, _ = _pulses_toward(
                ladder, mid, inc_term, zeros,
                np.where(saturated, np.clip(-target, 0.0, None), 0.0)
                * p.g_range)
            j_plus = np.where(saturated, rb_plus, j_plus)
            j_minus = np.where(saturated, rb_minus, j_minus)
            n_rebuild = np.where(saturated, rb_plus + rb_minus, 0)
            n_set = n_set + n_rebuild
            n_sat = int(saturated.sum())
            stats.n_reset_events = 2 * n_sat
            stats.reset_energy = 2.0 * p.e_reset_pulse * n_sat
            time = time + np.where(
                saturated,
                2.0 * p.reset_pulse_width + n_rebuild * p.set_pulse_width,
                0.0)

        stats.write_energy = float(n_set.sum()) * p.e_set_pulse
        stats.duration = float(time.max()) if time.size else 0.0
        return (RramPairState(ladder[j_plus], ladder[j_minus],
                              state.variability_plus,
                              state.variability_minus), stats)

    def decay(self, state: RramPairState, elapsed: float) -> RramPairState:
        return state


class IdealSynapse:
    """Floating-point weight holder: the software-algorithm baseline."""

    kind = "ideal"
    programming = "direct"
    volatile = False
    reference_scheme = "none"

    def __init__(self, params=None, update_time: float = 1.0e-9):
        self.params = None
        self.update_time = update_time

    @property
    def natural_g_ref(self) -> float:
        return 0.0

    @property
    def natural_weight_scale(self) -> float:
        return 1.0

    def init_state(self, weights, factors=1.0):
        w = np.asarray(weights, dtype=float)
        if np.any(np.abs(w) > 1.0 + 1e-12):
            raise WeightOutOfRange("weights must lie in [-1, 1]")
        return IdealState(w.copy() if w.ndim else float(w),
                          np.asarray(factors, dtype=float))

    def signal_offset(self, state, g_ref: float, v_ds: Number = 0.0) -> Number:
        return state.variability_factor * state.weight

    def nominal_offset(self, state, g_ref: float) -> Number:
        return np.asarray(state.weight, dtype=float)

    def read_conductance(self, state) -> Number:
        return np.zeros_like(np.asarray(state.weight, dtype=float))

    def program(self, state, deltas: Number):
        w_new = np.clip(state.weight + deltas, -1.0, 1.0)
        return (IdealState(w_new, state.variability_factor),
                ProgramStats(duration=self.update_time))

    def decay(self, state, elapsed: float):
        return state


@dataclass
class IdealState:
    weight: Number
    variability_factor: Number = 1.0


def _stats_from_events(events) -> ProgramStats:
    stats = ProgramStats()
    for ev in events:
        if ev.kind == WRITE:
            stats.write_energy += ev.energy
        elif ev.kind == RESET:
            stats.reset_energy += ev.energy
            stats.n_reset_events += 1
        stats.duration += ev.duration
    return stats


DEVICE_MODELS = {
    "mosfet": MosfetSynapse,
    "domain_wall": DomainWallSynapse,
    "rram": RramPairSynapse,
    "ideal": IdealSynapse,
}


def make_device(kind: str, params=None):
    """Instantiate a device model by technology name."""
    try:
        cls = DEVICE_MODELS[kind]
    except KeyError:
        raise ValueError(
            f"unknown device technology {kind!r}; "
            f"choose from {sorted(DEVICE_MODELS)}") from None
    return cls(params) if params is not None else cls()
