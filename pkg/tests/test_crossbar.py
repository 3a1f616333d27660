"""Crossbar tests: read-path oracle, reference scheme, programming, I/O."""

import numpy as np
import pytest

from xbarlearn.crossbar import (CrossbarArray, CrossbarConfig,
                                InputOutOfRange, load_weights_csv,
                                save_weights_csv)
from xbarlearn.devices import MosfetSynapse, MosfetSynapseParams, make_device
from xbarlearn.perturb import NoiseSpec, PerturbationModel


def small_config(**kw):
    return CrossbarConfig(**{"m_inputs": 4, "n_outputs": 2, **kw})


# -- configuration ------------------------------------------------------------


def test_config_validation():
    with pytest.raises(ValueError):
        CrossbarConfig(v_read_max=0.2)  # beyond the linear drain regime
    with pytest.raises(ValueError):
        CrossbarConfig(v_read_max=0.0)
    with pytest.raises(ValueError):
        CrossbarConfig(m_inputs=0)
    with pytest.raises(ValueError):
        CrossbarConfig(weight_scale=-1.0)


def test_reference_override_only_for_parallel_scheme():
    cfg = small_config(g_ref=3e-3, weight_scale=2e-3)
    CrossbarArray(cfg, "mosfet")  # parallel reference: override honored
    for kind in ("rram", "ideal"):
        with pytest.raises(ValueError, match="fixes its own reference"):
            CrossbarArray(cfg, kind)


def test_g_ref_must_lie_in_conductance_window():
    with pytest.raises(ValueError, match="g_ref"):
        CrossbarArray(small_config(g_ref=7e-3), "mosfet")


# -- read path ----------------------------------------------------------------


def test_forward_matches_weight_dot_product():
    # z = x_aug . W for every device when weights are representable
    rng = np.random.default_rng(21)
    w = rng.uniform(-0.9, 0.9, size=(5, 2))
    x = rng.uniform(0, 1, size=(7, 4))
    expected = np.concatenate([x, np.ones((7, 1))], axis=1) @ w
    for kind in ("ideal", "mosfet", "domain_wall"):
        xbar = CrossbarArray(small_config(), kind, init_weights=w)
        assert np.allclose(xbar.forward(x), expected, atol=1e-12), kind
    # the RRAM pair quantizes to whole pulses; agreement is coarser
    xbar = CrossbarArray(small_config(), "rram", init_weights=w)
    assert np.allclose(xbar.forward(x), expected, atol=2e-3)


def test_forward_single_sample_matches_batch():
    rng = np.random.default_rng(4)
    w = rng.uniform(-0.5, 0.5, size=(5, 2))
    x = rng.uniform(0, 1, size=(3, 4))
    xbar = CrossbarArray(small_config(), "mosfet", init_weights=w)
    batch = xbar.forward(x)
    singles = np.stack([xbar.forward(x[i]) for i in range(3)])
    assert np.allclose(batch, singles, rtol=1e-12)


def test_zero_input_reads_bias_row():
    w = np.zeros((5, 2))
    w[-1] = [0.3, -0.7]
    xbar = CrossbarArray(small_config(), "ideal", init_weights=w)
    assert np.allclose(xbar.forward(np.zeros(4)), [0.3, -0.7], atol=1e-12)


def test_input_out_of_range_raises_beyond_tolerance():
    xbar = CrossbarArray(small_config(), "ideal")
    xbar.forward(np.array([0.0, 1.0, 1.0 + 5e-10, 0.5]))  # inside tolerance
    with pytest.raises(InputOutOfRange):
        xbar.forward(np.array([0.0, 1.0, 1.0 + 5e-9, 0.5]))
    with pytest.raises(InputOutOfRange):
        xbar.forward(np.array([-0.1, 0.5, 0.5, 0.5]))


def test_forward_read_event_accounts_joule_heating():
    xbar = CrossbarArray(small_config(), "mosfet", init_weights=0.2)
    z, event = xbar.forward(np.full(4, 0.5), with_read_event=True)
    assert event.kind == "read"
    assert event.energy > 0
    # hand-computed: sum over devices of g * (x * v_read)^2 * width
    g = xbar.device.read_conductance(xbar.state)
    v = np.concatenate([np.full(4, 0.5), [1.0]]) * xbar.v_read_max
    expected = float((v ** 2) @ g.sum(axis=1)) * xbar.read_pulse_width
    assert event.energy == pytest.approx(expected, rel=1e-12)


def test_variability_separates_effective_from_nominal():
    noise = PerturbationModel(NoiseSpec(device_variability=0.1, seed=0))
    xbar = CrossbarArray(small_config(), "mosfet", init_weights=0.5,
                         perturbation=noise)
    nominal = xbar.get_weights()
    effective = xbar.effective_weights()
    assert np.allclose(nominal, 0.5, atol=1e-12)
    assert not np.allclose(effective, nominal, atol=1e-3)


# -- programming --------------------------------------------------------------


def test_weight_round_trip_through_device_states():
    rng = np.random.default_rng(2)
    w = rng.uniform(-0.95, 0.95, size=(5, 2))
    for kind in ("ideal", "mosfet", "domain_wall"):
        xbar = CrossbarArray(small_config(), kind, init_weights=w)
        assert np.allclose(xbar.get_weights(), w, atol=1e-12), kind


def test_programming_route_is_device_checked():
    gate = CrossbarArray(small_config(), "mosfet")
    direct = CrossbarArray(small_config(), "ideal")
    with pytest.raises(TypeError):
        gate.program_deltas(np.zeros((5, 2)))
    with pytest.raises(TypeError):
        direct.apply_gate_pulses(np.zeros((5, 2)), 1e-9)


def test_gate_pulses_move_weights():
    xbar = CrossbarArray(small_config(), "mosfet", init_weights=0.0)
    p = xbar.device.params
    i = np.zeros((5, 2))
    i[0, 0] = 50e-9
    stats = xbar.apply_gate_pulses(i, p.pulse_width)
    w = xbar.get_weights()
    # dv = i t / c = 0.05 V -> dG = 0.05 * slope -> dw = dG / weight_scale
    assert w[0, 0] == pytest.approx(0.05 * p.slope / xbar.weight_scale,
                                    rel=1e-9)
    assert np.allclose(np.delete(w.ravel(), 0), 0.0, atol=1e-15)
    assert stats.write_energy > 0
    assert stats.duration == p.pulse_width


def test_idle_decay_only_affects_volatile_devices():
    volatile = CrossbarArray(small_config(), "mosfet", init_weights=0.5)
    stable = CrossbarArray(small_config(), "domain_wall", init_weights=0.5)
    volatile.elapse_idle(1e-4)
    stable.elapse_idle(1e-4)
    assert np.all(volatile.get_weights() < 0.5)
    assert np.allclose(stable.get_weights(), 0.5, atol=1e-12)
    with pytest.raises(ValueError):
        volatile.elapse_idle(-1.0)


# -- persistence --------------------------------------------------------------


def test_weights_csv_round_trip(tmp_path):
    rng = np.random.default_rng(6)
    w = rng.uniform(-1, 1, size=(5, 2))
    xbar = CrossbarArray(small_config(), "ideal", init_weights=w)
    path = tmp_path / "w.csv"
    save_weights_csv(xbar, path, comment="unit test")
    loaded = load_weights_csv(path)
    assert np.array_equal(loaded, xbar.get_weights())  # repr round-trips
    assert path.read_text().startswith("# unit test\n")


def test_load_weights_csv_rejects_empty(tmp_path):
    path = tmp_path / "w.csv"
    path.write_text("")
    with pytest.raises(ValueError):
        load_weights_csv(path)
