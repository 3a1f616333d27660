"""Configuration tests: TOML parsing, overrides, hashing, derived objects."""

import dataclasses

import pytest

from xbarlearn.config import ConfigError, ExperimentConfig, _parse_value


def test_defaults_need_no_file():
    cfg = ExperimentConfig()
    assert cfg.device == "mosfet"
    assert cfg.train.epochs == 100
    assert cfg.crossbar.m_inputs == 16


def test_unknown_sections_and_keys_rejected():
    with pytest.raises(ConfigError, match="unknown config sections"):
        ExperimentConfig.from_dict({"rocket": {}})
    with pytest.raises(ConfigError, match=r"unknown \[run\] keys"):
        ExperimentConfig.from_dict({"run": {"devcie": "mosfet"}})
    with pytest.raises(ConfigError, match=r"bad \[train\] block"):
        ExperimentConfig.from_dict({"train": {"etaa": 0.1}})


def test_section_value_errors_become_config_errors():
    with pytest.raises(ConfigError, match=r"bad \[train\] block"):
        ExperimentConfig.from_dict({"train": {"eta": -1.0}})
    with pytest.raises(ConfigError, match="unknown device"):
        ExperimentConfig.from_dict({"run": {"device": "pcm"}})


def test_from_toml_and_env(tmp_path, monkeypatch):
    path = tmp_path / "exp.toml"
    path.write_text('[run]\ndevice = "domain_wall"\n\n'
                    "[train]\nepochs = 7\neta = 0.05\n")
    cfg = ExperimentConfig.from_toml(path)
    assert cfg.device == "domain_wall"
    assert cfg.train.epochs == 7
    assert cfg.train.eta == 0.05

    monkeypatch.setenv("XBARLEARN_CONFIG", str(path))
    assert ExperimentConfig.load().train.epochs == 7


def test_bad_toml_is_a_config_error(tmp_path):
    path = tmp_path / "broken.toml"
    path.write_text("[run\n")
    with pytest.raises(ConfigError):
        ExperimentConfig.from_toml(path)


def test_dotted_overrides():
    cfg = ExperimentConfig().with_overrides(
        ["train.eta=0.05", "run.device=ideal", "noise.input_noise=0.1",
         "crossbar.bias=false", "run.data_path=none"])
    assert cfg.train.eta == 0.05
    assert cfg.device == "ideal"
    assert cfg.noise.input_noise == 0.1
    assert cfg.crossbar.bias is False
    assert cfg.data_path is None


def test_override_syntax_checked():
    with pytest.raises(ConfigError, match="key=value"):
        ExperimentConfig().with_overrides(["train.eta"])
    with pytest.raises(ConfigError, match="section.key"):
        ExperimentConfig().with_overrides(["eta=0.1"])


def test_parse_value_scalars():
    assert _parse_value("true") is True
    assert _parse_value("False") is False
    assert _parse_value("none") is None
    assert _parse_value("3") == 3 and isinstance(_parse_value("3"), int)
    assert _parse_value("2.5e-3") == 2.5e-3
    assert _parse_value('"runs/demo"') == "runs/demo"


def test_config_hash_ignores_output_dir_only():
    base = ExperimentConfig()
    moved = dataclasses.replace(base, output_dir="elsewhere")
    tuned = base.with_overrides(["train.eta=0.05"])
    assert base.config_hash() == moved.config_hash()
    assert base.config_hash() != tuned.config_hash()
    assert len(base.config_hash()) == 16
    int(base.config_hash(), 16)  # hex digest


def test_device_params_merge_defaults_with_overrides():
    cfg = ExperimentConfig.from_dict(
        {"device": {"tau_retention": 2e-3}})
    params = cfg.device_params()
    assert params.tau_retention == 2e-3
    assert params.c_gate == 1e-15  # untouched default
    with pytest.raises(ConfigError, match=r"bad \[device\] block"):
        ExperimentConfig.from_dict({"device": {"bogus": 1}}).device_params()


def test_ideal_device_takes_no_parameters():
    cfg = ExperimentConfig.from_dict(
        {"run": {"device": "ideal"}, "device": {"tau_retention": 1e-3}})
    with pytest.raises(ConfigError, match="no \\[device\\]"):
        cfg.device_params()


def test_noise_seed_defaults_to_train_seed():
    cfg = ExperimentConfig.from_dict({"train": {"seed": 123}})
    assert cfg.noise_spec().seed == 123
    pinned = ExperimentConfig.from_dict(
        {"train": {"seed": 123}, "noise": {"seed": 9}})
    assert pinned.noise_spec().seed == 9


def test_make_device_uses_overridden_constants():
    cfg = ExperimentConfig.from_dict(
        {"run": {"device": "domain_wall"}, "device": {"update_time": 5e-9}})
    assert cfg.make_device().params.update_time == 5e-9
