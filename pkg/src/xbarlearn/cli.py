"""Experiment runner: train, compare-devices, noise-sweep, retention.

Each subcommand builds an ExperimentConfig (defaults, optional TOML
file, ``--set section.key=value`` overrides), runs the experiment and
writes CSV artifacts into the output directory.  Every artifact starts
with a comment line recording the config hash and seed, so identical
configurations reproduce byte-identical files.

Exit codes: 0 success, 1 configuration error, 2 data error.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import os
import sys
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .config import ConfigError, ENV_CONFIG_PATH, ExperimentConfig
from .crossbar import CrossbarArray, save_weights_csv
from .dataio import Dataset, prepare_dataset
from .learner import RunLedger, evaluate, run_training
from .perturb import NoiseSpec, PerturbationModel

DEVICE_SWEEP = ("mosfet", "domain_wall", "rram", "ideal")
TRACE_EPOCHS = (2, 10, 100)
RETENTION_IDLES = (0.0, 1e-5, 1e-4, 2e-4, 5e-4,
                   1e-3, 2e-3, 5e-3, 1e-2, 1e-1)


class DataError(Exception):
    """Dataset missing or malformed."""


def _stamp(config: ExperimentConfig) -> str:
    return f"config_hash={config.config_hash()} seed={config.train.seed}"


def _write_csv(path, header: Sequence[str], rows, config: ExperimentConfig):
    with open(path, "w", newline="") as fh:
        fh.write(f"# {_stamp(config)}\n")
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    print(f"wrote {path}")


def _load_dataset(config: ExperimentConfig) -> Dataset:
    try:
        return prepare_dataset(n_train=config.n_train,
                               seed=config.train.seed,
                               path=config.data_path)
    except FileNotFoundError as exc:
        raise DataError(f"dataset not found: {exc}") from exc
    except ValueError as exc:
        raise DataError(f"bad dataset: {exc}") from exc


def _run_one(config: ExperimentConfig, dataset: Dataset,
             trace_epochs: Tuple[int, ...] = ()
             ) -> Tuple[CrossbarArray, RunLedger]:
    noise = config.noise_spec()
    xbar = CrossbarArray(config.crossbar, config.make_device(),
                         init_weights=config.train.init_weight,
                         perturbation=PerturbationModel(noise))
    tcfg = dataclasses.replace(config.train, trace_epochs=trace_epochs)
    ledger = run_training(xbar, dataset.X_train, dataset.Y_train, tcfg,
                          config.neuron, noise,
                          X_test=dataset.X_test, Y_test=dataset.Y_test)
    return xbar, ledger


# ---------------------------------------------------------------------------
# subcommands


def cmd_train(config: ExperimentConfig) -> Dict[str, str]:
    """Train once; emit accuracy, energy, node-trace and weight artifacts."""
    out = config.output_dir
    os.makedirs(out, exist_ok=True)
    dataset = _load_dataset(config)
    traced = tuple(e for e in TRACE_EPOCHS if e <= config.train.epochs)
    xbar, ledger = _run_one(config, dataset, trace_epochs=traced)

    paths: Dict[str, str] = {}

    path = os.path.join(out, "accuracy_per_epoch.csv")
    _write_csv(path, ["epoch", "train_accuracy"],
               ([t.epoch, t.train_accuracy] for t in ledger), config)
    paths["accuracy"] = path

    path = os.path.join(out, "energy_cumulative.csv")
    _write_csv(path,
               ["epoch", "cumulative_write_energy_j", "cumulative_time_s"],
               ([t.epoch, t.cumulative_write_energy, t.cumulative_time]
                for t in ledger), config)
    paths["energy"] = path

    for trace in ledger:
        if trace.node_records is None:
            continue
        path = os.path.join(out, f"node_traces_epoch_{trace.epoch}.csv")
        rows = [[trace.epoch, s, n, trace.node_records[s, n, 0],
                 trace.node_records[s, n, 1]]
                for s in range(trace.node_records.shape[0])
                for n in range(trace.node_records.shape[1])]
        _write_csv(path, ["epoch", "sample", "node", "y", "Y"], rows, config)
        paths[f"nodes_{trace.epoch}"] = path

    path = os.path.join(out, "final_weights.csv")
    save_weights_csv(xbar, path, comment=_stamp(config))
    print(f"wrote {path}")
    paths["weights"] = path

    path = os.path.join(out, "run_summary.csv")
    _write_csv(path,
               ["device", "epochs", "final_train_accuracy",
                "final_test_accuracy", "total_time_s",
                "total_write_energy_j", "total_reset_energy_j",
                "total_update_energy_j", "total_read_energy_j",
                "n_clamped_pulses", "n_reset_events"],
               [[config.device, config.train.epochs,
                 ledger.final_train_accuracy, ledger.final_test_accuracy,
                 ledger.total_time, ledger.total_write_energy,
                 ledger.total_reset_energy, ledger.total_update_energy,
                 ledger.total_read_energy, ledger.n_clamped_pulses,
                 ledger.n_reset_events]], config)
    paths["summary"] = path

    print(f"device {config.device}: "
          f"train accuracy {ledger.final_train_accuracy:.3f}, "
          f"test accuracy {ledger.final_test_accuracy:.3f}, "
          f"time {ledger.total_time:.3e} s, "
          f"write energy {ledger.total_write_energy:.3e} J")
    return paths


def cmd_compare_devices(config: ExperimentConfig,
                        devices: Sequence[str] = DEVICE_SWEEP) -> str:
    """Run each technology on the same task; emit the comparison table."""
    out = config.output_dir
    os.makedirs(out, exist_ok=True)
    dataset = _load_dataset(config)
    rows: List[list] = []
    for tech in devices:
        cfg = dataclasses.replace(
            config, device=tech,
            device_overrides=(config.device_overrides
                              if tech == config.device else {}))
        _, ledger = _run_one(cfg, dataset)
        n_updates = max(1, cfg.train.epochs * dataset.X_train.shape[0])
        rows.append([tech, ledger.total_time / n_updates, ledger.total_time,
                     ledger.total_write_energy, ledger.total_update_energy,
                     ledger.final_train_accuracy])
        print(f"{tech}: {ledger.total_time / n_updates:.3e} s/sample, "
              f"{ledger.total_time:.3e} s total, "
              f"{ledger.total_update_energy:.3e} J updates, "
              f"accuracy {ledger.final_train_accuracy:.3f}")
    path = os.path.join(out, "device_comparison.csv")
    _write_csv(path,
               ["device", "time_per_sample_s", "total_time_s",
                "total_write_energy_j", "total_update_energy_j",
                "final_train_accuracy"], rows, config)
    return path


def cmd_noise_sweep(config: ExperimentConfig, level: float = 0.10) -> str:
    """Four-case noise study: clean, input, variability, update."""
    out = config.output_dir
    os.makedirs(out, exist_ok=True)
    dataset = _load_dataset(config)
    seed = config.noise_spec().seed
    cases = [
        ("noiseless", NoiseSpec(seed=seed)),
        ("input_noise", NoiseSpec(input_noise=level, seed=seed)),
        ("device_variability", NoiseSpec(device_variability=level, seed=seed)),
        ("update_noise", NoiseSpec(update_noise=level, seed=seed)),
    ]
    columns = {}
    for name, spec in cases:
        cfg = dataclasses.replace(config, noise=spec)
        _, ledger = _run_one(cfg, dataset)
        columns[name] = [t.train_accuracy for t in ledger]
        print(f"{name}: final accuracy {ledger.final_train_accuracy:.3f}")
    rows = [[epoch + 1] + [columns[name][epoch] for name, _ in cases]
            for epoch in range(config.train.epochs)]
    path = os.path.join(out, "noise_sweep.csv")
    _write_csv(path, ["epoch"] + [name for name, _ in cases], rows, config)
    return path


def cmd_retention(config: ExperimentConfig,
                  idle_durations: Sequence[float] = RETENTION_IDLES) -> str:
    """Train, then measure accuracy decay across idle durations."""
    out = config.output_dir
    os.makedirs(out, exist_ok=True)
    durations = sorted(set(float(d) for d in idle_durations))
    if any(d < 0 for d in durations):
        raise ConfigError("idle durations must be nonnegative")
    dataset = _load_dataset(config)
    xbar, _ = _run_one(config, dataset)

    rows = []
    elapsed = 0.0
    for duration in durations:
        xbar.elapse_idle(duration - elapsed)  # decay composes exponentially
        elapsed = duration
        accuracy = evaluate(xbar, dataset.X_test, dataset.Y_test,
                            config.neuron, config.train.success_band)
        mean_abs_w = float(np.mean(np.abs(xbar.get_weights())))
        rows.append([duration, accuracy, mean_abs_w])
        print(f"idle {duration:.1e} s: test accuracy {accuracy:.3f}, "
              f"mean |w| {mean_abs_w:.4f}")
    path = os.path.join(out, "retention.csv")
    _write_csv(path, ["idle_seconds", "test_accuracy", "mean_abs_weight"],
               rows, config)
    return path


# ---------------------------------------------------------------------------
# argument parsing


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--config", metavar="PATH",
                        help=f"TOML config file (default: ${ENV_CONFIG_PATH})")
    parser.add_argument("--set", dest="overrides", action="append",
                        default=[], metavar="SECTION.KEY=VALUE",
                        help="override one config key, e.g. train.eta=0.05")
    parser.add_argument("--device", choices=DEVICE_SWEEP,
                        help="shortcut for --set run.device=...")
    parser.add_argument("--seed", type=int,
                        help="shortcut for --set train.seed=...")
    parser.add_argument("--output-dir", metavar="DIR",
                        help="shortcut for --set run.output_dir=...")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xbarlearn",
        description="Behavioral simulator of on-chip SGD training in "
                    "analog crossbar networks")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="single training run with artifacts")
    _add_common(p)

    p = sub.add_parser("compare-devices",
                       help="same task across device technologies")
    _add_common(p)
    p.add_argument("--devices", nargs="+", choices=DEVICE_SWEEP,
                   default=list(DEVICE_SWEEP))

    p = sub.add_parser("noise-sweep",
                       help="clean vs input/device/update noise cases")
    _add_common(p)
    p.add_argument("--level", type=float, default=0.10,
                   help="noise amplitude for the three noisy cases")

    p = sub.add_parser("retention",
                       help="post-training accuracy vs idle time")
    _add_common(p)
    p.add_argument("--idle", type=float, nargs="+",
                   default=list(RETENTION_IDLES),
                   help="idle durations in seconds")
    return parser


def _config_from_args(args) -> ExperimentConfig:
    overrides = list(args.overrides)
    if args.device:
        overrides.append(f"run.device={args.device}")
    if args.seed is not None:
        overrides.append(f"train.seed={args.seed}")
    if args.output_dir:
        overrides.append(f"run.output_dir={args.output_dir}")
    return ExperimentConfig.load(args.config, overrides)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = _config_from_args(args)
    except (ConfigError, FileNotFoundError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    try:
        if args.command == "train":
            cmd_train(config)
        elif args.command == "compare-devices":
            cmd_compare_devices(config, args.devices)
        elif args.command == "noise-sweep":
            cmd_noise_sweep(config, args.level)
        elif args.command == "retention":
            cmd_retention(config, args.idle)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
