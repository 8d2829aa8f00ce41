"""Experiment runner: flat key=value configs in, CSV reports out.

Usage: simgraph <subcommand> --config PATH --out DIR [--seed U64] [--force]

Subcommands: spectrum, bounds, correct, factorize, probe, train, perturb.
Every run is deterministic per (config, seed): identical inputs give
byte-identical CSVs. Exit status is 0 only when the run's asserted
inequalities all hold (e.g. closed-form/dense agreement, probe errors
within bounds, per-trial Weyl checks).
"""

import argparse
import os
import sys

import numpy as np

from . import bounds as bounds_mod
from .corrections import verify_margin_correction, verify_temperature_correction
from .eigensolver import symmetric_eigenvalues
from .factorize import DivergenceError, OptimizeConfig, psd_rank_k_residual
from .graph import GraphMode, build_adjacency, normalize
from .harness import TrainConfig, make_dataset, train
from .params import GraphParams, ValidationError
from .perturb import empirical_spectral_law, mc_lambda_shift
from .pipeline import SCENARIOS, optimize_scenario, run_probe
from .spectrum import (closed_form_removed, closed_form_with_components,
                       closed_form_without, component_matrices,
                       dense_eigenvalues, GROUPING_TOL)

EXIT_OK = 0
EXIT_ASSERT = 1
EXIT_USAGE = 2

CLOSED_FORM_TOL = 1e-10
CORRECTION_TOL = 1e-10


class ConfigError(ValueError):
    pass


def parse_config(path: str) -> dict:
    """Flat key=value file; blank lines and '#' comments ignored."""
    config = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value, "
                                  f"got {line!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            if not key:
                raise ConfigError(f"{path}:{lineno}: empty key")
            config[key] = _coerce(value)
    return config


def _coerce(value: str):
    try:
        return int(value)
    except ValueError:
        pass
    try:
        return float(value)
    except ValueError:
        pass
    return value


def require(config: dict, *keys):
    missing = [k for k in keys if k not in config]
    if missing:
        raise ConfigError("missing required config key(s): "
                          + ", ".join(missing))
    return [config[k] for k in keys]


def graph_params(config: dict) -> GraphParams:
    n, r, n_d, alpha, beta, gamma = require(
        config, "n", "r", "n_d", "alpha", "beta", "gamma")
    params = GraphParams(n=int(n), r=int(r), n_d=int(n_d),
                         alpha=float(alpha), beta=float(beta),
                         gamma=float(gamma))
    params.validate()
    return params


def fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool) or isinstance(value, np.bool_):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return "%.12g" % value
    return str(value)


def write_csv(out_dir: str, name: str, header, rows, force: bool):
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, name)
    if os.path.exists(path) and not force:
        raise ConfigError(f"{path} exists; pass --force to overwrite")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(fmt(v) for v in row) + "\n")
    return path


def cmd_spectrum(config, out_dir, force):
    params = graph_params(config)
    rows = []
    ok = True

    def emit(mode, spectrum, matrix):
        nonlocal ok
        for value, mult, _ in spectrum.groups:
            rows.append((mode, value, mult, "closed_form"))
        dense = dense_eigenvalues(matrix)
        for value, mult, _ in dense.groups:
            rows.append((mode, value, mult, "dense"))
        closed = np.sort(np.concatenate(
            [[v] * m for v, m, _ in spectrum.groups]))
        numeric = np.sort(symmetric_eigenvalues(matrix))
        if np.max(np.abs(closed - numeric)) > CLOSED_FORM_TOL:
            ok = False

    without = normalize(build_adjacency(params, GraphMode.WITHOUT_DIFFICULT))
    emit("without_difficult", closed_form_without(params), without.a_bar)
    if params.n_d >= 1:
        params.validate_kappa()
        comp1, comp2 = closed_form_with_components(params)
        a1, a2 = component_matrices(params)
        emit("with_difficult_component1", comp1, a1)
        emit("with_difficult_component2", comp2, a2)
        if params.n > params.n_d:
            removed = normalize(build_adjacency(params, GraphMode.REMOVED))
            emit("removed", closed_form_removed(params), removed.a_bar)
    return [("mode", "eigenvalue", "multiplicity", "source")], rows, ok, "spectrum.csv"


def cmd_bounds(config, out_dir, force):
    params = graph_params(config)
    (delta, k) = require(config, "delta", "k")
    reports = [bounds_mod.bound_without(params, float(delta)),
               bounds_mod.bound_with(params, float(delta), int(k))]
    if 1 <= params.n_d < params.n:
        reports.append(bounds_mod.bound_removed(params, float(delta)))
    reports.append(bounds_mod.bound_margin(params, float(delta)))
    if params.beta > 0:
        reports.append(bounds_mod.bound_temperature(params, float(delta)))
    rows = [(rep.scenario, rep.delta, rep.k, rep.lambda_term, rep.bound_value)
            for rep in reports]
    ok = True
    if params.n_d >= 1 and params.gamma > params.beta:
        ok = reports[1].bound_value > reports[0].bound_value
    return [("scenario", "delta", "k", "lambda_term", "bound")], rows, ok, "bounds.csv"


def cmd_correct(config, out_dir, force):
    params = graph_params(config)
    params.validate_kappa()
    margin_dev = verify_margin_correction(params)
    rows = [("margin_restores_target", margin_dev)]
    ok = margin_dev <= CORRECTION_TOL
    if params.beta > 0:
        temp_dev = verify_temperature_correction(params)
        rows.append(("temperature_restores_target", temp_dev))
        ok = ok and temp_dev <= CORRECTION_TOL
    return [("check", "max_deviation")], rows, ok, "corrections.csv"


def cmd_factorize(config, out_dir, force):
    params = graph_params(config)
    (k, seed) = require(config, "k", "seed")
    scenario = config.get("scenario", "without")
    # learning_rate in the config belongs to the training harness; the
    # factorization optimizer always uses its own default step size.
    opt = OptimizeConfig(k=int(k), seed=int(seed),
                         steps=int(config.get("steps", 5000)))
    setup, result = optimize_scenario(params, scenario, opt)
    rows = [(step, loss) for step, loss in enumerate(result.loss_trace)]
    if setup.weights is None:
        residual = psd_rank_k_residual(
            symmetric_eigenvalues(setup.target), int(k))
        ok = abs(result.loss_trace[-1] - residual) <= 1e-4
    else:
        ok = result.loss_trace[-1] <= result.loss_trace[0]
    return [("step", "loss")], rows, ok, "factorize.csv"


def cmd_probe(config, out_dir, force):
    params = graph_params(config)
    params.validate_kappa()
    (delta, k, seed, trials) = require(config, "delta", "k", "seed", "trials")
    opt = OptimizeConfig(k=int(k), seed=int(seed),
                         steps=int(config.get("steps", 5000)))
    rows = []
    ok = True
    for scenario in SCENARIOS:
        if scenario == "removed" and not 1 <= params.n_d < params.n:
            continue
        if scenario == "temperature" and params.beta == 0:
            continue
        pre = optimize_scenario(params, scenario, opt)
        for trial in range(int(trials)):
            label_seed = int(seed) + trial
            result = run_probe(params, scenario, float(delta), label_seed,
                               opt, precomputed=pre)
            within = result.weighted_error <= result.bound_value
            ok = ok and within
            rows.append((label_seed, scenario, result.weighted_error,
                         result.bound_value, within))
    return [("seed", "scenario", "error", "bound", "within_bound")], rows, ok, "probe.csv"


def cmd_train(config, out_dir, force):
    (seed, variant) = require(config, "seed", "variant")
    (batch_size, tau, epochs, lr) = require(
        config, "batch_size", "tau", "epochs", "learning_rate")
    (mix_ratio, per_class, dims, jitter) = require(
        config, "mix_ratio", "per_class", "dims", "jitter")
    dims = [int(part) for part in str(dims).split(",")]
    if len(dims) != 2:
        raise ConfigError("dims must be 'input_dim,embed_dim'")
    classes = int(config.get("classes", 2))
    dataset = make_dataset(classes=classes, per_class=int(per_class),
                           d=dims[0],
                           separation=float(config.get("separation", 3.0)),
                           mix_ratio=float(mix_ratio), seed=int(seed))
    tc = TrainConfig(batch_size=int(batch_size), tau=float(tau),
                     sigma=float(config.get("sigma", 0.05)),
                     rho=float(config.get("rho", 0.65)),
                     pos_high=float(config.get("pos_high", 0.15)),
                     pos_low=float(config.get("pos_low", 0.75)),
                     epochs=int(epochs), learning_rate=float(lr),
                     seed=int(seed), input_dim=dims[0], embed_dim=dims[1],
                     jitter=float(jitter))
    _, metrics = train(dataset, tc, str(variant))
    rows = [(epoch, variant, metrics.loss[epoch],
             metrics.probe_accuracy[epoch], metrics.diff_class_ratio[epoch])
            for epoch in range(int(epochs))]
    header = [("epoch", "variant", "loss", "probe_accuracy",
               "diff_class_ratio")]
    ok = bool(np.all(np.isfinite(metrics.loss)))
    return header, rows, ok, "train.csv"


def cmd_perturb(config, out_dir, force):
    params = graph_params(config)
    params.validate_kappa()
    (epsilon, trials, seed, k) = require(config, "epsilon", "trials",
                                         "seed", "k")
    report = mc_lambda_shift(params, float(epsilon), int(trials), int(k),
                             int(seed))
    rows = [(trial, report.lambda_k1[trial], report.weyl_bound[trial],
             bool(report.holds[trial]))
            for trial in range(int(trials))]
    ok = bool(np.all(report.holds))
    return [("trial", "lambda_k1", "weyl_bound", "holds")], rows, ok, "perturb.csv"


COMMANDS = {
    "spectrum": cmd_spectrum,
    "bounds": cmd_bounds,
    "correct": cmd_correct,
    "factorize": cmd_factorize,
    "probe": cmd_probe,
    "train": cmd_train,
    "perturb": cmd_perturb,
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="simgraph",
        description="similarity-graph experiment runner (CSV reports)")
    parser.add_argument("subcommand", choices=sorted(COMMANDS))
    parser.add_argument("--config", required=True)
    parser.add_argument("--out", required=True)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--force", action="store_true")
    args = parser.parse_args(argv)

    try:
        config = parse_config(args.config)
        if args.seed is not None:
            config["seed"] = args.seed
        header, rows, ok, name = COMMANDS[args.subcommand](
            config, args.out, args.force)
        write_csv(args.out, name, header[0], rows, args.force)
    except (ConfigError, ValidationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DivergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ASSERT
    return EXIT_OK if ok else EXIT_ASSERT


if __name__ == "__main__":
    sys.exit(main())
