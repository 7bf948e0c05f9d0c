"""Command-line front end: config-driven runs with bit-exact artifacts.

Each subcommand reads a strict INI config, runs the corresponding study and
writes CSV data files plus a JSON manifest.  The manifest records the fully
resolved config, the seed and the artifact version, so a run is reproducible
byte-for-byte from the manifest alone.  Nothing is written until the whole
computation has succeeded; a config error therefore never leaves partial
files behind.

Exit codes: 0 success, 1 runtime model error, 2 config error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from .bayes import ImpossibleOutcomeError, posterior_stats
from .config import (ConfigError, decoherence_from, load_config, prior_from,
                     si_seconds)
from .core import balanced_state, fourier_gate, spin_xy_projection, xy_state
from .harness import (EnsembleConfig, PriorSpec, first_step_gain_curve,
                      oscillation_study, run_ensemble, sliding_alpha)
from .optimizer import optimize_step_params
from .protocols import (ProtocolConfig, fourier_max_steps, run_protocol,
                        schedule_delays)

# Display-only conversion factor between the reduced field (rad/s) and the
# flux axis used for presentation; enabled with --flux-axis.
FLUX_SCALE = 1.0e5

PAPER_SCALE_GRID_POINTS = 100_000
PAPER_SCALE_EXPERIMENTS = 1000


def _fmt(value) -> str:
    """Fixed-notation CSV cell with 12 significant digits."""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return np.format_float_positional(float(value), precision=12,
                                      unique=False, fractional=False)


def _write_csv(path: str, header, rows) -> None:
    with open(path, "w", newline="\n") as handle:
        handle.write(",".join(header) + "\n")
        for row in rows:
            handle.write(",".join(_fmt(cell) for cell in row) + "\n")


def _write_json(path: str, payload: dict) -> None:
    with open(path, "w", newline="\n") as handle:
        json.dump(payload, handle, indent=2, sort_keys=True)
        handle.write("\n")


def _protocol_config(kind: str, config: dict, decoherence, n_steps: int,
                     ) -> ProtocolConfig:
    if kind == "lama":
        return ProtocolConfig(kind, t1=si_seconds(config, "lama", "t1_ns"),
                              dt=si_seconds(config, "lama", "dt_ns"),
                              n_steps=n_steps, decoherence=decoherence)
    if kind == "classical":
        return ProtocolConfig(kind, t1=si_seconds(config, "classical", "t1_ns"),
                              n_steps=n_steps, decoherence=decoherence)
    if kind == "kitaev":
        return ProtocolConfig(kind, t1=si_seconds(config, "kitaev", "t1_ns"),
                              n_steps=config["kitaev"]["n_steps"],
                              decoherence=decoherence)
    t1 = si_seconds(config, kind, "t1_us")
    steps = config[kind]["n_steps"] or fourier_max_steps(t1)
    return ProtocolConfig(kind, t1=t1, n_steps=steps, decoherence=decoherence)


def cmd_gain_curve(config: dict, seed: int, flux_axis: bool):
    """First-step expected-gain sweep over the delay time."""
    section = config["gain-curve"]
    prior = prior_from(config)
    decoherence = decoherence_from(config)
    if section["prep"] == "balanced":
        prep = balanced_state(3)
    else:
        prep = xy_state(section["alpha_rad"], section["beta_rad"])
    t_values = np.linspace(si_seconds(config, "gain-curve", "t_min_ns"),
                           si_seconds(config, "gain-curve", "t_max_ns"),
                           section["n_t"])
    gains = first_step_gain_curve(prior, t_values, prep=prep,
                                  params=decoherence)
    rows = [(t * 1e9, g) for t, g in zip(t_values, gains)]
    plateau = float(gains[-1]) if len(gains) else None
    csv_files = [("gain_curve.csv", ("t_ns", "gain_bits"), rows)]
    return csv_files, {"plateau_gain_bits": plateau}


def cmd_compare(config: dict, seed: int, flux_axis: bool):
    """Ensemble gain curves for several protocols plus scaling fits."""
    section = config["compare"]
    decoherence = decoherence_from(config)
    prior_cfg = config["prior"]
    prior_spec = PriorSpec(mean=prior_cfg["mean_rad_per_s"],
                           sigma=prior_cfg["sigma_rad_per_s"],
                           span_sigmas=prior_cfg["span_sigmas"],
                           m=prior_cfg["grid_points"])
    csv_files = []
    summary = {}
    for kind in section["protocols"]:
        protocol = _protocol_config(kind, config, decoherence,
                                    section["n_steps"])
        curve = run_ensemble(EnsembleConfig(protocol=protocol,
                                            n_experiments=section["n_experiments"],
                                            prior=prior_spec, seed=seed))
        rows = [(i + 1, t * 1e6, g, e) for i, (t, g, e)
                in enumerate(zip(curve.t_phi, curve.mean_gain_bits,
                                 curve.stderr))]
        csv_files.append((f"compare_{kind}.csv",
                          ("step", "t_phi_us", "mean_gain_bits", "stderr"),
                          rows))
        fits = sliding_alpha(curve, (curve.t_phi[0], curve.t_phi[-1]))
        summary[kind] = {
            "alpha_estimates": [{"window_lo_us": f.window[0] * 1e6,
                                 "window_hi_us": f.window[1] * 1e6,
                                 "alpha": f.alpha} for f in fits],
            "alpha_max": max((f.alpha for f in fits), default=None),
            "final_gain_bits": float(curve.mean_gain_bits[-1]),
        }
    return csv_files, {"protocols": summary}


def cmd_lama_trace(config: dict, seed: int, flux_axis: bool):
    """Replay a fixed outcome list and dump the per-step posteriors."""
    section = config["lama-trace"]
    prior = prior_from(config)
    decoherence = decoherence_from(config)
    outcomes = section["outcomes"]
    protocol = ProtocolConfig("lama", t1=si_seconds(config, "lama-trace", "t1_ns"),
                              dt=si_seconds(config, "lama-trace", "dt_ns"),
                              n_steps=len(outcomes), decoherence=decoherence)
    traj = run_protocol(protocol, prior, rng_seed=seed,
                        forced_outcomes=list(outcomes))

    axis = prior.grid.points / FLUX_SCALE if flux_axis else prior.grid.points
    axis_name = "flux" if flux_axis else "omega_rad_per_s"
    columns = [axis, prior.weights] + [s.posterior.weights for s in traj.steps]
    header = ([axis_name, "prior"]
              + [f"step_{i}" for i in range(1, len(outcomes) + 1)])
    posterior_rows = list(zip(*columns))

    gain_rows = []
    stats = []
    for i, step in enumerate(traj.steps):
        mean, std = posterior_stats(step.posterior)
        t_phi = float(traj.cumulative_times()[i])
        gain_rows.append((i + 1, t_phi * 1e6, step.gain.gain_bits, mean, std))
        stats.append({"step": i + 1, "outcome": step.outcome,
                      "posterior_mean_rad_per_s": mean,
                      "posterior_std_rad_per_s": std})
    csv_files = [
        ("lama_trace_posteriors.csv", header, posterior_rows),
        ("lama_trace_gains.csv",
         ("step", "t_phi_us", "gain_bits", "posterior_mean_rad_per_s",
          "posterior_std_rad_per_s"), gain_rows),
    ]
    return csv_files, {"steps": stats}


def cmd_oscillations(config: dict, seed: int, flux_axis: bool):
    """Expected-gain oscillation study with fitted periods."""
    section = config["oscillations"]
    kind = section["kind"]
    if kind == "discreteness":
        variants = section["variants_points"]
        if not variants:
            raise ConfigError("key 'variants_points' in section [oscillations]: "
                              "required for the discreteness study")
    else:
        variants = section["variants_rad_per_s"]
        if not variants:
            raise ConfigError("key 'variants_rad_per_s' in section "
                              f"[oscillations]: required for the {kind} study")
    results = oscillation_study(kind, variants,
                                sigma=config["prior"]["sigma_rad_per_s"],
                                n_t=section["n_t"], m=section["grid_points"])
    rows = [(r.variant, t * 1e9, g)
            for r in results for t, g in zip(r.t, r.gain_bits)]
    periods = [{"variant": r.variant,
                "period_ns": None if r.period is None else r.period * 1e9}
               for r in results]
    csv_files = [("oscillations.csv", ("variant", "t_ns", "gain_bits"), rows)]
    return csv_files, {"kind": kind, "periods": periods}


def cmd_optimize(config: dict, seed: int, flux_axis: bool):
    """Pulse-parameter search at each requested delay time."""
    section = config["optimize"]
    prior = prior_from(config)
    decoherence = decoherence_from(config)
    fix_readout = fourier_gate(3) if section["readout"] == "fourier" else None
    rows = []
    details = []
    for t in si_seconds(config, "optimize", "t_ns"):
        result = optimize_step_params(prior, t, decoherence,
                                      budget=section["budget"], rng_seed=seed,
                                      n_starts=section["n_starts"],
                                      fix_readout=fix_readout)
        j_xy = spin_xy_projection(result.best_prep).j_xy
        params = result.best_params.as_array()
        rows.append((t * 1e9, result.best_gain, j_xy, *params))
        details.append({"t_ns": t * 1e9, "best_gain_bits": result.best_gain,
                        "j_xy": j_xy, "best_params": list(params),
                        "n_evaluations": result.n_evaluations})
    header = ("t_ns", "best_gain_bits", "j_xy", "eps_p", "delta1_p",
              "delta2_p", "eps_r", "delta1_r", "delta2_r")
    return [("optimize.csv", header, rows)], {"results": details}


_COMMANDS = {
    "gain-curve": cmd_gain_curve,
    "compare": cmd_compare,
    "lama-trace": cmd_lama_trace,
    "oscillations": cmd_oscillations,
    "optimize": cmd_optimize,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quditmag",
        description="Qutrit magnetometry simulation engine")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, handler in _COMMANDS.items():
        cmd = sub.add_parser(name, help=handler.__doc__)
        cmd.add_argument("--config", required=True, help="INI config file")
        cmd.add_argument("--seed", type=int, default=None,
                         help="override the seed from the config")
        cmd.add_argument("--out", default=".", help="output directory")
        cmd.add_argument("--paper-scale", action="store_true",
                         help="full-resolution settings (slow): "
                              f"{PAPER_SCALE_GRID_POINTS} grid points, "
                              f"{PAPER_SCALE_EXPERIMENTS} experiments")
        cmd.add_argument("--flux-axis", action="store_true",
                         help="report field axes in display flux units")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config, args.command)
        if args.paper_scale:
            config["prior"]["grid_points"] = PAPER_SCALE_GRID_POINTS
            if "compare" in config:
                config["compare"]["n_experiments"] = PAPER_SCALE_EXPERIMENTS
        seed = args.seed if args.seed is not None else config["run"]["seed"]
        csv_files, summary = _COMMANDS[args.command](config, seed,
                                                     args.flux_axis)
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return 2
    except (ImpossibleOutcomeError, ValueError) as err:
        print(f"model error: {err}", file=sys.stderr)
        return 1

    os.makedirs(args.out, exist_ok=True)
    manifest_name = args.command.replace("-", "_") + ".json"
    outputs = [name for name, _, _ in csv_files] + [manifest_name]
    for name, header, rows in csv_files:
        _write_csv(os.path.join(args.out, name), header, rows)
    _write_json(os.path.join(args.out, manifest_name), {
        "command": args.command,
        "version": __version__,
        "seed": seed,
        "flux_axis": args.flux_axis,
        "config": config,
        "outputs": outputs,
        "summary": summary,
    })
    return 0


if __name__ == "__main__":
    sys.exit(main())
