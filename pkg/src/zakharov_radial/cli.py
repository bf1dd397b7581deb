"""Command line entry point: ``zakharov-radial <subcommand> --config FILE --out DIR``.

Subcommands
-----------
simulate          integrate the configured data; writes series.csv/.jsonl and checkpoints
scatter-check     simulate, then report Cauchy tails, the X norm and boundary-term decay
verify-estimates  run every estimate report for the configured seed and sample count
resonance-map     brute-force resonance scans over the configured wave speeds
lp-analyze        dyadic (Besov / partition) diagnostics of the checkpoint given by --resume

Errors exit with status 1 and print a JSON record ``{"error": ..., "message": ...}``
on stderr; argument errors (including an unknown subcommand) exit with status 2.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from dataclasses import asdict

import numpy as np

from . import __version__
from .config import RunConfig, load_config, parse_config
from .diagnostics import scattering_report
from .errors import ConfigError
from .estimates import verify_all
from .interactions import resonance_scan
from .littlewood_paley import (
    BesovSpec,
    bucket_weights,
    dyadic_pieces,
    frequency_l2_norm,
    besov_norm,
    q_of,
)
from .persistence import export_timeseries, load_checkpoint, save_checkpoint, write_json
from .radial_spectral import FREQUENCY, make_grid, spectral
from .solver import StepperConfig, initial_data_family, simulate

SUBCOMMANDS = ("simulate", "scatter-check", "verify-estimates", "resonance-map", "lp-analyze")
log = logging.getLogger("zakharov_radial")


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zakharov-radial", description="Radial Zakharov system experiments.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("subcommand", choices=SUBCOMMANDS)
    p.add_argument("--config", metavar="PATH", help="run configuration (key = value sections)")
    p.add_argument("--out", metavar="DIR", help="output directory (overrides [output] dir)")
    p.add_argument("--seed", type=int, help="random seed (overrides [verify] seed)")
    p.add_argument("--resume", metavar="CHECKPOINT", help="checkpoint to resume from / analyze")
    return p


def _config(args) -> RunConfig:
    cfg = load_config(args.config) if args.config else parse_config("[grid]\nR = 40\nN = 256\n")
    if args.seed is not None:
        cfg = cfg.with_seed(args.seed)
    if args.out:
        cfg = cfg.with_output(args.out)
    return cfg


def _write_meta(out: str, cfg: RunConfig, command: str, extra=None) -> None:
    # the timestamp lives only here so every other export is reproducible byte for byte
    meta = {"command": command, "version": __version__, "config": asdict(cfg), "timestamp": time.time()}
    meta.update(extra or {})
    write_json(meta, os.path.join(out, "meta.json"))


def _run_simulation(cfg: RunConfig, out: str, resume: str | None):
    grid = make_grid(cfg.grid.R, cfg.grid.N)
    alpha = cfg.physics.alpha
    if resume:
        start = load_checkpoint(resume)
        if start.grid != grid or start.alpha != alpha:
            raise ConfigError(f"checkpoint {resume} does not match the configured grid / alpha")
        remaining = max(cfg.time.T - start.t, 0.0)
    else:
        d = cfg.data
        start = initial_data_family(d.family, grid, d.eps0, width=d.width, shell=d.shell, offset=d.offset)
        remaining = cfg.time.T
    t = cfg.time
    step = StepperConfig(dt=t.dt, T=remaining, sample_every=t.sample_every, nonlinearity=t.nonlinearity,
                         checkpoint_every=t.checkpoint_every)

    def checkpoint(state):
        save_checkpoint(state, os.path.join(out, f"checkpoint_{state.t:012.6f}.zkrd"))

    series = simulate(start, alpha, step, checkpoint=checkpoint if t.checkpoint_every else None)
    save_checkpoint(series.state(len(series) - 1), os.path.join(out, "final.zkrd"))
    export_timeseries(series, "csv", os.path.join(out, "series.csv"))
    export_timeseries(series, "jsonl", os.path.join(out, "series.jsonl"))
    return series


def cmd_simulate(cfg: RunConfig, args) -> dict:
    series = _run_simulation(cfg, cfg.output.dir, args.resume)
    return {"samples": len(series), "boundary_contaminated": bool(series.meta["boundary_contaminated"])}


def cmd_scatter_check(cfg: RunConfig, args) -> dict:
    series = _run_simulation(cfg, cfg.output.dir, args.resume)
    d = cfg.diagnostics
    rep = scattering_report(series, cfg.physics.eps, d.boundary_times, d.x_norm, d.boundary)
    rep["eps0"] = cfg.data.eps0
    if d.x_norm:
        rep["x_norm_over_eps0"] = rep["x_norm"] / cfg.data.eps0
    write_json(rep, os.path.join(cfg.output.dir, "scatter_report.json"))
    return {"u_tail_ratio": rep["u_tail_ratio"], "N_tail_ratio": rep["N_tail_ratio"]}


def cmd_verify_estimates(cfg: RunConfig, args) -> dict:
    v = cfg.verify
    reports = verify_all(seed=v.seed, count=v.count, eps=cfg.physics.eps, alpha=cfg.physics.alpha,
                         offsets=range(v.cm_offsets[0], v.cm_offsets[1] + 1))
    write_json({"seed": v.seed, "count": v.count, "reports": [r.to_dict() for r in reports]},
               os.path.join(cfg.output.dir, "estimates.json"))
    return {"reports": len(reports), "failed": [r.lemma for r in reports if not r.passed]}


def cmd_resonance_map(cfg: RunConfig, args) -> dict:
    result = {}
    for which in ("omega", "omega_tilde"):
        for a in cfg.resonance.alphas:
            scan = resonance_scan(a, which)
            key = f"{which}[{a!r}]"
            result[key] = {"alpha": a, "kind": scan.kind, "c_min": scan.c_min, "c_max": scan.c_max,
                           "n_points": scan.n_points}
            np.savetxt(os.path.join(cfg.output.dir, f"resonance_{which}_{a!r}.csv"), scan.table,
                       delimiter=",", header="t,s,rho,ratio", comments="", fmt="%.17g")
    write_json(result, os.path.join(cfg.output.dir, "resonance.json"))
    return {"scans": len(result)}


def cmd_lp_analyze(cfg: RunConfig, args) -> dict:
    if not args.resume:
        raise ConfigError("lp-analyze needs a checkpoint via --resume")
    state = load_checkpoint(args.resume)
    g = state.grid
    dr, w = bucket_weights(g)
    interior = (g.rho > 2.0 ** (dr.k_min + 1)) & (g.rho < 2.0 ** (dr.k_max - 1))
    eps = cfg.physics.eps
    rep = {"t": state.t, "k_min": dr.k_min, "k_max": dr.k_max,
           "partition_error": float(np.max(np.abs(w.sum(axis=0) - 1.0)[interior]))}
    for name, f in (("u", state.u_hat), ("N", state.N_hat)):
        ks, pieces = dyadic_pieces(f, FREQUENCY)
        rep[f"{name}_bucket_l2"] = {int(k): frequency_l2_norm(spectral(g, p)) for k, p in zip(ks, pieces)}
        rep[f"{name}_l2"] = frequency_l2_norm(f)
    rep["u_besov_plus"] = besov_norm(state.u_hat, BesovSpec(0.25 + eps, q_of(eps)))
    rep["N_besov_minus"] = besov_norm(state.N_hat, BesovSpec(-0.25 - eps, q_of(-eps)))
    write_json(rep, os.path.join(cfg.output.dir, "lp_report.json"))
    return {"partition_error": rep["partition_error"]}


COMMANDS = {
    "simulate": cmd_simulate,
    "scatter-check": cmd_scatter_check,
    "verify-estimates": cmd_verify_estimates,
    "resonance-map": cmd_resonance_map,
    "lp-analyze": cmd_lp_analyze,
}


def dispatch(subcommand: str, cfg: RunConfig, args=None) -> int:
    """Run ``subcommand`` with a parsed configuration; returns the exit status."""
    if subcommand not in COMMANDS:
        print(_parser().format_usage(), file=sys.stderr, end="")
        return 2
    args = args or argparse.Namespace(resume=None)
    try:
        os.makedirs(cfg.output.dir, exist_ok=True)
        summary = COMMANDS[subcommand](cfg, args)
        _write_meta(cfg.output.dir, cfg, subcommand, {"summary": summary})
    except Exception as exc:  # noqa: BLE001 - every failure becomes an error record
        record = {"error": type(exc).__name__, "message": str(exc), "command": subcommand}
        if isinstance(exc, ConfigError):
            record.update(key=exc.key, line=exc.line)
        print(json.dumps(record), file=sys.stderr)
        return 1
    print(json.dumps({"command": subcommand, "status": "ok", **summary}, default=float))
    return 0


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    args = _parser().parse_args(argv)
    try:
        cfg = _config(args)
    except (ConfigError, OSError) as exc:
        record = {"error": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, ConfigError):
            record.update(key=exc.key, line=exc.line)
        print(json.dumps(record), file=sys.stderr)
        return 1
    return dispatch(args.subcommand, cfg, args)


if __name__ == "__main__":
    sys.exit(main())
