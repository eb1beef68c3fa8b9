"""Command-line front end.

Each subcommand writes CSV and/or JSON into ``--out`` and exits 0; failures
print a JSON object to stderr and exit nonzero.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import warnings
from pathlib import Path

import numpy as np

from . import discrimination as disc
from .config import RunConfig, load_config, parse_decay_rate, parse_time
from .errors import ConfigError, DomainError
from .feasibility import SweepSpec, feasibility_report, sweep
from .fock import coherent_amplitudes, husimi_q, phase_spectrum
from .loss import combined_cavity_loss, loss_report, timebin_fidelity
from .phase import apply_cross_phase, profile_for
from .serialize import (
    dumps_json,
    profile_csv,
    qgrid_csv,
    quadrature_csv,
    roc_csv,
    table_csv,
    write_text,
)


class Emitter:
    def __init__(self, out_dir: Path, fmt: str):
        self.out_dir = Path(out_dir)
        self.fmt = fmt
        self.written = []

    def csv(self, name: str, text: str):
        if self.fmt in ("csv", "both"):
            self.written.append(str(write_text(self.out_dir / f"{name}.csv", text)))

    def json(self, name: str, obj):
        if self.fmt in ("json", "both"):
            self.written.append(str(write_text(self.out_dir / f"{name}.json", dumps_json(obj))))


def _linspace(start, stop, num):
    if num <= 0:
        return []
    return np.linspace(start, stop, num).tolist()


def _resolve_chi(args, n_probe, default_coefficient=None, config_chi=None):
    if getattr(args, "chi", None) is not None:
        return args.chi
    coeff = getattr(args, "chi_coefficient", None)
    if coeff is None:
        coeff = default_coefficient
    if coeff is not None:
        return coeff / math.sqrt(n_probe)
    return config_chi


# --- subcommands -------------------------------------------------------------


def cmd_qfunc(cfg: RunConfig, args, out: Emitter):
    n_probe = args.n_probe if args.n_probe is not None else cfg.n_probe
    chi = _resolve_chi(args, n_probe, config_chi=cfg.cavity_params().chi)
    initial = coherent_amplitudes(n_probe, cfg.window_sigmas)
    profile = profile_for(initial, chi, n_probe)
    state = initial if args.which == "initial" else apply_cross_phase(initial, profile)
    grid = husimi_q(state, n_points=cfg.q_points)
    px, py, pq = grid.peak()
    x0 = math.sqrt(n_probe)
    name = f"qfunc_{args.which}"
    out.csv(name, qgrid_csv(grid))
    if args.which == "final":
        out.csv("phase_profile", profile_csv(profile))
    spectrum = phase_spectrum(state)
    out.csv(f"{name}_spectrum", table_csv(("bin", "abs_dft"), [{"bin": i, "abs_dft": v} for i, v in enumerate(spectrum)]))
    out.json(name, {
        "which": args.which,
        "n_probe": n_probe,
        "chi": chi,
        "grid": {
            "x_min": grid.x_axis[0], "x_max": grid.x_axis[-1], "nx": grid.x_axis.size,
            "y_min": grid.y_axis[0], "y_max": grid.y_axis[-1], "ny": grid.y_axis.size,
        },
        "peak": {"x": px, "y": py, "q": pq},
        "q_at_initial_peak": grid.value_at(x0, 0.0),
    })


def cmd_quad(cfg: RunConfig, args, out: Emitter):
    n_probe = args.n_probe if args.n_probe is not None else 10
    chi = _resolve_chi(args, n_probe, default_coefficient=0.7)
    d0, d1, initial, final = disc.probe_densities(n_probe, chi, cfg.scale, cfg.window_sigmas, cfg.quadrature_points)
    out.csv("quad", quadrature_csv(d0.x_axis, no_signal=d0.density, signal=d1.density))
    cutoffs = []
    for eps in args.epsilon:
        x_c = disc.cutoff_for_false_positive(d0, eps)
        cutoffs.append({"epsilon": eps, "cutoff": x_c, "success": disc.success_rate(d1, x_c)})
    out.json("quad", {
        "n_probe": n_probe,
        "chi": chi,
        "quadrature_scale": cfg.quadrature_scale,
        "integral_no_signal": d0.integral(),
        "integral_signal": d1.integral(),
        "cutoffs": cutoffs,
    })


def cmd_roc(cfg: RunConfig, args, out: Emitter):
    coeff = args.chi_coefficient if args.chi_coefficient is not None else 0.7
    reports = disc.roc_table(
        args.n_probe, args.epsilon, lambda n: disc.standard_chi(n, coeff), cfg.scale
    )
    out.csv("roc", roc_csv(reports))
    out.json("roc", {"chi_coefficient": coeff, "quadrature_scale": cfg.quadrature_scale, "reports": reports})


def cmd_overlap(cfg: RunConfig, args, out: Emitter):
    values = args.values if args.values is not None else _linspace(args.start, args.stop, args.num)
    if args.axis == "chi":
        n_probe = args.n_probe if args.n_probe is not None else 300
        # chi values are given in units of 1/sqrt(N_p)
        curve = disc.overlap_sweep("chi", [v / math.sqrt(n_probe) for v in values], n_probe=n_probe)
        rows = [{"chi_sqrt_n_probe": v, "chi": c, "overlap_sq": o} for v, (c, o) in zip(values, curve)]
        out.csv("overlap", table_csv(("chi_sqrt_n_probe", "chi", "overlap_sq"), rows))
        summary = {"axis": "chi", "n_probe": n_probe, "samples": len(rows)}
    else:
        coeff = args.chi_coefficient if args.chi_coefficient is not None else 0.7
        curve = disc.overlap_sweep("n_probe", values, chi_coefficient=coeff)
        rows = [{"n_probe": n, "chi": disc.standard_chi(n, coeff), "overlap_sq": o} for n, o in curve]
        out.csv("overlap", table_csv(("n_probe", "chi", "overlap_sq"), rows))
        summary = {"axis": "n_probe", "chi_coefficient": coeff, "samples": len(rows)}
        if len(rows) >= 2:
            summary["loglog_slope"] = disc.loglog_slope([r["n_probe"] for r in rows], [r["overlap_sq"] for r in rows])
            ex, ey = disc.upper_envelope([r["n_probe"] for r in rows], [r["overlap_sq"] for r in rows])
            if ex.size >= 2:
                summary["envelope_slope"] = disc.loglog_slope(ex, ey)
    if rows:
        best = min(rows, key=lambda r: r["overlap_sq"])
        summary["minimum"] = best
    out.json("overlap", summary)


def cmd_loss(cfg: RunConfig, args, out: Emitter):
    params = cfg.cavity_params()
    exact = cfg.exact_loss_coefficient
    report = loss_report(params, args.m, exact)
    out.json("loss", report)
    ratios = _linspace(args.ratio_start, args.ratio_stop, args.num)
    rows = [
        {"delta_over_kappa": r, "combined_loss": combined_cavity_loss(params.eta_r, 1.0, r, exact)}
        for r in ratios
    ]
    out.csv("loss", table_csv(("delta_over_kappa", "combined_loss"), rows))


def cmd_fidelity(cfg: RunConfig, args, out: Emitter):
    n_probe = args.n_probe if args.n_probe is not None else cfg.n_probe
    chi = _resolve_chi(args, n_probe, default_coefficient=1.0)
    gamma = parse_decay_rate(args.gamma) if args.gamma is not None else cfg.storage_decay
    bin_sep = parse_time(args.T) if args.T is not None else cfg.bin_separation_s
    report = timebin_fidelity(n_probe, chi, gamma, bin_sep, cfg.window_sigmas)
    out.json("fidelity", {"n_probe": n_probe, "chi": chi, **report.as_dict()})


def cmd_feasibility(cfg: RunConfig, args, out: Emitter):
    report = feasibility_report(
        cfg.cavity_params(),
        epsilon=cfg.epsilon,
        n_probe_eval=cfg.n_probe_eval,
        exact_coefficient=cfg.exact_loss_coefficient,
        scale=cfg.scale,
    )
    out.json("feasibility", report)


def cmd_sweep(cfg: RunConfig, args, out: Emitter):
    plan = dict(cfg.sweep or {})
    for key in ("axis", "quantity"):
        if getattr(args, key) is not None:
            plan[key] = getattr(args, key)
    if args.values is not None:
        plan["values"] = args.values
    elif args.num is not None:
        plan["values"] = _linspace(args.start, args.stop, args.num)
    missing = [k for k in ("axis", "quantity", "values") if k not in plan]
    if missing:
        raise ConfigError([f"sweep plan is missing {k!r}" for k in missing])
    spec = SweepSpec(plan["axis"], tuple(plan["values"]), plan["quantity"], dict(plan.get("fixed") or {}))
    rows = sweep(spec)
    out.csv("sweep", table_csv((spec.axis, spec.quantity), rows))
    out.json("sweep", {"axis": spec.axis, "quantity": spec.quantity, "fixed": spec.fixed, "rows": rows})


COMMANDS = {
    "qfunc": (cmd_qfunc, "Husimi Q map of the probe before or after the signal, with its |DFT| phase spectrum."),
    "quad": (cmd_quad, "X-quadrature densities of the probe with and without the signal, and cutoffs."),
    "roc": (cmd_roc, "Homodyne success rates over probe photon numbers and false-positive rates."),
    "overlap": (cmd_overlap, "Squared overlap of the two probe states along chi or N_p."),
    "loss": (cmd_loss, "Cavity signal loss report and loss-versus-detuning curve."),
    "fidelity": (cmd_fidelity, "Time-bin qubit fidelity under storage-state decay."),
    "feasibility": (cmd_feasibility, "f-factor, loss and success budget for the configured parameters."),
    "sweep": (cmd_sweep, "Explicit one-axis parameter sweep of a derived quantity."),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="YAML run configuration")
    common.add_argument("--out", type=Path, help="output directory (default: config output_directory)")
    common.add_argument("--format", choices=("csv", "json", "both"), help="output formats")

    parser = argparse.ArgumentParser(prog="cavityqnd", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = {}
    for name, (_, help_text) in COMMANDS.items():
        p[name] = sub.add_parser(name, parents=[common], help=help_text, description=help_text)

    def chi_flags(q):
        g = q.add_mutually_exclusive_group()
        g.add_argument("--chi", type=float, help="coupling ratio g^2/(kappa Delta)")
        g.add_argument("--chi-coefficient", type=float, help="chi = coefficient / sqrt(N_p)")

    p["qfunc"].add_argument("--which", choices=("initial", "final"), default="initial")
    p["qfunc"].add_argument("--n-probe", type=float)
    chi_flags(p["qfunc"])

    p["quad"].add_argument("--n-probe", type=float, help="default 10")
    p["quad"].add_argument("--epsilon", type=float, nargs="+", default=list(disc.PROSE_EPSILON))
    chi_flags(p["quad"])

    p["roc"].add_argument("--n-probe", type=float, nargs="+", default=list(disc.TABLE_N_PROBE))
    p["roc"].add_argument("--epsilon", type=float, nargs="+", default=list(disc.TABLE_EPSILON))
    p["roc"].add_argument("--chi-coefficient", type=float, help="default 0.7")

    p["overlap"].add_argument("--axis", choices=("chi", "n_probe"), default="chi")
    p["overlap"].add_argument("--n-probe", type=float, help="fixed N_p for a chi sweep (default 300)")
    p["overlap"].add_argument("--chi-coefficient", type=float, help="chi rule for an N_p sweep (default 0.7)")
    p["overlap"].add_argument("--start", type=float, default=0.1, help="chi sweeps are in units of 1/sqrt(N_p)")
    p["overlap"].add_argument("--stop", type=float, default=2.0)
    p["overlap"].add_argument("--num", type=int, default=100)
    p["overlap"].add_argument("--values", type=float, nargs="*")

    p["loss"].add_argument("--m", type=int, default=1, help="number of passes")
    p["loss"].add_argument("--ratio-start", type=float, default=1.0)
    p["loss"].add_argument("--ratio-stop", type=float, default=6.0)
    p["loss"].add_argument("--num", type=int, default=51)

    p["fidelity"].add_argument("--gamma", help="storage decay rate with unit, e.g. '100kHz'")
    p["fidelity"].add_argument("--T", help="time-bin separation with unit, e.g. '1us'")
    p["fidelity"].add_argument("--n-probe", type=float)
    chi_flags(p["fidelity"])

    p["sweep"].add_argument("--axis")
    p["sweep"].add_argument("--quantity")
    p["sweep"].add_argument("--values", type=float, nargs="*")
    p["sweep"].add_argument("--start", type=float, default=0.0)
    p["sweep"].add_argument("--stop", type=float, default=1.0)
    p["sweep"].add_argument("--num", type=int)
    return parser


def _fail(kind: str, message: str, problems=None, code: int = 2) -> int:
    payload = {"error": kind, "message": message}
    if problems:
        payload["problems"] = list(problems)
    sys.stderr.write(json.dumps(payload) + "\n")
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            cfg = load_config(args.config) if args.config else RunConfig()
        out_dir = args.out if args.out is not None else Path(cfg.output_directory)
        emitter = Emitter(out_dir, args.format or cfg.output_format)
        COMMANDS[args.command][0](cfg, args, emitter)
        write_text(out_dir / "config.effective.yaml", cfg.to_yaml())
    except ConfigError as exc:
        return _fail("config", str(exc), exc.problems)
    except DomainError as exc:
        return _fail("domain", str(exc))
    except OSError as exc:
        return _fail("io", str(exc), code=1)
    return 0


if __name__ == "__main__":
    sys.exit(main())
