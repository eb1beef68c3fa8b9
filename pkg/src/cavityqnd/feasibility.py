"""Implementation feasibility: the f-factor, loss budget and parameter sweeps."""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, asdict
from typing import Optional

from scipy import constants

from .discrimination import discriminate, overlap_probability
from .errors import ConfigError
from .loss import combined_cavity_loss, timebin_fidelity
from .phase import CavityParams, Geometry

THREADS_ENV = "CAVITYQND_THREADS"
DEFAULT_N_PROBE_EVAL = 2000

F_WARN = 0.7
LOSS_WARN = 0.2
LOAD_WARN = 0.1


def f_factor(params: CavityParams) -> float:
    """chi * sqrt(eta_r * N_p); about 1 is needed to discriminate."""
    return params.chi * math.sqrt(params.eta_r * params.n_probe)


def f_factor_geometric(params: CavityParams) -> float:
    """Same figure of merit from finesse, mode area and radiative width."""
    geo = params.geometry
    if geo is None:
        raise ConfigError("geometric f-factor needs a geometry block")
    return (
        1.0 / (4.0 * math.pi)
        * geo.wavelength**2 / (geo.refractive_index**2 * geo.mode_area)
        * geo.finesse * params.gamma_r / params.delta
        * math.sqrt(params.eta_r * params.n_probe)
    )


# Microscopic relations used to build self-consistent parameter sets.

def coupling_from_dipole(dipole: float, wavelength: float, mode_volume: float) -> float:
    """Single-photon coupling g = mu sqrt(omega / (2 hbar eps0 V)), rad/s."""
    omega = 2.0 * math.pi * constants.c / wavelength
    return dipole * math.sqrt(omega / (2.0 * constants.hbar * constants.epsilon_0 * mode_volume))


def radiative_rate_from_dipole(dipole: float, wavelength: float, refractive_index: float) -> float:
    """gamma_r = mu^2 k^3 / (pi eps0 hbar) with k the in-medium wave number."""
    k = 2.0 * math.pi * refractive_index / wavelength
    return dipole**2 * k**3 / (math.pi * constants.epsilon_0 * constants.hbar)


def kappa_from_finesse(geometry: Geometry) -> float:
    """Decay rate c / (2 n L F) paired with the two relations above."""
    return constants.c / (2.0 * geometry.refractive_index * geometry.mode_length * geometry.finesse)


def consistent_params(
    dipole: float,
    geometry: Geometry,
    delta: float,
    n_atoms: float,
    n_probe: float,
    eta_r: float = 1.0,
    gamma: float = 0.0,
) -> CavityParams:
    """CavityParams whose g, gamma_r and kappa all derive from one dipole and geometry."""
    return CavityParams(
        g=coupling_from_dipole(dipole, geometry.wavelength, geometry.mode_volume),
        kappa=kappa_from_finesse(geometry),
        delta=delta,
        gamma=gamma,
        gamma_r=radiative_rate_from_dipole(dipole, geometry.wavelength, geometry.refractive_index),
        n_atoms=n_atoms,
        n_probe=n_probe,
        eta_r=eta_r,
        geometry=geometry,
    )


@dataclass(frozen=True)
class FeasibilityReport:
    f: float
    f_geometric: Optional[float]
    loss: float
    success_state_level: float
    success_total: float
    epsilon: float
    n_probe_eval: float
    chi_eval: float
    warnings: tuple = ()

    def as_dict(self):
        d = asdict(self)
        d["warnings"] = list(self.warnings)
        return d


def feasibility_warnings(f, loss, n_probe, n_atoms, chi) -> tuple:
    out = []
    if chi == 0:
        out.append("chi = 0: the signal imprints no phase, no discrimination power")
    if f < F_WARN:
        out.append(f"f = {f:.3g} below {F_WARN}")
    if loss > LOSS_WARN:
        out.append(f"loss = {loss:.3g} above {LOSS_WARN}")
    if n_probe > LOAD_WARN * n_atoms:
        out.append(f"N_p/N = {n_probe / n_atoms:.3g} above {LOAD_WARN}")
    return tuple(out)


def feasibility_report(
    params: CavityParams,
    epsilon: float = 0.001,
    n_probe_eval: float = DEFAULT_N_PROBE_EVAL,
    exact_coefficient: bool = False,
    scale: float = 1.0,
) -> FeasibilityReport:
    """f, loss and success for one parameter set.

    State-level success is computed at min(N_p, n_probe_eval) photons with chi
    rescaled so that chi * sqrt(N_p) is unchanged.
    """
    f = f_factor(params)
    f_geo = f_factor_geometric(params) if params.geometry is not None else None
    loss = combined_cavity_loss(params.eta_r, params.kappa, params.delta, exact_coefficient)

    n_eval = min(params.n_probe, n_probe_eval)
    chi_eval = params.chi * math.sqrt(params.n_probe / n_eval)
    success = discriminate(n_eval, chi_eval, (epsilon,), scale)[0].success
    return FeasibilityReport(
        f=f,
        f_geometric=f_geo,
        loss=loss,
        success_state_level=success,
        success_total=success * (1.0 - loss),
        epsilon=epsilon,
        n_probe_eval=n_eval,
        chi_eval=chi_eval,
        warnings=feasibility_warnings(f, loss, params.n_probe, params.n_atoms, params.chi),
    )


# --- sweeps -------------------------------------------------------------------

AXES = ("n_probe", "chi", "delta_over_kappa", "epsilon", "m")
QUANTITIES = ("overlap_sq", "success", "loss", "fidelity", "f")

SWEEP_DEFAULTS = {
    "n_probe": 100.0,
    "chi": None,  # None -> chi_coefficient / sqrt(n_probe)
    "chi_coefficient": 0.7,
    "epsilon": 0.001,
    "eta_r": 1.0,
    "delta_over_kappa": 3.0,
    "m": 1,
    "gamma_storage": 340.0,
    "bin_separation": 1e-6,
    "exact_coefficient": False,
    "scale": 1.0,
}


@dataclass(frozen=True)
class SweepSpec:
    axis: str
    values: tuple
    quantity: str
    fixed: dict = field(default_factory=dict)

    def __post_init__(self):
        problems = []
        if self.axis not in AXES:
            problems.append(f"unknown sweep axis {self.axis!r}; expected one of {AXES}")
        if self.quantity not in QUANTITIES:
            problems.append(f"unknown sweep quantity {self.quantity!r}; expected one of {QUANTITIES}")
        unknown = set(self.fixed) - set(SWEEP_DEFAULTS)
        if unknown:
            problems.append(f"unknown fixed sweep parameters {sorted(unknown)}")
        if problems:
            raise ConfigError(problems)
        object.__setattr__(self, "values", tuple(self.values))


def _evaluate(quantity: str, p: dict) -> float:
    n_probe = p["n_probe"]
    chi = p["chi"]
    if chi is None:
        chi = p["chi_coefficient"] / math.sqrt(n_probe)
    if quantity == "overlap_sq":
        return overlap_probability(n_probe, chi)
    if quantity == "success":
        return discriminate(n_probe, chi, (p["epsilon"],), p["scale"])[0].success
    if quantity == "loss":
        m = int(p["m"])
        return combined_cavity_loss(p["eta_r"], 1.0, p["delta_over_kappa"], p["exact_coefficient"]) / m
    if quantity == "fidelity":
        return timebin_fidelity(n_probe, chi, p["gamma_storage"], p["bin_separation"]).fidelity
    if quantity == "f":
        return chi * math.sqrt(p["eta_r"] * n_probe)
    raise ConfigError(f"unknown sweep quantity {quantity!r}")


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ConfigError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None


def sweep(plan: SweepSpec, threads: Optional[int] = None) -> list:
    """Rows ``{axis: value, quantity: result}`` in axis order."""
    base = dict(SWEEP_DEFAULTS)
    base.update(plan.fixed)

    def point(value):
        p = dict(base)
        p[plan.axis] = value
        return {plan.axis: value, plan.quantity: _evaluate(plan.quantity, p)}

    threads = thread_count() if threads is None else threads
    if threads == 1 or len(plan.values) < 2:
        return [point(v) for v in plan.values]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(point, plan.values))
