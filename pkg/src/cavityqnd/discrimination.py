"""Telling the probe with and without a signal photon apart.

Two figures of merit: the squared overlap of the two pure probe states
(a bound on any measurement), and a homodyne threshold test on the X
quadrature. "Signal present" is declared when X falls below the cutoff.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, asdict
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy import optimize
from scipy.integrate import cumulative_trapezoid

from .errors import DomainError
from .fock import (
    DEFAULT_WINDOW_SIGMAS,
    QuadratureDensity,
    coherent_amplitudes,
    default_quadrature_axis,
    inner_product,
    quadrature_density,
)
from .phase import apply_cross_phase, profile_for

CDF_TOL = 1e-9
TABLE_N_PROBE = (10, 30, 50)
TABLE_EPSILON = (0.001, 0.01)
PROSE_EPSILON = (0.001, 0.01, 0.1)


def standard_chi(n_probe: float, coefficient: float = 0.7) -> float:
    """The working point chi = coefficient / sqrt(N_p)."""
    return coefficient / math.sqrt(n_probe)


@dataclass(frozen=True)
class DiscriminationReport:
    n_probe: float
    chi: float
    epsilon: float
    cutoff: float
    overlap_sq: float
    max_success_bound: float
    false_positive: float
    success: float
    scale: float = 1.0

    def as_dict(self):
        return asdict(self)


def probe_states(n_probe: float, chi: float, k: float = DEFAULT_WINDOW_SIGMAS):
    """(no-signal, signal) probe states: a coherent state and its phase-scattered image."""
    initial = coherent_amplitudes(n_probe, k)
    final = apply_cross_phase(initial, profile_for(initial, chi, n_probe))
    return initial, final


def overlap_probability(n_probe: float, chi: float, k: float = DEFAULT_WINDOW_SIGMAS) -> float:
    """|<psi_0|psi_1>|^2 between the probe without and with the signal."""
    if not n_probe > 0:
        raise DomainError("n_probe must be > 0")
    if chi < 0:
        raise DomainError("chi must be >= 0")
    initial, final = probe_states(n_probe, chi, k)
    return abs(inner_product(initial, final)) ** 2


def _cdf(density: QuadratureDensity, x: float, nodes=None) -> float:
    """Normalized CDF of the piecewise-linear density at ``x``."""
    xs, d = density.x_axis, density.density
    if nodes is None:
        nodes = cumulative_trapezoid(d, xs, initial=0.0)
    total = nodes[-1]
    if x <= xs[0]:
        return 0.0
    if x >= xs[-1]:
        return 1.0
    i = int(np.searchsorted(xs, x, side="right")) - 1
    h = xs[i + 1] - xs[i]
    t = x - xs[i]
    partial = d[i] * t + (d[i + 1] - d[i]) * t * t / (2.0 * h)
    return float((nodes[i] + partial) / total)


def probability_below(density: QuadratureDensity, x: float) -> float:
    return _cdf(density, x)


def cutoff_for_false_positive(no_signal_density: QuadratureDensity, epsilon: float) -> float:
    """Cutoff x_c with P(X < x_c | no signal) = epsilon."""
    if not 0.0 < epsilon < 1.0:
        raise DomainError(f"epsilon must lie in (0, 1), got {epsilon}")
    xs = no_signal_density.x_axis
    nodes = cumulative_trapezoid(no_signal_density.density, xs, initial=0.0)
    x_c = optimize.brentq(
        lambda x: _cdf(no_signal_density, x, nodes) - epsilon, xs[0], xs[-1], xtol=1e-13
    )
    if abs(_cdf(no_signal_density, x_c) - epsilon) > CDF_TOL:
        raise DomainError("cutoff search did not converge")
    return float(x_c)


def success_rate(signal_density: QuadratureDensity, cutoff: float) -> float:
    """P(X < cutoff | signal present)."""
    return _cdf(signal_density, cutoff)


def probe_densities(
    n_probe: float, chi: float, scale: float = 1.0, k: float = DEFAULT_WINDOW_SIGMAS, n_points: int = 4001
):
    """Quadrature densities of the two probe states on a shared axis."""
    initial, final = probe_states(n_probe, chi, k)
    axis = default_quadrature_axis(initial.n_max, n_points, scale)
    return (
        quadrature_density(initial, axis, scale),
        quadrature_density(final, axis, scale),
        initial,
        final,
    )


def discriminate(
    n_probe: float,
    chi: float,
    epsilons: Sequence[float] = (0.001,),
    scale: float = 1.0,
    k: float = DEFAULT_WINDOW_SIGMAS,
) -> list:
    """One report per epsilon, sharing the state construction."""
    d0, d1, initial, final = probe_densities(n_probe, chi, scale, k)
    overlap = abs(inner_product(initial, final)) ** 2
    reports = []
    for eps in epsilons:
        x_c = cutoff_for_false_positive(d0, eps)
        reports.append(
            DiscriminationReport(
                n_probe=n_probe,
                chi=chi,
                epsilon=eps,
                cutoff=x_c,
                overlap_sq=overlap,
                max_success_bound=1.0 - overlap,
                false_positive=probability_below(d0, x_c),
                success=success_rate(d1, x_c),
                scale=scale,
            )
        )
    return reports


def roc_table(
    n_probes: Iterable[float] = TABLE_N_PROBE,
    epsilons: Sequence[float] = TABLE_EPSILON,
    chi_rule: Callable[[float], float] = standard_chi,
    scale: float = 1.0,
) -> list:
    """Success rates over a grid of probe sizes and false-positive rates."""
    rows = []
    for n_p in n_probes:
        rows.extend(discriminate(n_p, chi_rule(n_p), epsilons, scale))
    return rows


def overlap_sweep(axis: str, values: Iterable[float], n_probe=None, chi=None, chi_coefficient=None):
    """Overlap samples along ``chi`` (fixed N_p) or ``n_probe``.

    For an ``n_probe`` sweep, either a fixed ``chi`` or ``chi_coefficient``
    (chi = coefficient / sqrt(N_p), default 0.7) sets the coupling.
    """
    values = list(values)
    if axis == "chi":
        if n_probe is None:
            raise DomainError("chi sweep needs n_probe")
        return [(float(c), overlap_probability(n_probe, c)) for c in values]
    if axis == "n_probe":
        if chi is None:
            coeff = 0.7 if chi_coefficient is None else chi_coefficient
            return [(float(n), overlap_probability(n, standard_chi(n, coeff))) for n in values]
        return [(float(n), overlap_probability(n, chi)) for n in values]
    raise DomainError(f"unknown sweep axis {axis!r}")


def upper_envelope(x, y):
    """Strict interior local maxima of y(x)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if y.size < 3:
        return x, y
    peak = (y[1:-1] > y[:-2]) & (y[1:-1] > y[2:])
    return x[1:-1][peak], y[1:-1][peak]


def loglog_slope(x, y) -> float:
    """Least-squares slope of log y against log x."""
    return float(np.polyfit(np.log(x), np.log(y), 1)[0])
