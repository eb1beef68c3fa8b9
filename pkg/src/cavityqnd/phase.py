"""Cavity-enhanced AC-Stark cross phase imprinted on a stored probe.

Everything here depends on the cavity only through the coupling ratio
``chi = g**2 / (kappa * delta)`` and the mean probe photon number.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ConfigError, DomainError
from .fock import FockVector

GEOMETRY_RTOL = 1e-6


@dataclass(frozen=True)
class Geometry:
    """Cavity and mode geometry, SI units.

    ``quality_factor`` and ``mode_volume`` are derived from the finesse and
    mode dimensions when omitted, and checked against them when given.
    """

    wavelength: float
    refractive_index: float
    mode_area: float
    mode_length: float
    finesse: float
    quality_factor: Optional[float] = None
    mode_volume: Optional[float] = None

    def __post_init__(self):
        problems = self.problems()
        if problems:
            raise ConfigError(problems)
        if self.quality_factor is None:
            object.__setattr__(self, "quality_factor", self.expected_quality_factor)
        if self.mode_volume is None:
            object.__setattr__(self, "mode_volume", self.mode_area * self.mode_length)

    @property
    def expected_quality_factor(self) -> float:
        return self.finesse * 2.0 * self.mode_length / (self.wavelength / self.refractive_index)

    def problems(self) -> list:
        out = []
        for name in ("wavelength", "refractive_index", "mode_area", "mode_length", "finesse"):
            if not getattr(self, name) > 0:
                out.append(f"geometry.{name} must be > 0")
        if out:
            return out
        q = self.quality_factor
        if q is not None and not math.isclose(q, self.expected_quality_factor, rel_tol=GEOMETRY_RTOL):
            out.append(
                f"geometry.quality_factor {q:g} inconsistent with finesse/length "
                f"(expected {self.expected_quality_factor:g})"
            )
        v = self.mode_volume
        if v is not None and not math.isclose(v, self.mode_area * self.mode_length, rel_tol=GEOMETRY_RTOL):
            out.append("geometry.mode_volume must equal mode_area * mode_length")
        return out


@dataclass(frozen=True)
class CavityParams:
    """Physical parameters; all rates are angular (rad/s)."""

    g: float
    kappa: float
    delta: float
    gamma: float
    gamma_r: float
    n_atoms: float
    n_probe: float
    eta_r: float = 1.0
    geometry: Optional[Geometry] = None

    def __post_init__(self):
        problems = self.problems()
        if problems:
            raise ConfigError(problems)
        if self.n_probe > 0.1 * self.n_atoms:
            warnings.warn(
                f"stored photons {self.n_probe:g} exceed 10% of atoms {self.n_atoms:g}",
                stacklevel=2,
            )

    def problems(self) -> list:
        out = []
        for name in ("kappa", "delta"):
            if not getattr(self, name) > 0:
                out.append(f"{name} must be > 0")
        # zero coupling / zero decay are legitimate limiting cases
        for name in ("g", "gamma", "gamma_r"):
            if not getattr(self, name) >= 0:
                out.append(f"{name} must be >= 0")
        if not self.n_atoms > 0:
            out.append("n_atoms must be > 0")
        if not self.n_probe >= 0:
            out.append("n_probe must be >= 0")
        elif self.n_atoms > 0 and self.n_probe > 0.5 * self.n_atoms:
            out.append("n_probe must not exceed half of n_atoms")
        if not 0.0 <= self.eta_r <= 1.0:
            out.append("eta_r must lie in [0, 1]")
        return out

    @property
    def chi(self) -> float:
        return self.g**2 / (self.kappa * self.delta)


@dataclass(frozen=True)
class PhaseProfile:
    """Per-photon-number cross phase phi_n and reflection phase theta_n."""

    chi: float
    n_probe: float
    n_min: int
    phi: np.ndarray
    theta: np.ndarray
    compensated: bool = True

    @property
    def n_max(self) -> int:
        return self.n_min + len(self.phi) - 1

    @property
    def photon_numbers(self) -> np.ndarray:
        return np.arange(self.n_min, self.n_max + 1)


def per_photon_phase(chi: float, n_ground: float) -> float:
    """Phase per signal photon with ``n_ground`` atoms left in the ground state."""
    return 4.0 * chi / (1.0 + (2.0 * n_ground * chi) ** 2)


def steady_cavity_ratio(chi: float, n_ground: float, kappa: float) -> complex:
    """Steady-state intracavity field over input field, E / E_in."""
    if not kappa > 0:
        raise DomainError("kappa must be > 0")
    return math.sqrt(2.0 * kappa) / (kappa * (1.0 - 2j * n_ground * chi))


def reflection_phase(chi: float, n_probe: float, n):
    """theta_n = 2 atan(2 (N_p - n) chi); vectorized over ``n``."""
    return 2.0 * np.arctan(2.0 * (n_probe - np.asarray(n, dtype=float)) * chi)


def reflection_coefficient(chi: float, n_probe: float, n):
    """E_out / E_in for the compensated one-sided cavity; unit modulus."""
    u = 2.0 * (n_probe - np.asarray(n, dtype=float)) * chi
    return (1.0 + 1j * u) / (1.0 - 1j * u)


def compensated_phase_profile(
    chi: float,
    n_probe: float,
    n_min: int,
    n_max: int,
    compensated: bool = True,
    n_atoms: Optional[float] = None,
) -> PhaseProfile:
    """phi_n and theta_n over the window [n_min, n_max].

    The compensated form uses the residual detuning ``n - n_probe``. With
    ``compensated=False`` the bare offset ``n_atoms - n`` is used instead,
    which requires ``n_atoms``.
    """
    if n_max < n_min or n_min < 0:
        raise DomainError(f"invalid window [{n_min}, {n_max}]")
    if chi < 0:
        raise DomainError("chi must be >= 0")
    n = np.arange(n_min, n_max + 1, dtype=float)
    if compensated:
        offset = n - n_probe
    else:
        if n_atoms is None:
            raise DomainError("uncompensated profile needs n_atoms")
        offset = n_atoms - n
    phi = 4.0 * chi / (1.0 + (2.0 * offset * chi) ** 2)
    theta = reflection_phase(chi, n_probe, n)
    return PhaseProfile(chi, n_probe, n_min, phi, theta, compensated)


def profile_for(state: FockVector, chi: float, n_probe: float) -> PhaseProfile:
    return compensated_phase_profile(chi, n_probe, state.n_min, state.n_max)


def apply_cross_phase(state: FockVector, profile: PhaseProfile) -> FockVector:
    """c_n -> c_n exp(i n phi_n)."""
    if profile.n_min > state.n_min or profile.n_max < state.n_max:
        raise DomainError(
            f"profile window [{profile.n_min}, {profile.n_max}] does not cover "
            f"state window [{state.n_min}, {state.n_max}]"
        )
    lo = state.n_min - profile.n_min
    phi = profile.phi[lo : lo + len(state)]
    n = state.photon_numbers
    return state.with_amplitudes(state.amplitudes * np.exp(1j * n * phi))
