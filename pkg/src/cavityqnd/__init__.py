"""Cavity-enhanced non-destructive detection of a photonic time-bin qubit.

Probe-state phase evolution, phase-space and homodyne observables,
discrimination statistics, signal loss, time-bin fidelity and feasibility.
"""
from .errors import ConfigError, DomainError, TruncationError
from .fock import (
    FockVector,
    QGrid,
    QuadratureDensity,
    coherent_amplitudes,
    husimi_q,
    inner_product,
    oscillator_eigenfunctions,
    phase_spectrum,
    quadrature_density,
)
from .phase import (
    CavityParams,
    Geometry,
    PhaseProfile,
    apply_cross_phase,
    compensated_phase_profile,
    per_photon_phase,
    reflection_phase,
    steady_cavity_ratio,
)
from .discrimination import (
    DiscriminationReport,
    cutoff_for_false_positive,
    overlap_probability,
    overlap_sweep,
    roc_table,
    success_rate,
)
from .loss import (
    FidelityReport,
    LossReport,
    combined_cavity_loss,
    loss_exact_reflection,
    loss_zeta,
    multipass_loss,
    purcell_factor,
    timebin_fidelity,
)
from .feasibility import (
    FeasibilityReport,
    SweepSpec,
    f_factor,
    f_factor_geometric,
    feasibility_report,
    sweep,
)

__version__ = "0.1.0"
