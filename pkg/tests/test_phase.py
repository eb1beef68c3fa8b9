import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cavityqnd.errors import ConfigError, DomainError
from cavityqnd.fock import coherent_amplitudes, inner_product
from cavityqnd.phase import (
    CavityParams,
    Geometry,
    PhaseProfile,
    apply_cross_phase,
    compensated_phase_profile,
    per_photon_phase,
    profile_for,
    reflection_coefficient,
    reflection_phase,
    steady_cavity_ratio,
)
from cavityqnd.serialize import profile_csv


# --- per-photon phase and cavity field ---------------------------------------


def test_per_photon_phase_empty_cavity():
    assert per_photon_phase(0.013, 0) == 4 * 0.013


def test_per_photon_phase_unit_denominator_term():
    assert per_photon_phase(0.5, 1) == pytest.approx(1.0, abs=1e-15)


def test_per_photon_phase_decreases_with_ground_population():
    chi = 0.01
    values = [per_photon_phase(chi, n) for n in range(0, 10001, 50)]
    assert all(b < a for a, b in zip(values, values[1:]))


def test_steady_cavity_ratio_empty_cavity_is_real():
    kappa = 3.0
    r = steady_cavity_ratio(0.2, 0, kappa)
    assert r.imag == 0.0
    assert r.real == pytest.approx(math.sqrt(2 / kappa), rel=1e-15)


@given(st.floats(1e-4, 1.0), st.integers(0, 5000), st.floats(0.1, 100.0))
@settings(max_examples=50, deadline=None)
def test_phase_is_chi_kappa_times_intracavity_intensity(chi, n, kappa):
    # phase per photon is 2 chi kappa |E/E_in|^2; the field phase is atan(2 n chi)
    r = steady_cavity_ratio(chi, n, kappa)
    assert per_photon_phase(chi, n) == pytest.approx(2 * chi * kappa * abs(r) ** 2, rel=1e-12)
    assert cmath.phase(r) == pytest.approx(math.atan(2 * n * chi), abs=1e-12)


def test_steady_cavity_ratio_rejects_bad_kappa():
    with pytest.raises(DomainError):
        steady_cavity_ratio(0.1, 1, 0.0)


# --- compensated profile -----------------------------------------------------


def test_profile_maximum_at_probe_number():
    chi = 0.07
    prof = compensated_phase_profile(chi, 100, 50, 150)
    assert prof.phi[100 - 50] == pytest.approx(4 * chi, rel=1e-15)
    assert int(prof.photon_numbers[np.argmax(prof.phi)]) == 100


def test_profile_one_sigma_spread():
    chi = 0.7 / math.sqrt(100)
    prof = compensated_phase_profile(chi, 100, 0, 200)
    for n in (90, 110):
        assert prof.phi[n] == pytest.approx(4 * chi / 2.96, rel=1e-12)


@given(st.floats(1e-4, 0.5), st.floats(1, 5000), st.integers(0, 10000))
@settings(max_examples=50, deadline=None)
def test_compensation_shifts_ground_population(chi, n_probe, n):
    # compensated phi_n equals the bare per-photon phase with N - N_p atoms
    # replaced by the residual n - N_p
    prof = compensated_phase_profile(chi, n_probe, n, n)
    assert prof.phi[0] == pytest.approx(per_photon_phase(chi, n - n_probe), rel=1e-12)


def test_uncompensated_profile_needs_atom_number():
    with pytest.raises(DomainError):
        compensated_phase_profile(0.01, 10, 0, 20, compensated=False)
    prof = compensated_phase_profile(0.01, 10, 0, 20, compensated=False, n_atoms=1000)
    assert prof.phi[5] == pytest.approx(per_photon_phase(0.01, 995))


def test_profile_rejects_bad_window_and_chi():
    with pytest.raises(DomainError):
        compensated_phase_profile(0.1, 10, 5, 4)
    with pytest.raises(DomainError):
        compensated_phase_profile(-0.1, 10, 0, 4)


# --- applying the phase ------------------------------------------------------


@given(st.floats(2.0, 400.0), st.floats(0.0, 0.3))
@settings(max_examples=30, deadline=None)
def test_cross_phase_preserves_magnitudes(n_probe, coeff):
    s = coherent_amplitudes(n_probe)
    out = apply_cross_phase(s, profile_for(s, coeff / math.sqrt(n_probe), n_probe))
    np.testing.assert_allclose(np.abs(out.amplitudes), np.abs(s.amplitudes), rtol=0, atol=1e-15)
    assert out.n_min == s.n_min


def test_zero_phase_leaves_state_unchanged():
    s = coherent_amplitudes(30)
    out = apply_cross_phase(s, profile_for(s, 0.0, 30))
    np.testing.assert_array_equal(out.amplitudes, s.amplitudes)


def test_constant_phase_rotates_coherent_state():
    s = coherent_amplitudes(50)
    phi0 = 0.37
    flat = PhaseProfile(0.0, 50, s.n_min, np.full(len(s), phi0), np.zeros(len(s)))
    out = apply_cross_phase(s, flat)
    rotated = coherent_amplitudes(50, phase=phi0)
    np.testing.assert_allclose(out.amplitudes, rotated.amplitudes, atol=1e-14)


def test_free_space_limit():
    n_probe = 100
    chi = 0.01 / math.sqrt(n_probe)
    s = coherent_amplitudes(n_probe)
    out = apply_cross_phase(s, profile_for(s, chi, n_probe))
    rotated = coherent_amplitudes(n_probe, phase=4 * chi)
    assert abs(inner_product(rotated, out)) ** 2 > 0.999


def test_window_mismatch_is_rejected():
    s = coherent_amplitudes(100)
    narrow = compensated_phase_profile(0.07, 100, s.n_min + 1, s.n_max)
    with pytest.raises(DomainError):
        apply_cross_phase(s, narrow)


def test_wider_profile_is_sliced():
    s = coherent_amplitudes(20)
    wide = compensated_phase_profile(0.05, 20, 0, s.n_max + 10)
    exact = apply_cross_phase(s, profile_for(s, 0.05, 20))
    np.testing.assert_array_equal(apply_cross_phase(s, wide).amplitudes, exact.amplitudes)


# --- reflection phase --------------------------------------------------------


def test_reflection_phase_zero_at_probe_number():
    assert reflection_phase(0.3, 42, 42) == 0.0


@given(st.floats(1e-4, 1.0), st.floats(0, 1000), st.floats(0, 500))
@settings(max_examples=50, deadline=None)
def test_reflection_phase_antisymmetric(chi, n_probe, d):
    a = reflection_phase(chi, n_probe, n_probe + d)
    b = reflection_phase(chi, n_probe, n_probe - d)
    assert a == pytest.approx(-b, abs=1e-12)


def test_reflection_coefficient_unit_modulus_and_phase():
    rng = np.random.default_rng(7)
    chi = rng.uniform(0, 2, 10000)
    n_probe = rng.uniform(0, 1e4, 10000)
    n = rng.integers(0, 20000, 10000)
    r = reflection_coefficient(chi, n_probe, n)
    np.testing.assert_allclose(np.abs(r), 1.0, rtol=0, atol=1e-14)
    np.testing.assert_allclose(np.angle(r), reflection_phase(chi, n_probe, n), atol=1e-12)


# --- parameter types ---------------------------------------------------------


def test_cavity_params_chi():
    p = CavityParams(g=2.0, kappa=4.0, delta=5.0, gamma=0.0, gamma_r=0.0, n_atoms=1e5, n_probe=10)
    assert p.chi == pytest.approx(0.2)


def test_cavity_params_collects_all_problems():
    with pytest.raises(ConfigError) as err:
        CavityParams(g=-1, kappa=0, delta=-1, gamma=-1, gamma_r=0, n_atoms=10, n_probe=6, eta_r=2)
    assert len(err.value.problems) >= 5


def test_cavity_params_warns_on_heavy_loading():
    with pytest.warns(UserWarning):
        CavityParams(g=1, kappa=1, delta=1, gamma=0, gamma_r=0, n_atoms=1000, n_probe=200)


def test_geometry_derives_and_checks_q_and_volume():
    geo = Geometry(879e-9, 1.8, 1e-10, 1e-3, 100)
    assert geo.quality_factor == pytest.approx(100 * 2e-3 * 1.8 / 879e-9)
    assert geo.mode_volume == pytest.approx(1e-13)
    with pytest.raises(ConfigError):
        Geometry(879e-9, 1.8, 1e-10, 1e-3, 100, quality_factor=1.0)
    with pytest.raises(ConfigError):
        Geometry(879e-9, 1.8, 1e-10, 1e-3, 100, mode_volume=1.0)


def test_profile_csv_layout():
    prof = compensated_phase_profile(0.07, 100, 98, 100)
    text = profile_csv(prof)
    lines = text.split("\n")
    assert lines[0] == "n,phi_n,theta_n"
    assert lines[3].startswith("100,")
    assert text.endswith("\n") and "\r" not in text
