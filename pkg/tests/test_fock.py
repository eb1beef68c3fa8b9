import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.polynomial.hermite import hermgauss
from scipy import integrate

from cavityqnd.errors import DomainError, TruncationError
from cavityqnd.fock import (
    FockVector,
    QuadratureDensity,
    coherent_amplitudes,
    hermite_function_direct,
    husimi_q,
    inner_product,
    oscillator_eigenfunctions,
    phase_spectrum,
    quadrature_density,
)
from cavityqnd.phase import apply_cross_phase, profile_for

INV_PI = 1.0 / math.pi


def random_state(draw_amps, n_min=0):
    return FockVector.from_amplitudes(draw_amps, n_min)


complex_amps = st.lists(
    st.tuples(st.floats(-1, 1), st.floats(-1, 1)), min_size=1, max_size=30
).filter(lambda xs: sum(a * a + b * b for a, b in xs) > 1e-3)


def to_state(pairs, n_min=0):
    return FockVector.from_amplitudes([complex(a, b) for a, b in pairs], n_min)


# --- coherent amplitudes ------------------------------------------------------


def test_vacuum_is_single_entry():
    s = coherent_amplitudes(0.0)
    assert s.n_min == 0 and len(s) == 1
    assert s.amplitudes[0] == 1.0
    assert s.truncation_deficit == 0.0


def test_poisson_mean_and_mode():
    s = coherent_amplitudes(100, 10)
    # p(99) = p(100) exactly for a Poisson law with integer mean
    assert s.probabilities[100 - s.n_min] == pytest.approx(s.probabilities.max(), rel=1e-12)
    assert s.mean_photon_number() == pytest.approx(100, abs=1e-6)


def test_window_edges():
    s = coherent_amplitudes(100, 10)
    assert (s.n_min, s.n_max) == (0, 200)
    s = coherent_amplitudes(6000, 10)
    assert s.n_min == math.floor(6000 - 10 * math.sqrt(6000))
    assert s.n_max == math.ceil(6000 + 10 * math.sqrt(6000))


def test_large_mean_matches_arbitrary_precision_pmf():
    n_p = 6000
    s = coherent_amplitudes(n_p, 10)
    assert s.truncation_deficit < 1e-10
    assert np.all(np.isfinite(s.amplitudes))
    mpmath.mp.dps = 40
    picks = np.linspace(s.n_min, s.n_max, 20).astype(int)
    for n in picks:
        pmf = mpmath.exp(-n_p) * mpmath.mpf(n_p) ** n / mpmath.factorial(n)
        got = s.probabilities[n - s.n_min]
        assert got == pytest.approx(float(pmf), rel=1e-9, abs=1e-300)


def test_phase_argument():
    s = coherent_amplitudes(20, 10, phase=0.3)
    n = s.photon_numbers
    np.testing.assert_allclose(np.angle(s.amplitudes[1:] / s.amplitudes[:-1]), 0.3, atol=1e-12)
    assert n[0] == 0


def test_negative_mean_rejected():
    with pytest.raises(DomainError):
        coherent_amplitudes(-1.0)


def test_truncation_error_for_narrow_window():
    with pytest.raises(TruncationError):
        coherent_amplitudes(100, 1)


def test_single_photon_mean_needs_wider_window():
    # the Poisson tail of N_p = 1 beyond n = 11 is ~8e-10
    with pytest.raises(TruncationError):
        coherent_amplitudes(1.0, 10)
    assert coherent_amplitudes(1.0, 12).truncation_deficit < 1e-10


@given(n_p=st.floats(5, 3000), phase=st.floats(-math.pi, math.pi))
@settings(max_examples=40, deadline=None)
def test_coherent_normalized(n_p, phase):
    s = coherent_amplitudes(n_p, 10, phase)
    assert np.sum(s.probabilities) == pytest.approx(1.0, abs=1e-12)
    assert s.n_min >= 0


def test_unnormalized_vector_rejected():
    with pytest.raises(DomainError):
        FockVector(0, np.array([1.0, 1.0]))


# --- oscillator eigenfunctions ------------------------------------------------


def test_ground_state_at_origin():
    assert oscillator_eigenfunctions(0.0, 0)[0] == pytest.approx(math.pi ** -0.25, rel=1e-15)
    assert math.pi ** -0.25 == pytest.approx(0.751126, abs=1e-6)


def test_odd_functions_vanish_at_origin():
    psi = oscillator_eigenfunctions(0.0, 41)
    assert np.all(psi[1::2] == 0.0)


def test_recurrence_matches_direct_hermite():
    x = np.linspace(-6, 6, 241)
    psi = oscillator_eigenfunctions(x, 12)
    for n in range(13):
        np.testing.assert_allclose(psi[n], hermite_function_direct(x, n), atol=1e-10)


def test_orthonormality_gauss_hermite():
    # 80-node rule is exact for polynomial degree <= 159 > 2 * 50
    nodes, weights = hermgauss(80)
    psi = oscillator_eigenfunctions(nodes, 50) * np.exp(0.5 * nodes**2)
    gram = (psi * weights) @ psi.T
    np.testing.assert_allclose(gram, np.eye(51), atol=1e-8)


@pytest.mark.parametrize("n,m", [(0, 0), (7, 7), (50, 50), (3, 4), (20, 48), (49, 50)])
def test_orthonormality_adaptive_quadrature(n, m):
    f = lambda x: oscillator_eigenfunctions(x, max(n, m))[[n, m]].prod()
    val, _ = integrate.quad(f, -15, 15, limit=400, epsabs=1e-12)
    assert val == pytest.approx(float(n == m), abs=1e-8)


def test_stability_to_twenty_thousand():
    n_max = 20000
    edge = 2 * math.sqrt(2 * n_max)
    x = np.linspace(-edge, edge, 157)
    psi = oscillator_eigenfunctions(x, n_max)
    assert np.all(np.isfinite(psi))
    assert np.max(np.abs(psi)) <= math.pi ** -0.25 + 1e-12
    # inside the classical region the high orders are not underflowed to zero
    inner = np.abs(x) < 0.8 * math.sqrt(2 * n_max)
    assert np.max(np.abs(psi[n_max, inner])) > 1e-3


# --- Husimi Q -----------------------------------------------------------------


def test_vacuum_q_at_origin():
    g = husimi_q(coherent_amplitudes(0), np.array([-1.0, 0.0, 1.0]), np.array([-1.0, 0.0, 1.0]))
    assert g.value_at(0, 0) == pytest.approx(INV_PI, rel=1e-14)


def test_coherent_q_peak():
    g = husimi_q(coherent_amplitudes(100))
    px, py, pq = g.peak()
    step = g.x_axis[1] - g.x_axis[0]
    assert abs(px - 10) <= step and abs(py) <= step
    assert pq == pytest.approx(INV_PI, rel=1e-2)


def test_q_matches_closed_form_for_coherent_state():
    # |<alpha|beta>|^2 = exp(-|alpha - beta|^2)
    beta = 3.0 * np.exp(0.4j)
    # wide window so truncation does not enter at the grid corners
    s = coherent_amplitudes(9.0, 30, 0.4, tol=1e-15)
    xs = np.linspace(-6, 6, 61)
    g = husimi_q(s, xs, xs)
    alpha = xs[None, :] + 1j * xs[:, None]
    np.testing.assert_allclose(g.values, np.exp(-np.abs(alpha - beta) ** 2) / math.pi, atol=1e-12)


@pytest.mark.parametrize("n_p", [1.0, 10.0, 100.0])
def test_q_normalization(n_p):
    s = coherent_amplitudes(n_p, 12)
    assert husimi_q(s).integral() == pytest.approx(1.0, abs=1e-3)


@given(complex_amps, st.integers(0, 40))
@settings(max_examples=30, deadline=None)
def test_q_bounded(pairs, n_min):
    s = to_state(pairs, n_min)
    g = husimi_q(s, n_points=41)
    assert np.all(g.values >= 0)
    assert np.all(g.values <= INV_PI + 1e-12)


def test_dispersed_state_leaves_initial_peak():
    s0 = coherent_amplitudes(100)
    s1 = apply_cross_phase(s0, profile_for(s0, 0.7 / 10, 100))
    g = husimi_q(s1)
    assert g.value_at(10, 0) < 0.02 * INV_PI


# --- DFT phase spectrum -------------------------------------------------------


def test_real_positive_spectrum_peaks_at_dc():
    assert np.argmax(phase_spectrum(coherent_amplitudes(50))) == 0


def test_shift_theorem():
    base = coherent_amplitudes(50)
    length = len(base)
    shift = 5
    phi0 = 2 * math.pi * shift / length
    rotated = base.with_amplitudes(base.amplitudes * np.exp(1j * base.photon_numbers * phi0))
    s0, s1 = phase_spectrum(base), phase_spectrum(rotated)
    np.testing.assert_allclose(s1, np.roll(s0, shift), atol=1e-12)
    assert np.argmax(s1) == round(phi0 * length / (2 * math.pi)) % length


@given(complex_amps, st.integers(0, 100))
@settings(max_examples=50, deadline=None)
def test_parseval(pairs, n_min):
    s = to_state(pairs, n_min)
    assert np.sum(phase_spectrum(s) ** 2) == pytest.approx(1.0, abs=1e-12)


def test_dispersed_spectrum_has_several_lobes():
    s0 = coherent_amplitudes(100)
    spec = phase_spectrum(apply_cross_phase(s0, profile_for(s0, 0.07, 100)))
    ring = np.concatenate([spec[-1:], spec, spec[:1]])
    peaks = np.sum((ring[1:-1] > ring[:-2]) & (ring[1:-1] > ring[2:]) & (spec > 0.05 * spec.max()))
    assert peaks >= 3


# --- inner products -----------------------------------------------------------


def test_self_overlap():
    s = coherent_amplitudes(300, 10, 1.1)
    assert inner_product(s, s) == pytest.approx(1.0, abs=1e-12)


def test_disjoint_windows_are_orthogonal():
    a = FockVector.from_amplitudes([1, 1j, 2], 0)
    b = FockVector.from_amplitudes([1, 1], 10)
    assert inner_product(a, b) == 0


def test_partial_window_overlap():
    a = FockVector.from_amplitudes([1, 1], 3)
    b = FockVector.from_amplitudes([1, 1], 4)
    assert inner_product(a, b) == pytest.approx(0.5)


def test_inner_product_conjugate_symmetry():
    a = coherent_amplitudes(20, 10, 0.3)
    b = coherent_amplitudes(25, 10, -0.2)
    assert inner_product(a, b) == pytest.approx(np.conj(inner_product(b, a)))
    # |<alpha|beta>|^2 = exp(-|alpha - beta|^2)
    alpha = math.sqrt(20) * np.exp(0.3j)
    beta = 5.0 * np.exp(-0.2j)
    assert abs(inner_product(a, b)) ** 2 == pytest.approx(math.exp(-abs(alpha - beta) ** 2), rel=1e-9)


# --- quadrature densities -----------------------------------------------------


def test_vacuum_density():
    x = np.linspace(-8, 8, 801)
    d = quadrature_density(coherent_amplitudes(0), x)
    np.testing.assert_allclose(d.density, np.exp(-x**2) / math.sqrt(math.pi), atol=1e-15)
    assert d.integral() == pytest.approx(1.0, abs=1e-9)


def test_single_photon_density():
    x = np.linspace(-8, 8, 801)
    d = quadrature_density(FockVector.number_state(1), x)
    np.testing.assert_allclose(d.density, 2 * x**2 * np.exp(-x**2) / math.sqrt(math.pi), atol=1e-14)
    assert d.density[400] == 0.0


def test_coherent_density_is_displaced_gaussian():
    s = coherent_amplitudes(10, 30, tol=1e-15)
    d = quadrature_density(s)
    mu = math.sqrt(2 * 10)
    expected = np.exp(-((d.x_axis - mu) ** 2)) / math.sqrt(math.pi)
    np.testing.assert_allclose(d.density, expected, atol=1e-10)


def test_scale_convention_rescales_axis():
    s = coherent_amplitudes(10)
    d1 = quadrature_density(s, scale=1.0)
    d2 = quadrature_density(s, scale=math.sqrt(2))
    assert d2.mean() == pytest.approx(math.sqrt(2) * d1.mean(), rel=1e-9)
    assert d2.integral() == pytest.approx(1.0, abs=1e-6)
    assert d2.mean() == pytest.approx(2 * math.sqrt(10), rel=1e-6)


@given(complex_amps, st.integers(0, 60))
@settings(max_examples=25, deadline=None)
def test_density_integrates_to_one(pairs, n_min):
    d = quadrature_density(to_state(pairs, n_min))
    assert np.all(d.density >= 0)
    assert d.integral() == pytest.approx(1.0, abs=1e-6)


@pytest.mark.parametrize("n_p,chi", [(6000, 0.0), (6000, 1 / math.sqrt(6000)), (2000, 0.7 / math.sqrt(2000))])
def test_density_integral_large_states(n_p, chi):
    s0 = coherent_amplitudes(n_p)
    s = apply_cross_phase(s0, profile_for(s0, chi, n_p))
    d = quadrature_density(s)
    assert d.integral() == pytest.approx(1.0, abs=1e-6)


def test_high_fock_state_density_integral():
    d = quadrature_density(FockVector.number_state(10000))
    assert isinstance(d, QuadratureDensity)
    assert d.integral() == pytest.approx(1.0, abs=1e-6)
