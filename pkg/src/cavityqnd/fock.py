"""Fock-space primitives for pure single-mode states.

States live on a truncated photon-number window ``n_min ... n_min + len - 1``.
All large-number arithmetic (coherent amplitudes, Husimi overlaps, oscillator
eigenfunctions) is carried out in the log domain or with running rescaling so
that mean photon numbers of several thousand do not overflow.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import stats
from scipy.special import gammaln

from .errors import DomainError, TruncationError

DEFAULT_WINDOW_SIGMAS = 10.0
DEFAULT_TRUNCATION_TOL = 1e-10
NORM_TOL = 1e-12

_PI_QUARTER = math.pi ** -0.25
# rescale the oscillator recurrence once values leave this band
_RESCALE_HI = 1e150


@dataclass(frozen=True)
class FockVector:
    """Normalized amplitudes on a contiguous photon-number window."""

    n_min: int
    amplitudes: np.ndarray
    truncation_deficit: float = 0.0

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.ndim != 1 or amps.size < 1:
            raise DomainError("amplitudes must be a non-empty 1-d vector")
        if self.n_min < 0:
            raise DomainError(f"n_min must be >= 0, got {self.n_min}")
        norm = float(np.sum(np.abs(amps) ** 2))
        if abs(norm - 1.0) > NORM_TOL:
            raise DomainError(f"amplitudes not normalized (sum |c|^2 = {norm!r})")
        if not 0.0 <= self.truncation_deficit < 1.0:
            raise DomainError("truncation_deficit must lie in [0, 1)")
        amps.setflags(write=False)
        object.__setattr__(self, "n_min", int(self.n_min))
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, amplitudes, n_min: int = 0) -> "FockVector":
        """Build a state from unnormalized amplitudes."""
        amps = np.asarray(amplitudes, dtype=complex)
        norm = np.linalg.norm(amps)
        if norm == 0:
            raise DomainError("cannot normalize a zero vector")
        return cls(n_min, amps / norm)

    @classmethod
    def number_state(cls, n: int) -> "FockVector":
        return cls(n, np.ones(1, dtype=complex))

    def __len__(self):
        return self.amplitudes.size

    @property
    def n_max(self) -> int:
        return self.n_min + len(self) - 1

    @property
    def photon_numbers(self) -> np.ndarray:
        return np.arange(self.n_min, self.n_max + 1)

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def mean_photon_number(self) -> float:
        return float(np.sum(self.photon_numbers * self.probabilities))

    def with_amplitudes(self, amplitudes) -> "FockVector":
        """Same window and deficit, new amplitudes (must stay normalized)."""
        return FockVector(self.n_min, amplitudes, self.truncation_deficit)


def log_factorial(n):
    """ln(n!) via log-gamma; accepts scalars or arrays."""
    return gammaln(np.asarray(n, dtype=float) + 1.0)


def coherent_window(n_probe: float, window_halfwidth_sigmas: float = DEFAULT_WINDOW_SIGMAS):
    """Photon-number window [lo, hi] spanning k standard deviations of a Poisson law."""
    k = window_halfwidth_sigmas
    spread = k * math.sqrt(n_probe)
    lo = max(0, math.floor(n_probe - spread))
    hi = math.ceil(n_probe + spread)
    return lo, hi


def coherent_amplitudes(
    n_probe: float,
    window_halfwidth_sigmas: float = DEFAULT_WINDOW_SIGMAS,
    phase: float = 0.0,
    tol: float = DEFAULT_TRUNCATION_TOL,
) -> FockVector:
    """Coherent state with mean photon number ``n_probe`` and phase ``phase``.

    Amplitudes are ``exp(-N/2) N^(n/2) / sqrt(n!) * exp(i n phase)`` evaluated
    from their logarithm. The Poisson mass outside the window is recorded as
    ``truncation_deficit``; exceeding ``tol`` raises :class:`TruncationError`.
    """
    if not n_probe >= 0:
        raise DomainError(f"mean photon number must be >= 0, got {n_probe}")
    if window_halfwidth_sigmas < 1:
        raise DomainError("window_halfwidth_sigmas must be >= 1")
    if n_probe == 0:
        return FockVector(0, np.ones(1, dtype=complex), 0.0)

    lo, hi = coherent_window(n_probe, window_halfwidth_sigmas)
    n = np.arange(lo, hi + 1)
    log_amp = -0.5 * n_probe + 0.5 * n * math.log(n_probe) - 0.5 * log_factorial(n)
    mags = np.exp(log_amp)

    # tail masses from the Poisson law directly; 1 - sum(|c|^2) loses digits
    deficit = float(stats.poisson.sf(hi, n_probe))
    if lo > 0:
        deficit += float(stats.poisson.cdf(lo - 1, n_probe))
    if deficit > tol:
        raise TruncationError(
            f"window [{lo}, {hi}] leaves probability {deficit:.3e} > {tol:.1e}; "
            "increase window_halfwidth_sigmas"
        )
    mags /= np.linalg.norm(mags)
    amps = mags * np.exp(1j * n * phase)
    return FockVector(lo, amps, deficit)


def oscillator_eigenfunctions(x, n_max: int) -> np.ndarray:
    """Normalized Hermite functions psi_0(x) ... psi_{n_max}(x).

    Returns shape ``(n_max + 1,)`` for scalar ``x`` and ``(n_max + 1, len(x))``
    otherwise. Values come from the normalized three-term recurrence with a
    running log scale, so they stay finite far inside the classical region
    where the bare Gaussian seed underflows.
    """
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty((n_max + 1, x_arr.size))
    for n, values in _eigenfunction_rows(x_arr, n_max):
        out[n] = values
    if np.ndim(x) == 0:
        return out[:, 0]
    return out


def _eigenfunction_rows(x: np.ndarray, n_max: int):
    """Yield (n, psi_n(x)) for n = 0..n_max without storing the full table."""
    # psi_n = cur * exp(log_scale); seed carries the Gaussian in log_scale
    log_scale = -0.5 * x**2 + math.log(_PI_QUARTER)
    prev = np.zeros_like(x)
    cur = np.ones_like(x)
    yield 0, _scaled(cur, log_scale)
    for n in range(n_max):
        nxt = math.sqrt(2.0 / (n + 1)) * x * cur - math.sqrt(n / (n + 1)) * prev
        prev, cur = cur, nxt
        big = np.abs(cur) > _RESCALE_HI
        if big.any():
            s = np.where(big, np.abs(cur), 1.0)
            cur = cur / s
            prev = prev / s
            log_scale = log_scale + np.log(s)
        yield n + 1, _scaled(cur, log_scale)


def _scaled(values, log_scale):
    with np.errstate(under="ignore"):
        return values * np.exp(log_scale)


def hermite_function_direct(x, n: int):
    """psi_n from the explicit Hermite polynomial; only sensible for small n."""
    from scipy.special import eval_hermite

    x = np.asarray(x, dtype=float)
    norm = 1.0 / math.sqrt(2.0**n * math.factorial(n) * math.sqrt(math.pi))
    return norm * eval_hermite(n, x) * np.exp(-0.5 * x**2)


def _window_overlap(a: FockVector, b: FockVector):
    lo = max(a.n_min, b.n_min)
    hi = min(a.n_max, b.n_max)
    return lo, hi


def inner_product(a: FockVector, b: FockVector) -> complex:
    """<a|b> summed over the intersection of the two windows."""
    lo, hi = _window_overlap(a, b)
    if hi < lo:
        return 0j
    sa = a.amplitudes[lo - a.n_min : hi - a.n_min + 1]
    sb = b.amplitudes[lo - b.n_min : hi - b.n_min + 1]
    return complex(np.vdot(sa, sb))


def phase_spectrum(state: FockVector) -> np.ndarray:
    """|DFT| of the amplitude vector with unitary normalization."""
    return np.abs(np.fft.fft(state.amplitudes, norm="ortho"))


# --- phase space -----------------------------------------------------------


@dataclass(frozen=True)
class QGrid:
    """Husimi Q sampled on a rectangular grid; ``values[iy, ix]``."""

    x_axis: np.ndarray
    y_axis: np.ndarray
    values: np.ndarray

    def value_at(self, x: float, y: float) -> float:
        """Q at the grid node nearest (x, y)."""
        ix = int(np.argmin(np.abs(self.x_axis - x)))
        iy = int(np.argmin(np.abs(self.y_axis - y)))
        return float(self.values[iy, ix])

    def peak(self):
        """(x, y, Q) at the global maximum."""
        iy, ix = np.unravel_index(int(np.argmax(self.values)), self.values.shape)
        return float(self.x_axis[ix]), float(self.y_axis[iy]), float(self.values[iy, ix])

    def integral(self) -> float:
        return float(np.trapezoid(np.trapezoid(self.values, self.x_axis, axis=1), self.y_axis))


def default_q_axis(state: FockVector, n_points: int = 401) -> np.ndarray:
    radius = math.sqrt(state.n_max + 1) + 3.0
    return np.linspace(-radius, radius, n_points)


def coherent_overlaps(state: FockVector, alpha: np.ndarray) -> np.ndarray:
    """<alpha|psi> for an array of complex phase-space points."""
    alpha = np.asarray(alpha, dtype=complex)
    flat = alpha.ravel()
    n = state.photon_numbers.astype(float)
    half_log_fact = 0.5 * log_factorial(n)
    r = np.abs(flat)
    theta = np.angle(flat)
    with np.errstate(divide="ignore"):
        log_r = np.log(r)
    out = np.empty(flat.size, dtype=complex)
    chunk = max(1, 2_000_000 // max(1, n.size))
    for start in range(0, flat.size, chunk):
        sl = slice(start, start + chunk)
        lr = log_r[sl][None, :]
        # n * log r with the 0 * (-inf) case at the origin mapped to 0
        with np.errstate(invalid="ignore"):
            n_log_r = np.where(n[:, None] == 0, 0.0, n[:, None] * lr)
        log_mag = -0.5 * r[sl][None, :] ** 2 + n_log_r - half_log_fact[:, None]
        # (alpha*)^n carries phase -n*theta
        terms = np.exp(log_mag - 1j * n[:, None] * theta[sl][None, :])
        out[sl] = state.amplitudes @ terms
    return out.reshape(alpha.shape)


def husimi_q(state: FockVector, x_axis=None, y_axis=None, n_points: int = 401) -> QGrid:
    """Q(alpha) = |<alpha|psi>|^2 / pi on the grid x_axis (Re) by y_axis (Im)."""
    if x_axis is None:
        x_axis = default_q_axis(state, n_points)
    if y_axis is None:
        y_axis = default_q_axis(state, n_points)
    x_axis = np.asarray(x_axis, dtype=float)
    y_axis = np.asarray(y_axis, dtype=float)
    if np.any(np.diff(x_axis) <= 0) or np.any(np.diff(y_axis) <= 0):
        raise DomainError("grid axes must be strictly increasing")
    alpha = x_axis[None, :] + 1j * y_axis[:, None]
    q = np.abs(coherent_overlaps(state, alpha)) ** 2 / math.pi
    return QGrid(x_axis, y_axis, q)


# --- homodyne --------------------------------------------------------------


@dataclass(frozen=True)
class QuadratureDensity:
    x_axis: np.ndarray
    density: np.ndarray
    scale: float = field(default=1.0)

    def integral(self) -> float:
        return float(np.trapezoid(self.density, self.x_axis))

    def mean(self) -> float:
        return float(np.trapezoid(self.x_axis * self.density, self.x_axis))


def default_quadrature_axis(n_max: int, n_points: int = 4001, scale: float = 1.0) -> np.ndarray:
    """Symmetric axis wide enough for every psi_n up to n_max.

    Point count is raised above ``n_points`` when needed to resolve the
    shortest fringe period of the highest Fock component.
    """
    turning = math.sqrt(2 * n_max + 1)
    half = max(2.0 * math.sqrt(2.0 * n_max), turning + 10.0)
    # density fringes oscillate at up to 2 * turning; keep >= 8 samples each
    step = math.pi / turning / 8.0
    points = max(n_points, int(math.ceil(2 * half / step)) + 1)
    return scale * np.linspace(-half, half, points)


def quadrature_amplitude(state: FockVector, x) -> np.ndarray:
    """sum_n c_n psi_n(x) in the unit-variance convention."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    amps = state.amplitudes
    # Same recurrence as _eigenfunction_rows, but the running sum is kept in
    # the current scaled units and the range check runs every `stride` steps.
    log_scale = -0.5 * x**2 + math.log(_PI_QUARTER)
    prev = np.zeros_like(x)
    cur = np.ones_like(x)
    acc = np.zeros(x.size, dtype=complex)
    if state.n_min == 0:
        acc += amps[0] * cur
    growth = math.sqrt(2.0) * float(np.max(np.abs(x), initial=0.0)) + 2.0
    stride = max(1, int(100.0 / math.log10(growth)))
    tmp = np.empty_like(x)
    for n in range(state.n_max):
        np.multiply(x, cur, out=tmp)
        tmp *= math.sqrt(2.0 / (n + 1))
        prev *= math.sqrt(n / (n + 1))
        tmp -= prev
        prev, cur, tmp = cur, tmp, prev
        if n + 1 >= state.n_min:
            acc += amps[n + 1 - state.n_min] * cur
        if (n + 1) % stride == 0:
            mag = np.abs(cur)
            big = mag > _RESCALE_HI
            if big.any():
                s = np.where(big, mag, 1.0)
                cur /= s
                prev /= s
                acc /= s
                log_scale += np.log(s)
    with np.errstate(under="ignore"):
        return acc * np.exp(log_scale)


def quadrature_density(
    state: FockVector,
    x_axis=None,
    scale: float = 1.0,
    n_points: int = 4001,
) -> QuadratureDensity:
    """Homodyne density |<x|psi>|^2 along ``x_axis``.

    ``scale`` selects the quadrature convention: 1 for the unit-variance
    oscillator variable, sqrt(2) for X = a + a^dagger. The axis is given in the
    chosen convention and the density is per unit of that axis.
    """
    if scale <= 0:
        raise DomainError("quadrature scale must be positive")
    if x_axis is None:
        x_axis = default_quadrature_axis(state.n_max, n_points, scale)
    x_axis = np.asarray(x_axis, dtype=float)
    amp = quadrature_amplitude(state, x_axis / scale)
    return QuadratureDensity(x_axis, np.abs(amp) ** 2 / scale, scale)
