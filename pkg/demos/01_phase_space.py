"""Husimi Q and the phase spectrum of a probe that has seen one signal photon.

A coherent probe with 100 photons sits at alpha = 10. After the cross phase
with chi = c / sqrt(N_p) the n-photon components pick up different phases and
the state spreads around the ring |alpha| = 10. We print Q at the original
peak and the number of lobes in |DFT(c_n)|.
"""
import math

import numpy as np

from cavityqnd import apply_cross_phase, coherent_amplitudes, husimi_q, phase_spectrum
from cavityqnd.discrimination import upper_envelope
from cavityqnd.phase import profile_for

N_P = 100

initial = coherent_amplitudes(N_P)
grid = husimi_q(initial, n_points=201)
x, y, q = grid.peak()
print(f"initial state: peak at ({x:.2f}, {y:.2f}), pi*Q = {math.pi * q:.4f}")

for coeff in (0.3, 0.5, 0.7):
    chi = coeff / math.sqrt(N_P)
    final = apply_cross_phase(initial, profile_for(initial, chi, N_P))
    q0 = husimi_q(final, [10.0], [0.0]).values[0, 0]
    spec = phase_spectrum(final)
    lobes, _ = upper_envelope(np.arange(spec.size), spec)
    print(f"chi*sqrt(N_p) = {coeff}: pi*Q(10, 0) = {math.pi * q0:.4f}, spectrum lobes = {lobes.size}")

# The ring itself: Q along the circle |alpha| = 10 for the most dispersed state.
chi = 0.7 / math.sqrt(N_P)
final = apply_cross_phase(initial, profile_for(initial, chi, N_P))
angles = np.linspace(-math.pi, math.pi, 13)
ring = [husimi_q(final, [10 * math.cos(a)], [10 * math.sin(a)]).values[0, 0] for a in angles]
print("pi*Q on the ring:", " ".join(f"{math.pi * v:.3f}" for v in ring))
