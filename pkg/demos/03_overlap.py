"""Overlap of the two probe states along chi and along N_p.

The squared overlap bounds every measurement: 1 - |<psi0|psi1>|^2 is the best
possible success at vanishing false-positive rate.
"""
import math

import numpy as np

from cavityqnd.discrimination import loglog_slope, overlap_sweep, upper_envelope

N_P = 300
units = np.linspace(0.1, 2.0, 20)
print(f"chi sweep at N_p = {N_P}")
for u, (_, o) in zip(units, overlap_sweep("chi", units / math.sqrt(N_P), n_probe=N_P)):
    print(f"  chi*sqrt(N_p) = {u:.2f}  overlap^2 = {o:.2e}")

ns = np.arange(10, 1001)
x, y = map(np.array, zip(*overlap_sweep("n_probe", ns)))
ex, ey = upper_envelope(x, y)
print("\nN_p sweep with chi = 0.7/sqrt(N_p)")
print(f"  fit over all points: slope {loglog_slope(x, y):.3f}")
print(f"  fit over the {ex.size} local maxima: slope {loglog_slope(ex, ey):.3f}")
for n, o in zip(ex, ey):
    print(f"  local maximum at N_p = {int(n)}: {o:.4f}")
