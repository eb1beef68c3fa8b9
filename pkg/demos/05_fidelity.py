"""Time-bin fidelity of the reflected signal.

Between the early and late bins a fraction 1 - exp(-gamma T) of the stored
excitation decays, which shifts the reflection phase of each photon-number
component. Decay rates here are population rates in 1/s.
"""
import math

from cavityqnd import timebin_fidelity

N_P = 6000
chi = 1 / math.sqrt(N_P)
cases = [
    ("storage state, 0.34 kHz, T = 1 us", 340.0, 1e-6),
    ("excited state, 100 kHz, T = 1 us", 1e5, 1e-6),
    ("excited state, 100 kHz, T = 0.1 us", 1e5, 1e-7),
]
for label, gamma, t in cases:
    rep = timebin_fidelity(N_P, chi, gamma, t)
    print(f"{label:<36} F = {rep.fidelity:.4f}  max dtheta = {rep.delta_theta_max:.4f}")

print("\ngamma*T   F")
for gt in (0.0, 0.001, 0.005, 0.01, 0.02, 0.05, 0.1):
    print(f"{gt:<8}  {timebin_fidelity(N_P, chi, gt, 1.0).fidelity:.4f}")
