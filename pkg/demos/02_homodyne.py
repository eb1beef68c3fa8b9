"""Homodyne discrimination of the probe with and without the signal.

The no-signal probe is a displaced Gaussian in X. We choose the cutoff that
gives a false-positive rate epsilon and read off how often the dispersed
probe lands below it.
"""
import math

from cavityqnd.discrimination import (
    cutoff_for_false_positive,
    probe_densities,
    roc_table,
    standard_chi,
    success_rate,
)

N_P = 10
chi = standard_chi(N_P)

for name, scale in (("unit variance", 1.0), ("a + a^dagger", math.sqrt(2))):
    d0, d1, _, _ = probe_densities(N_P, chi, scale)
    print(f"{name}: <X> without signal = {d0.mean():.4f}, with signal = {d1.mean():.4f}")
    for eps in (0.001, 0.01, 0.1):
        x_c = cutoff_for_false_positive(d0, eps)
        print(f"  eps = {eps:<5}  cutoff = {x_c:.4f}  success = {success_rate(d1, x_c):.4f}")

print("\nN_p  eps     success  1-|<psi0|psi1>|^2")
for r in roc_table():
    print(f"{r.n_probe:<4} {r.epsilon:<7} {r.success:.4f}   {r.max_success_bound:.4f}")
