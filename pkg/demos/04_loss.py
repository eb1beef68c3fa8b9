"""Signal loss through the detuned cavity.

The cavity Purcell-enhances spontaneous emission, so the loss at the
discrimination working point depends only on eta_r and Delta/kappa. Passing
the signal m times divides the loss by m at fixed total phase.
"""
import numpy as np

from cavityqnd import CavityParams, combined_cavity_loss, loss_exact_reflection, multipass_loss
from cavityqnd.loss import alpha_series, loss_exact, loss_zeta

print("Delta/kappa  loss (eta_r = 1)  loss (eta_r = 0.4)")
for r in (1.0, 1.5, 2.0, 3.0, 4.8, 6.0):
    print(f"{r:<12} {combined_cavity_loss(1.0, 1.0, r):.4f}            {combined_cavity_loss(0.4, 1.0, r):.4f}")

print("\nm   loss per m-pass scheme (unit detuning factor, exact coefficient)")
for m in (1, 2, 5, 10, 20):
    print(f"{m:<3} {multipass_loss(m, 1.0, 1.0, 0.0)[1]:.4f}")

# Leading-order, second-order and exact absorption as kappa grows.
print("\nkappa  zeta       series     exact")
for kappa in (20.0, 80.0, 320.0):
    p = CavityParams(g=1.0, kappa=kappa, delta=10.0, gamma=1.0, gamma_r=0.0, n_atoms=100, n_probe=0)
    print(f"{kappa:<6} {loss_zeta(p):.3e}  {1 - alpha_series(p):.3e}  {loss_exact(p):.3e}")
r = loss_exact_reflection(CavityParams(g=1.0, kappa=20.0, delta=10.0, gamma=0.0, gamma_r=0.0, n_atoms=100, n_probe=0))
print(f"\nno decay: |r| = {abs(r):.15f}, arg r = {np.angle(r):.4f}")
