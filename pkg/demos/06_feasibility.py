"""Feasibility of a rare-earth cavity implementation.

Default run parameters: g = 8 MHz, kappa = 30 MHz, Delta = 100 MHz (all
times 2 pi), eta_r = 0.5 and N_p = 6000. The report gives the f-factor, the
loss, and the homodyne success computed at a reduced photon number with
chi * sqrt(N_p) held fixed.
"""
import math

from cavityqnd import Geometry, SweepSpec, f_factor, f_factor_geometric, feasibility_report, sweep
from cavityqnd.config import RunConfig
from cavityqnd.feasibility import consistent_params

cfg = RunConfig()
rep = feasibility_report(cfg.cavity_params())
for key, value in rep.as_dict().items():
    print(f"{key:<20} {value}")

# Both forms of f agree once g, gamma_r and kappa come from one dipole moment.
geo = Geometry(wavelength=879e-9, refractive_index=2.2, mode_area=4e-12, mode_length=5e-4, finesse=2000)
p = consistent_params(1.5 * 3.33564e-30, geo, delta=2 * math.pi * 2e8, n_atoms=1e6, n_probe=6000, eta_r=0.5)
print(f"\nf from chi: {f_factor(p):.6f}   f from geometry: {f_factor_geometric(p):.6f}")

print("\nsuccess at eps = 0.001 against N_p (chi = 0.7/sqrt(N_p))")
for row in sweep(SweepSpec("n_probe", [10, 30, 50, 100, 300], "success")):
    print(f"  N_p = {row['n_probe']:<4} success = {row['success']:.4f}")
