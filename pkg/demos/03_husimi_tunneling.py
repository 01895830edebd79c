"""Husimi picture of tunneling between the self-trapping points.

A coherent state at (z0, pi) is evolved for one tunneling period
T = 2 pi / dE. The location of the Husimi maximum moves to the mirror
point and back; mean-field trajectories started there never leave.

Run: python3 demos/03_husimi_tunneling.py
"""
import math

import numpy as np

from dimertunnel.meanfield import DimerParams, bjj_energy
from dimertunnel.meanfield import bjj_trajectory
from dimertunnel.quantum import (coherent_state, evolve, exact_splitting, husimi,
                                 self_trapping_point, spectrum)

p = DimerParams.from_lambda(40, 1.1, J=10.0)
p0 = self_trapping_point(p)
T = 2 * math.pi / exact_splitting(p)
print(f"N=40, Lambda=1.1, J=10: start at z0={p0.z:.3f}, tunneling period T={T:.4f} s")

traj = bjj_trajectory(p0, p.Lambda, t_end=2 * p.J * T, dt=0.01)  # tau = 2 J t
print(f"mean field: z stays in [{traj.samples[:, 0].min():.4f}, {traj.samples[:, 0].max():.4f}]")

spec = spectrum(p)
psi0 = coherent_state(p, p0)
z_axis = np.linspace(-1, 1, 61)
phi_axis = np.linspace(0, 2 * math.pi, 61)
print("\n t/T   argmax z  argmax phi   <n1>/N")
for frac in np.linspace(0, 1, 9):
    psi = evolve(psi0, spec, frac * T)
    z, phi = husimi(psi, z_axis, phi_axis).argmax()
    print(f"{frac:5.3f}   {z:+.3f}     {phi:.3f}      {psi.mean_n1() / p.N:.3f}")
