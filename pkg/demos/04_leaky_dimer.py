"""Atom loss from one well: two-level model versus master equation.

Starting in the non-leaking well, atoms can only be lost after tunneling
across. A two-level model built from the exact top pair (mean energy,
splitting, loss rates from <n_leak>) tracks the N-atom survival
probability of the full master equation; dropping the splitting
freezes the state in the safe well and badly underestimates loss.

Run: python3 demos/04_leaky_dimer.py
"""
import numpy as np

from dimertunnel.dissipative import (effective_two_level, survival_master_equation,
                                     survival_two_level)
from dimertunnel.meanfield import DimerParams
from dimertunnel.quantum import self_trapping_point

p = DimerParams(J=1.0, U=0.8, N=6)
gamma = 0.1
h = effective_two_level(p, gamma)
print(f"Ebar={h.Ebar:.4f}, dE={h.deltaE:.5f}, Gamma1={h.Gamma1:.4f}, Gamma2={h.Gamma2:.4f}")

ts = survival_master_equation(p, gamma, self_trapping_point(p), t_end=5 / gamma)
t = ts.times
two = survival_two_level(h, t)
zero = survival_two_level(effective_two_level(p, gamma, "zero"), t)
print("\n   t     master   two-level   dE=0")
for i in np.linspace(0, len(t) - 1, 11).astype(int):
    print(f"{t[i]:6.1f}  {ts.samples[i]:.4f}   {two[i]:.4f}      {zero[i]:.4f}")
print(f"\nmax |two-level - master| = {np.max(np.abs(two - ts.samples)):.4f}")
