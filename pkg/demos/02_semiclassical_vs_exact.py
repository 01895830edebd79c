"""Semiclassical splittings against exact diagonalization.

Three estimates are compared at N = 40 over the self-trapping window:

* full quantization with the tunneling phase correction,
* the standard formula dE = 2J (omega/pi) exp(pi S_eps),
* the large-N closed form with its (1 - e) exponent factor.

The closed form carries no sqrt(N) prefactor, so its ratio to the exact
value drifts slowly with N (compare the two tables).

Run: python3 demos/02_semiclassical_vs_exact.py
"""
import numpy as np

from dimertunnel.errors import ValidityError
from dimertunnel.meanfield import DimerParams
from dimertunnel.quantum import exact_splitting
from dimertunnel.semiclassical import (approx_splitting_closed_form, solve_full_quantization,
                                       splitting_semiclassical, validity_boundary)

for N in (40, 160):
    L_min = validity_boundary(N) * N / (N + 1)
    print(f"\nN = {N}: semiclassics needs U N/(2J) > {L_min:.4f}")
    print(f"{'Lambda':>7} {'exact':>12} {'full/ex':>8} {'std/ex':>8} {'closed/ex':>9}")
    for L in np.linspace(L_min * 1.02, 3.0, 8):
        p = DimerParams.from_lambda(N, L, J=1.0)
        ex = exact_splitting(p)
        try:
            full = f"{solve_full_quantization(p).deltaE_direct / ex:8.3f}"
        except ValidityError:  # doublet not resolvable this close to the boundary
            full = f"{'-':>8}"
        std = splitting_semiclassical(p).deltaE
        cf = approx_splitting_closed_form(p)
        print(f"{L:7.3f} {ex:12.4e} {full} {std / ex:8.3f} {cf / ex:9.3f}")
