"""Tunneling frequencies for a large condensate near the bifurcation.

With U = 2 pi x 0.063 Hz and N = 500, self-trapping sets in at
Lambda = 1 and the tunneling frequency falls off steeply above it.
Just past the bifurcation it is of order a hertz.

Run: python3 demos/05_experimental_regime.py
"""
import math

import numpy as np

from dimertunnel.errors import ValidityError
from dimertunnel.meanfield import DimerParams
from dimertunnel.quantum import exact_splitting
from dimertunnel.semiclassical import approx_splitting_closed_form, splitting_semiclassical

U, N = 2 * math.pi * 0.063, 500
print(" Lambda   exact Hz   semiclassical Hz   closed-form Hz")
for L in np.linspace(1.01, 1.2, 11):
    p = DimerParams.from_lambda(N, L, U=U)
    ex = exact_splitting(p) / (2 * math.pi)
    try:
        sc = f"{splitting_semiclassical(p).frequency:16.4e}"
    except ValidityError:
        sc = f"{'(below h/2)':>16}"
    cf = approx_splitting_closed_form(p) / (2 * math.pi)
    print(f"{L:7.3f} {ex:10.4e} {sc}   {cf:12.4e}")
