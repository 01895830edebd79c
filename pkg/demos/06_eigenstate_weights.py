"""How many eigenstates does a self-trapped coherent state need?

At fixed Lambda = 1.025 the coherent state at the self-trapping point
overlaps mostly with the top doublet for small N, but the weight of the
two-state description decreases as N grows.

Run: python3 demos/06_eigenstate_weights.py
"""
import math

from dimertunnel.meanfield import DimerParams
from dimertunnel.quantum import self_trapping_point, top_weights

U = 2 * math.pi * 0.063
print("   N   2 states   4 states   8 states")
for N in (10, 20, 50, 100, 200, 500):
    p = DimerParams.from_lambda(N, 1.025, U=U)
    pt = self_trapping_point(p)
    w = [top_weights(p, pt, n) for n in (2, 4, 8)]
    print(f"{N:4d}   " + "   ".join(f"{x:.4f}  " for x in w))
