"""Where does a Hermite function keep its mass?

For large n the function psi_n spreads over [-sqrt(2n+1), sqrt(2n+1)] and
oscillates there with an arcsine-shaped envelope.  This script shows three
consequences.
"""
import math

import numpy as np

from fracschro.hermite import bulk_norm, norm_sweep, pr_main_term
from fracschro.setlib import IntervalSet, Periodic

# Mass on the bulk interval |x| <= sqrt(2n+1) cos(eps).
eps = math.pi / 6
print(f"bulk mass for eps = pi/6 (limit {math.sqrt(1 - 2 * eps / math.pi):.6f})")
for n in (250, 500, 1000, 2000):
    print(f"  n = {n:5d}: {bulk_norm(n, eps):.6f}")

# The oscillatory approximation inside the bulk, and how fast its error decays.
print("\nremainder of the oscillatory approximation, times (n + 1)")
for n in (50, 100, 200, 400, 800):
    print(f"  n = {n:4d}: {pr_main_term(n, eps).fitted_constant:.3f}")

# A set of density 1/3 keeps a fixed share of every psi_n; a bounded interval does not.
sparse = norm_sweep(Periodic(3.0, (0.0, 1.0)), 1500)
unit = norm_sweep(IntervalSet([(-1.0, 1.0)]), 3000)
print(f"\nmin over n <= 1500 of the mass on the period-3 stripes: {sparse.min():.4f}")
for n in (10, 100, 1000, 3000):
    print(f"  mass on [-1, 1] at n = {n:4d}: {unit[n]:.4f}")
print(f"  (decays like n^(-1/4); times n^(1/4) at n = 3000: {unit[3000] * 3000 ** 0.25:.4f})")
