"""Explicit constants and time thresholds.

The universal constants in the uncertainty principles are only known to
exist, so they are inputs here (set to 2 for a readable example).
"""
from fracschro.constants import (
    SpectralBudget, free_observability_budget, kovrijkine_cube, kovrijkine_intervals,
    miller_time, resolvent_from_spectral, spectral_from_resolvent,
)

print("cube bound, gamma = 1/2, d = 2, L = b = 1:", kovrijkine_cube(0.5, 2, 1, 1, C=2).value)
print("two-interval bound, gamma = 1/2:", kovrijkine_intervals(0.5, 2, 1, 1, C=2).value)
print("time threshold for k = 3, D = 4:", miller_time(SpectralBudget(3, 4)))

conv = resolvent_from_spectral(SpectralBudget(1, 1), 1.0)
print("resolvent constants from k = D = 1, eps = 1:", conv.budget, "threshold", round(conv.time_threshold, 4))
back = spectral_from_resolvent(conv.budget, 0.5 / conv.budget.M)
print("and back again at D = 1/(2M):", back)

d_const, T0 = free_observability_budget(1, 1, 1, 1, C=2, C_prime=2)
print(f"free Schrodinger budget: k = {d_const.value:.0f}, time threshold {T0.value:.3f}")
