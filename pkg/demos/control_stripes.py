"""Steering the harmonic oscillator from a set of stripes.

The control region is the union of [2k, 2k+1].  With eigenvalues 2n+1 the
flow is periodic up to sign with period pi, so a time horizon of pi is
enough.  We build the observability Gramian, check how its smallest
eigenvalue behaves as the truncation grows, and compute the minimal-norm
control between two random states.
"""
import math

from fracschro.observability import HermiteState, SpectrumSpec, hum_control, observability_gramian
from fracschro.setlib import Periodic

stripes = Periodic(2.0, (0.0, 1.0))
spec = SpectrumSpec(d=1, s=1.0)
for n_max in (20, 60, 120):
    rep = observability_gramian(stripes, math.pi, spec, n_max=n_max)
    print(f"N = {n_max:3d}: lambda_min = {rep.lambda_min:.6f}, observability constant {rep.C_T:.4f}")

f0 = HermiteState.random(40, seed=1)
fT = HermiteState.random(40, seed=2)
for T in (math.pi, 2.0):
    res = hum_control(f0, fT, stripes, T, spec, n_steps=512)
    print(f"T = {T:.4f}: control norm {res.control_norm():.4f}, terminal residual {res.residual:.2e}")
