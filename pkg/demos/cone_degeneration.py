"""A cone is too thin to observe the planar harmonic oscillator.

Inside a box [-R1, R1] x [-R2, R2] the quarter-plane cone |y| <= x covers a
fraction that vanishes as R2 grows, and the eigenfunctions of a fixed energy
level can hide from it more and more as the level rises.
"""
import math

from fracschro.observability import eigenspace_hautus
from fracschro.setlib import Cone, HalfLine, Product, RealLine, iterated_density

cone = Cone(math.pi / 4)
dens = iterated_density(cone, [1.0, 10.0], [1.0, 10.0, 100.0, 1000.0])
print("cone area fraction of the box (rows R1 = 1, 10):")
print(dens.ratios)

half = Product(HalfLine(0.0), RealLine())
print("\nsmallest mass of a unit eigenfunction on the region, per energy level")
print("   N   half-plane   cone (Monte Carlo)   cone (polar quadrature)")
for N in (5, 10, 20, 40):
    h, _ = eigenspace_hautus(half, N)
    mc, rep = eigenspace_hautus(cone, N, seed=1)
    pol, _ = eigenspace_hautus(cone, N, method="polar")
    print(f"  {N:2d}   {h:.6f}     {mc:.4f} +/- {rep.lambda_min_stderr:.4f}     {pol:.4f}")
