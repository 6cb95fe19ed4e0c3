"""How much of a band-limited function can live outside a set?

For frequencies in the band ||xi|^2 - lam| <= 1 we compute the best constant
c with ||f|| <= c ||f||_{L2(omega)} on a periodic grid.  A thick set gives a
constant that does not depend on lam; a single interval does not.
"""
import warnings

from fracschro.bandlimit import FourierGrid, spectral_estimate_scan
from fracschro.setlib import IntervalSet, Periodic

grid = FourierGrid(64.0, 2 ** 13)
lams = [0, 10, 100, 1000]
with warnings.catch_warnings():
    warnings.simplefilter("ignore", RuntimeWarning)
    for name, omega in [("stripes [2k, 2k+1]", Periodic(2.0, (0.0, 1.0))),
                        ("interval [-1, 1]", IntervalSet([(-1.0, 1.0)]))]:
        scan = spectral_estimate_scan(omega, 1.0, 1.0, lams, grid)
        print(name)
        for row in scan.rows():
            print(f"  lam = {row['lambda']:6.0f}  bins = {row['bins']:3d}  c = {row['c_tilde']:.4g}  {row['flag']}")
        print(f"  divergence flag: {scan.divergent}\n")
