"""Band-limited fields on a periodic grid and strong-annihilation constants.

The line is truncated to ``[-X, X)`` and sampled at ``m`` points
``x_j = -X + 2Xj/m``. Fields are stored by their Fourier coefficients in FFT
order, normalized so that the coefficient 2-norm equals the L² norm of the
samples (``dx * sum |f_j|²``). Frequencies are ``ξ_k = π k / X``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import linalg

__all__ = [
    "FourierGrid", "FourierField", "BandSpec", "project_band",
    "random_bandlimited", "AnnihilationResult", "annihilating_constant",
    "ScanResult", "spectral_estimate_scan", "concentration_matrix",
    "smallest_eigpair",
]

ANNIHILATED = 1e-14
DENSE_LIMIT = 2048
BLOWUP = 1e3


@dataclass(frozen=True)
class FourierGrid:
    half_width: float = 64.0
    m: int = 2 ** 13

    def __post_init__(self):
        if self.m < 2 or self.m & (self.m - 1):
            raise ValueError("grid size must be a power of two")
        if not self.half_width > 0:
            raise ValueError("half width must be positive")

    @property
    def dx(self) -> float:
        return 2 * self.half_width / self.m

    @property
    def x(self) -> np.ndarray:
        return -self.half_width + self.dx * np.arange(self.m)

    @property
    def xi(self) -> np.ndarray:
        """Angular frequencies in FFT order."""
        return 2 * math.pi * np.fft.fftfreq(self.m, d=self.dx)


@dataclass(frozen=True)
class BandSpec:
    """Frequencies with ``| |ξ|^(2s) - λ | <= sqrt(D)``."""

    s: float
    lam: float
    D: float

    def __post_init__(self):
        if not self.s > 0:
            raise ValueError("s must be positive")
        if not self.D > 0:
            raise ValueError("D must be positive")

    def mask(self, xi) -> np.ndarray:
        return np.abs(np.abs(xi) ** (2 * self.s) - self.lam) <= math.sqrt(self.D)

    def bounds(self):
        """``(lo, hi)`` range of ``|ξ|`` in the band, or None when empty."""
        r = math.sqrt(self.D)
        if self.lam + r < 0:
            return None
        lo = max(float(self.lam) - r, 0.0) ** (1 / (2 * self.s))
        return lo, (float(self.lam) + r) ** (1 / (2 * self.s))


@dataclass(frozen=True)
class FourierField:
    grid: FourierGrid
    coeffs: np.ndarray = field(repr=False)
    band: BandSpec | None = None

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        if c.shape != (self.grid.m,):
            raise ValueError("coefficient array does not match the grid")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_samples(cls, grid: FourierGrid, samples) -> "FourierField":
        samples = np.asarray(samples, dtype=complex)
        return cls(grid, np.fft.fft(samples, norm="ortho") * math.sqrt(grid.dx))

    @property
    def samples(self) -> np.ndarray:
        return np.fft.ifft(self.coeffs, norm="ortho") / math.sqrt(self.grid.dx)

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def sample_norm(self, where=None) -> float:
        """L² norm from the samples, optionally restricted to a boolean mask."""
        f = self.samples
        if where is not None:
            f = f[where]
        return math.sqrt(self.grid.dx * float(np.vdot(f, f).real))


def project_band(f: FourierField, b: BandSpec, min_bins: int = 8) -> FourierField:
    """Zero every coefficient outside the band."""
    mask = b.mask(f.grid.xi)
    nb = int(mask.sum())
    if 0 < nb < min_bins:
        warnings.warn(f"band holds only {nb} frequency bins", RuntimeWarning, stacklevel=2)
    return FourierField(f.grid, np.where(mask, f.coeffs, 0), band=b)


def random_bandlimited(b: BandSpec, grid: FourierGrid, seed=None) -> FourierField:
    """Unit-norm field with i.i.d. complex Gaussian coefficients on the band."""
    mask = b.mask(grid.xi)
    nb = int(mask.sum())
    if nb == 0:
        raise ValueError("band is empty on this grid")
    rng = np.random.default_rng(seed)
    c = np.zeros(grid.m, dtype=complex)
    c[mask] = rng.standard_normal(nb) + 1j * rng.standard_normal(nb)
    c /= np.linalg.norm(c)
    return FourierField(grid, c, band=b)


def _indicator(omega, grid: FourierGrid) -> np.ndarray:
    return omega.contains(grid.x).astype(float)


def concentration_matrix(omega, b: BandSpec, grid: FourierGrid):
    """Compression of multiplication by ``1_ω`` to the in-band coefficients.

    Returns ``(Q, idx)`` where ``idx`` are the FFT indices of the band.
    ``Q[k, l] = (1/m) Σ_j 1_ω(x_j) exp(2πi j (l - k) / m)``.
    """
    idx = np.flatnonzero(b.mask(grid.xi))
    q = np.fft.ifft(_indicator(omega, grid))
    Q = q[(idx[None, :] - idx[:, None]) % grid.m]
    return Q, idx


def smallest_eigpair(Q, tol: float = 1e-10, maxiter: int = 200, seed: int = 0):
    """Smallest eigenpair of a Hermitian PSD matrix by inverse iteration.

    Iterates with a Cholesky factor of ``Q + σI`` for a tiny shift σ and
    finishes with a Rayleigh quotient.
    """
    n = Q.shape[0]
    sigma = 1e-13 * max(float(np.abs(np.diag(Q)).max()), 1.0)
    fac = linalg.cho_factor(Q + sigma * np.eye(n), lower=True)
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    v /= np.linalg.norm(v)
    lam = math.inf
    for _ in range(maxiter):
        w = linalg.cho_solve(fac, v)
        w /= np.linalg.norm(w)
        new = float(np.vdot(w, Q @ w).real)
        v = w
        if abs(new - lam) <= tol * max(abs(new), ANNIHILATED):
            lam = new
            break
        lam = new
    return lam, v


@dataclass(frozen=True)
class AnnihilationResult:
    lam_min: float
    c_tilde: float            # inf when numerically annihilated
    minimizer: FourierField | None
    bins: int
    band: BandSpec
    annihilated: bool
    solver: str

    @property
    def flag(self) -> str:
        return "annihilated" if self.annihilated else "ok"


def annihilating_constant(omega, b: BandSpec, grid: FourierGrid | None = None) -> AnnihilationResult:
    """Best constant ``c`` with ``||f|| <= c ||f||_{L²(ω)}`` for band-limited ``f``.

    Computed as ``1 / sqrt(λ_min)`` of the in-band concentration matrix. A
    smallest eigenvalue below 1e-14 is reported as numerically annihilated.
    """
    grid = grid or FourierGrid()
    Q, idx = concentration_matrix(omega, b, grid)
    nb = idx.size
    if nb == 0:
        raise ValueError("band is empty on this grid")
    if nb < 8:
        warnings.warn(f"band holds only {nb} frequency bins", RuntimeWarning, stacklevel=2)
    if nb <= DENSE_LIMIT:
        evals, evecs = linalg.eigh(Q, subset_by_index=[0, 0])
        lam, vec, solver = float(evals[0]), evecs[:, 0], "dense"
    else:
        try:
            lam, vec = smallest_eigpair(Q)
            solver = "inverse-power"
        except linalg.LinAlgError:
            lam, vec, solver = 0.0, None, "inverse-power"
    lam = min(max(lam, 0.0), 1.0)
    if lam < ANNIHILATED or vec is None:
        return AnnihilationResult(lam, math.inf, None, nb, b, True, solver)
    c = np.zeros(grid.m, dtype=complex)
    c[idx] = vec / np.linalg.norm(vec)
    f = FourierField(grid, c, band=b)
    return AnnihilationResult(lam, 1 / math.sqrt(lam), f, nb, b, False, solver)


@dataclass(frozen=True)
class ScanResult:
    lambdas: np.ndarray
    results: tuple
    k_hat: float
    divergent: bool

    @property
    def c_tilde(self) -> np.ndarray:
        return np.array([r.c_tilde for r in self.results])

    def rows(self):
        for lam, r in zip(self.lambdas, self.results):
            lo, hi = r.band.bounds()
            flag = "blowup" if (not r.annihilated and r.c_tilde > BLOWUP) else r.flag
            yield {"lambda": float(lam), "band_lo": lo, "band_hi": hi, "bins": r.bins,
                   "c_tilde": r.c_tilde, "flag": flag}


def spectral_estimate_scan(omega, s: float, D: float, lambda_grid, grid: FourierGrid | None = None) -> ScanResult:
    """Annihilation constants over a grid of band centres.

    ``k_hat`` is the squared maximum. The divergence flag is raised when some
    band is numerically annihilated, when a constant exceeds 1e3, or when the
    constants grow strictly along the grid by more than a factor 10 overall.
    """
    grid = grid or FourierGrid()
    lams = np.asarray(lambda_grid, dtype=float)
    results = tuple(annihilating_constant(omega, BandSpec(s, lam, D), grid) for lam in lams)
    c = np.array([r.c_tilde for r in results])
    divergent = bool(
        any(r.annihilated for r in results)
        or np.any(c > BLOWUP)
        or (c.size > 1 and np.all(np.diff(c) > 0) and c[-1] > 10 * c[0])
    )
    return ScanResult(lams, results, float(np.max(c)) ** 2, divergent)
