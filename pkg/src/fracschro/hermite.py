"""Hermite functions, Plancherel-Rotach main terms and L² masses on sets.

The normalized Hermite functions are generated by the three-term recurrence

    psi_0 = pi^(-1/4) exp(-x²/2),  psi_1 = sqrt(2) x psi_0,
    psi_{n+1} = sqrt(2/(n+1)) x psi_n - sqrt(n/(n+1)) psi_{n-1}.

The Gaussian factor is carried separately with a running exponent so that
``exp(-x²/2)`` does not underflow before the polynomial part has grown;
values far outside the oscillatory region still underflow to 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from ._quadrature import composite_gauss_legendre
from .setlib import IntervalSet, Product, normalize

__all__ = [
    "HermiteTable", "eval_hermite", "hermite_function", "iter_hermite",
    "PRDecomposition", "pr_main_term", "norm_on_set", "norm_sweep",
    "bulk_norm", "tensor_norm", "planar_gram", "PlanarGram",
    "sin2_concentration_check", "quadrature_nodes",
]

_PI_M14 = math.pi ** -0.25
_RESCALE = 1e150
_LOG_RESCALE = math.log(_RESCALE)


def iter_hermite(n_max: int, x) -> Iterator[np.ndarray]:
    """Yield ``psi_0(x), ..., psi_{n_max}(x)``."""
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("abscissas must be finite")
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    half_x2 = 0.5 * x * x
    log_scale = np.zeros_like(x)
    factor = np.exp(-half_x2)
    prev = np.zeros_like(x)
    cur = np.full_like(x, _PI_M14)
    yield cur * factor
    for n in range(n_max):
        nxt = math.sqrt(2.0 / (n + 1)) * x * cur - math.sqrt(n / (n + 1)) * prev
        prev, cur = cur, nxt
        if n % 4 == 3:
            big = np.abs(cur) > _RESCALE
            if big.any():
                cur[big] /= _RESCALE
                prev[big] /= _RESCALE
                log_scale[big] += _LOG_RESCALE
                factor[big] = np.exp(log_scale[big] - half_x2[big])
        yield cur * factor


def hermite_function(n: int, x) -> np.ndarray:
    """``psi_n(x)`` for a single index."""
    for val in iter_hermite(n, x):
        pass
    return val


@dataclass(frozen=True)
class HermiteTable:
    n_max: int
    points: np.ndarray
    values: np.ndarray  # shape (n_max + 1, len(points))


def eval_hermite(n_max: int, points) -> HermiteTable:
    """Table of ``psi_n`` for ``0 <= n <= n_max`` at the given points."""
    pts = np.atleast_1d(np.asarray(points, dtype=float))
    vals = np.empty((n_max + 1, pts.size))
    for n, row in enumerate(iter_hermite(n_max, pts)):
        vals[n] = row
    return HermiteTable(n_max, pts, vals)


# ---------------------------------------------------------------------------
# Plancherel-Rotach


def _pr_amplitude(n, theta):
    return 2 ** 0.25 / (math.sqrt(math.pi) * n ** 0.25 * np.sqrt(np.sin(theta)))


def _pr_phase(n, theta):
    return (n / 2 + 0.25) * (np.sin(2 * theta) - 2 * theta) + 0.75 * math.pi


@dataclass(frozen=True)
class PRDecomposition:
    n: int
    epsilon: float
    theta: np.ndarray
    x: np.ndarray
    main_term: np.ndarray
    remainder: np.ndarray
    psi: np.ndarray

    @property
    def scaled_remainder(self) -> np.ndarray:
        """Remainder with the main-term amplitude divided out."""
        return np.abs(self.remainder) / _pr_amplitude(self.n, self.theta)

    @property
    def sup_scaled_remainder(self) -> float:
        return float(self.scaled_remainder.max())

    @property
    def fitted_constant(self) -> float:
        """Smallest C with ``sup |scaled remainder| <= C / (n + 1)`` on this grid."""
        return (self.n + 1) * self.sup_scaled_remainder


def pr_main_term(n: int, epsilon: float, theta_grid=None) -> PRDecomposition:
    """Split ``psi_n(sqrt(2n+1) cos θ)`` into its bulk main term and remainder.

    ``theta_grid`` defaults to 4001 equispaced angles in ``[ε, π - ε]``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 < epsilon < math.pi / 2:
        raise ValueError("epsilon must lie in (0, pi/2)")
    if theta_grid is None:
        theta_grid = np.linspace(epsilon, math.pi - epsilon, 4001)
    theta = np.asarray(theta_grid, dtype=float)
    tol = 1e-12
    if np.any(theta < epsilon - tol) or np.any(theta > math.pi - epsilon + tol):
        raise ValueError("theta grid must lie in [epsilon, pi - epsilon]")
    x = math.sqrt(2 * n + 1) * np.cos(theta)
    main = _pr_amplitude(n, theta) * np.sin(_pr_phase(n, theta))
    psi = hermite_function(n, x)
    return PRDecomposition(n, epsilon, theta, x, main, psi - main, psi)


# ---------------------------------------------------------------------------
# L² masses


def _support_half_width(n: int, delta: float = 8.0) -> float:
    # beyond sqrt(2n+1) + 8 the neglected tail mass is far below 1e-14
    return math.sqrt(2 * n + 1) + delta


def quadrature_nodes(S, n: int, refine: float = 1.0, order: int = 6):
    """Composite Gauss-Legendre nodes resolving ``psi_k`` for ``k <= n`` on ``S``.

    Panels are at most ``π / (8 sqrt(2n+1))`` wide (divided by ``refine``).
    """
    X = _support_half_width(n)
    width = math.pi / math.sqrt(2 * n + 1) / 8.0 / refine
    return composite_gauss_legendre(S.clip(-X, X), width, order)


def norm_sweep(S, n_max: int, refine: float = 1.0) -> np.ndarray:
    """``||psi_n||_{L²(S)}`` for every ``0 <= n <= n_max`` in one recurrence pass."""
    x, w = quadrature_nodes(S, n_max, refine)
    out = np.zeros(n_max + 1)
    if x.size == 0:
        return out
    for n, v in enumerate(iter_hermite(n_max, x)):
        out[n] = np.dot(v * v, w)
    return np.sqrt(np.clip(out, 0.0, None))


def norm_on_set(n: int, S) -> float:
    """``||psi_n||_{L²(S)}`` by composite Gauss-Legendre quadrature."""
    if n < 0:
        raise ValueError("n must be >= 0")
    x, w = quadrature_nodes(S, n)
    if x.size == 0:
        return 0.0
    v = hermite_function(n, x)
    return math.sqrt(max(float(np.dot(v * v, w)), 0.0))


def bulk_norm(n: int, epsilon: float) -> float:
    """Mass of ``psi_n`` on ``(-sqrt(2n+1) cos ε, sqrt(2n+1) cos ε)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 < epsilon < math.pi / 2:
        raise ValueError("epsilon must lie in (0, pi/2)")
    half = math.sqrt(2 * n + 1) * math.cos(epsilon)
    return norm_on_set(n, IntervalSet([(-half, half)]))


# ---------------------------------------------------------------------------
# planar Hermite tensors


@dataclass(frozen=True)
class PlanarGram:
    """``∫_P Ψ_α Ψ_β`` over a basis of multi-indices, with its uncertainty."""

    basis: tuple
    matrix: np.ndarray
    stderr: np.ndarray | None
    method: str
    n_samples: int = 0
    seed: int | None = None
    sampler: object = None

    def lambda_min_stderr(self, vec) -> float:
        """Standard error of the quadratic form ``v^T M v`` (Monte Carlo only).

        With ``v`` the bottom eigenvector this is the first-order error of
        ``λ_min``. It ignores eigenvector mixing, so it understates the spread
        when the lowest eigenvalues cluster (by about 1.5x on cone levels).
        """
        if self.sampler is None:
            return 0.0
        return self.sampler.quadratic_form_stderr(vec)


def _basis_tables(basis, xs, ys):
    nmax = max(max(a) for a in basis)
    tx = eval_hermite(nmax, xs).values
    ty = eval_hermite(nmax, ys).values
    a1 = np.array([a[0] for a in basis])
    a2 = np.array([a[1] for a in basis])
    return tx[a1] * ty[a2]


class _DiskSampler:
    """Uniform samples on a disk (or a sector of it) covering the mass of the basis."""

    def __init__(self, P, basis, n_samples, seed, chunk=100_000):
        self.P, self.basis = P, tuple(basis)
        self.n, self.seed, self.chunk = int(n_samples), seed, chunk
        nmax = max(sum(a) for a in basis)
        self.radius = math.sqrt(2 * nmax + 2) + 6.0
        sec = P.sector()
        if sec is None:
            self.center, self.half = 0.0, math.pi
        else:
            self.center, self.half = sec
        self.area = self.half * self.radius ** 2

    def chunks(self):
        done, k = 0, 0
        while done < self.n:
            m = min(self.chunk, self.n - done)
            rng = np.random.default_rng([self.seed, k])
            r = self.radius * np.sqrt(rng.random(m))
            th = self.center + self.half * (2 * rng.random(m) - 1)
            x, y = r * np.cos(th), r * np.sin(th)
            phi = _basis_tables(self.basis, x, y)
            if self.half >= math.pi:
                phi = phi * self.P.contains(x, y)
            yield phi
            done += m
            k += 1

    def gram(self):
        K = len(self.basis)
        s1 = np.zeros((K, K))
        s2 = np.zeros((K, K))
        for phi in self.chunks():
            s1 += phi @ phi.T
            sq = phi * phi
            s2 += sq @ sq.T
        mean = s1 / self.n
        var = np.clip(s2 / self.n - mean ** 2, 0.0, None)
        return self.area * mean, self.area * np.sqrt(var / self.n)

    def quadratic_form_stderr(self, vec):
        vec = np.asarray(vec, dtype=float)
        s1 = s2 = 0.0
        for phi in self.chunks():
            q = (vec @ phi) ** 2
            s1 += q.sum()
            s2 += (q * q).sum()
        mean = s1 / self.n
        return self.area * math.sqrt(max(s2 / self.n - mean ** 2, 0.0) / self.n)


def _polar_gram(P, basis, refine=1.0, order=6):
    center, half = P.sector()
    nmax = max(sum(a) for a in basis)
    radius = math.sqrt(2 * nmax + 2) + 6.0
    k = math.sqrt(2 * nmax + 2)
    r, wr = composite_gauss_legendre([(0.0, radius)], math.pi / k / 8 / refine, order)
    t, wt = composite_gauss_legendre([(center - half, center + half)],
                                     math.pi / (nmax + 1) / 8 / refine, order)
    K = len(basis)
    M = np.zeros((K, K))
    for i in range(0, t.size, 64):
        tt, ww = t[i:i + 64], wt[i:i + 64]
        R, T = np.meshgrid(r, tt)
        W = (ww[:, None] * wr[None, :] * r[None, :]).ravel()
        phi = _basis_tables(basis, (R * np.cos(T)).ravel(), (R * np.sin(T)).ravel())
        M += (phi * W) @ phi.T
    return M


def planar_gram(P, basis, method: str | None = None, n_samples: int = 400_000,
                seed: int = 0, refine: float = 1.0) -> PlanarGram:
    """Gram matrix ``∫_P Ψ_α Ψ_β`` of planar Hermite tensors.

    ``method`` is ``"product"`` (exact factorization, product regions only),
    ``"montecarlo"`` (shared uniform samples, reports standard errors) or
    ``"polar"`` (tensor Gauss-Legendre in polar coordinates, sectors only).
    The default is ``"product"`` when possible, otherwise ``"montecarlo"``.
    """
    basis = tuple(tuple(int(v) for v in a) for a in basis)
    if not basis:
        raise ValueError("empty basis")
    if len(set(basis)) != len(basis):
        raise ValueError("basis indices must be distinct")
    if any(len(a) != 2 or min(a) < 0 for a in basis):
        raise ValueError("basis must hold nonnegative pairs")
    if method is None:
        method = "product" if isinstance(P, Product) else "montecarlo"
    if method == "product":
        if not isinstance(P, Product):
            raise ValueError("product method needs a product region")
        nx = max(a[0] for a in basis)
        ny = max(a[1] for a in basis)
        gx = gram_1d(P.x, nx, refine)
        gy = gram_1d(P.y, ny, refine)
        a1 = np.array([a[0] for a in basis])
        a2 = np.array([a[1] for a in basis])
        M = gx[np.ix_(a1, a1)] * gy[np.ix_(a2, a2)]
        return PlanarGram(basis, M, None, "product")
    if method == "montecarlo":
        sampler = _DiskSampler(P, basis, n_samples, seed)
        M, se = sampler.gram()
        return PlanarGram(basis, M, se, "montecarlo", n_samples, seed, sampler)
    if method == "polar":
        if P.sector() is None:
            raise ValueError("polar quadrature needs a sector region")
        return PlanarGram(basis, _polar_gram(P, basis, refine), None, "polar")
    raise ValueError(f"unknown method {method!r}")


def gram_1d(S, n_max: int, refine: float = 1.0) -> np.ndarray:
    """``∫_S psi_m psi_n`` for ``m, n <= n_max``."""
    x, w = quadrature_nodes(S, n_max, refine)
    if x.size == 0:
        return np.zeros((n_max + 1, n_max + 1))
    V = eval_hermite(n_max, x).values
    return (V * w) @ V.T


def tensor_norm(alpha, P, method: str | None = None, **kw) -> float:
    """``||Ψ_α||_{L²(P)}`` for a planar region (or a 1D set when ``len(alpha) == 1``)."""
    alpha = tuple(int(a) for a in alpha)
    if any(a < 0 for a in alpha):
        raise ValueError("multi-index must be nonnegative")
    if len(alpha) == 1:
        return norm_on_set(alpha[0], P)
    if isinstance(P, Product) and method in (None, "product"):
        return norm_on_set(alpha[0], P.x) * norm_on_set(alpha[1], P.y)
    g = planar_gram(P, [alpha], method=method, **kw)
    return math.sqrt(max(float(g.matrix[0, 0]), 0.0))


# ---------------------------------------------------------------------------
# rearrangement inequality for sin²


def _sin2_integral(a, b):
    return (b - a) / 2 - (math.sin(2 * b) - math.sin(2 * a)) / 4


def sin2_concentration_check(A, tol: float = 1e-12):
    """Compare ``∫_A sin²`` with ``∫_{-|A|/2}^{|A|/2} sin²`` for ``A ⊂ [-π/2, π/2]``.

    Returns ``(lhs, rhs, holds)``.
    """
    if not isinstance(A, IntervalSet):
        A = normalize(A)
    half = math.pi / 2
    if A.intervals and (A.intervals[0][0] < -half - 1e-15 or A.intervals[-1][1] > half + 1e-15):
        raise ValueError("A must lie inside [-pi/2, pi/2]")
    lhs = math.fsum(_sin2_integral(lo, hi) for lo, hi in A)
    delta = A.measure
    rhs = _sin2_integral(-delta / 2, delta / 2)
    return lhs, rhs, lhs >= rhs - tol
