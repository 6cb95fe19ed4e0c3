"""Hautus tests, Gramians and HUM controls for the (fractional) harmonic oscillator.

States are coefficient vectors in the Hermite basis ``Ψ_α``. The oscillator
``(-Δ + |x|²)^s`` acts diagonally with eigenvalue ``(2|α| + d)^s``, so both
propagation and the time integrals inside the observability Gramian are
closed-form; only the spatial Gram ``∫_ω Ψ_α Ψ_β`` needs quadrature.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy import linalg
from scipy.integrate import trapezoid

from . import hermite
from .bandlimit import FourierField
from .setlib import Product, Set1D

__all__ = [
    "SpectrumSpec", "HermiteState", "level_basis", "total_degree_basis",
    "harmonic_propagate", "free_propagate", "HautusReport", "hautus_sequence",
    "GramReport", "spatial_gram", "eigenspace_hautus", "observability_gramian",
    "time_integral", "NotObservable", "HUMResult", "hum_control",
    "periodicity_check",
]

NOT_OBSERVABLE = 1e-14


class NotObservable(RuntimeError):
    """Raised when the Gramian is numerically singular at the chosen truncation."""

    def __init__(self, lambda_min, threshold):
        super().__init__(f"not observable at this truncation: lambda_min={lambda_min:.3e} <= {threshold:.1e}")
        self.lambda_min = lambda_min


# ---------------------------------------------------------------------------
# bases, spectra, states


def level_basis(N: int, d: int = 2):
    """Multi-indices with ``|α| = N`` (first component descending)."""
    if d == 1:
        return [(N,)]
    if d != 2:
        raise ValueError("only d = 1, 2 are supported")
    return [(N - k, k) for k in range(N + 1)]


def total_degree_basis(n_max: int, d: int = 1):
    """Multi-indices with ``|α| <= n_max``, grouped by level."""
    return [a for N in range(n_max + 1) for a in level_basis(N, d)]


@dataclass(frozen=True)
class SpectrumSpec:
    d: int = 1
    s: float = 1.0

    def __post_init__(self):
        if self.d not in (1, 2):
            raise ValueError("d must be 1 or 2")
        if not self.s > 0:
            raise ValueError("s must be positive")

    def eigenvalue(self, level):
        return (2 * np.asarray(level, dtype=float) + self.d) ** self.s

    def gap(self, n_max: int) -> float:
        ev = self.eigenvalue(np.arange(n_max + 1))
        return float(np.min(np.diff(ev))) if n_max > 0 else math.inf


@dataclass(frozen=True)
class HermiteState:
    basis: tuple
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        basis = tuple(tuple(int(v) for v in a) for a in self.basis)
        c = np.array(self.coeffs, dtype=complex)
        if c.shape != (len(basis),):
            raise ValueError("one coefficient per basis index expected")
        if len({len(a) for a in basis}) > 1:
            raise ValueError("mixed dimensions in basis")
        c.setflags(write=False)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_coeffs(cls, coeffs, d: int = 1):
        coeffs = np.asarray(coeffs, dtype=complex)
        basis = total_degree_basis(_max_level(coeffs.size, d), d)
        if len(basis) != coeffs.size:
            raise ValueError("coefficient count is not a full total-degree basis")
        return cls(basis, coeffs)

    @classmethod
    def random(cls, n_max: int, d: int = 1, seed=None):
        rng = np.random.default_rng(seed)
        basis = total_degree_basis(n_max, d)
        c = rng.standard_normal(len(basis)) + 1j * rng.standard_normal(len(basis))
        return cls(basis, c / np.linalg.norm(c))

    @property
    def d(self) -> int:
        return len(self.basis[0])

    @property
    def levels(self) -> np.ndarray:
        return np.array([sum(a) for a in self.basis])

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "basis": [list(a) for a in self.basis],
            "coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj: dict):
        coeffs = np.array([complex(re, im) for re, im in obj["coeffs"]])
        if "basis" in obj:
            return cls(obj["basis"], coeffs)
        return cls.from_coeffs(coeffs, int(obj.get("d", 1)))


def _max_level(count, d):
    if d == 1:
        return count - 1
    n = int(round((math.sqrt(8 * count + 1) - 3) / 2))
    return n


def harmonic_propagate(u: HermiteState, t: float, spec: SpectrumSpec, sign: int = 1) -> HermiteState:
    """Apply ``exp(i * sign * t * A)`` with ``A`` the fractional oscillator."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if not math.isfinite(t):
        raise ValueError("t must be finite")
    phase = np.exp(1j * sign * t * spec.eigenvalue(u.levels))
    return HermiteState(u.basis, u.coeffs * phase)


def free_propagate(f: FourierField, t: float, s: float, sign: int = 1) -> FourierField:
    """Apply ``exp(i * sign * t * (-Δ)^s)`` on the periodic grid."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if not math.isfinite(t):
        raise ValueError("t must be finite")
    phase = np.exp(1j * sign * t * np.abs(f.grid.xi) ** (2 * s))
    return FourierField(f.grid, f.coeffs * phase, band=f.band)


def periodicity_check(u: HermiteState, spec: SpectrumSpec | None = None, n_times: int = 32) -> float:
    """Largest ``||e^{i(t+π)A} u + e^{itA} u||`` over a time grid in ``[0, π]``."""
    spec = spec or SpectrumSpec(1, 1.0)
    defect = 0.0
    for t in np.linspace(0.0, math.pi, n_times):
        a = harmonic_propagate(u, t + math.pi, spec).coeffs
        b = harmonic_propagate(u, t, spec).coeffs
        defect = max(defect, float(np.linalg.norm(a + b)))
    return defect


# ---------------------------------------------------------------------------
# Hautus sequences and Gram matrices


@dataclass(frozen=True)
class HautusReport:
    norms: np.ndarray
    running_inf: np.ndarray

    @property
    def c_hat(self) -> float:
        """Hautus constant implied by the final running infimum."""
        last = float(self.running_inf[-1])
        return math.inf if last == 0 else 1 / last


def hautus_sequence(omega, n_max: int) -> HautusReport:
    """``||psi_n||_{L²(ω)}`` for ``n <= n_max`` with its running infimum."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    norms = hermite.norm_sweep(omega, n_max)
    return HautusReport(norms, np.minimum.accumulate(norms))


@dataclass(frozen=True)
class GramReport:
    matrix: np.ndarray
    basis: tuple
    omega_id: str
    lambda_min: float
    lambda_max: float
    method: str
    T: float | None = None
    s: float | None = None
    stderr: np.ndarray | None = None
    lambda_min_stderr: float = 0.0
    eigvec_min: np.ndarray | None = None
    flags: tuple = ()

    @property
    def C_T(self) -> float:
        """Observability constant estimate ``1 / λ_min``."""
        return math.inf if self.lambda_min <= 0 else 1 / self.lambda_min

    def to_json(self) -> str:
        m = self.matrix
        out = {
            "basis": [list(a) for a in self.basis],
            "matrix": [[[float(v.real), float(v.imag)] for v in row] for row in np.asarray(m, dtype=complex)],
            "lambda_min": self.lambda_min,
            "lambda_max": self.lambda_max,
            "omega_id": self.omega_id,
            "T": self.T,
            "s": self.s,
            "method": self.method,
            "stderr": None if self.stderr is None else np.asarray(self.stderr).tolist(),
            "lambda_min_stderr": self.lambda_min_stderr,
            "flags": list(self.flags),
        }
        return json.dumps(out)


def _omega_id(omega) -> str:
    try:
        return json.dumps(omega.to_json(), sort_keys=True)
    except AttributeError:
        return type(omega).__name__


def _report(M, basis, omega, method, stderr=None, T=None, s=None, se_fn=None, tol=None):
    M = 0.5 * (M + M.conj().T)
    evals, evecs = linalg.eigh(M)
    flags = []
    se_min = 0.0
    if se_fn is not None:
        se_min = se_fn(evecs[:, 0].real if np.isrealobj(M) else evecs[:, 0])
        if tol is not None and se_min > tol:
            flags.append("stderr-above-tolerance")
    return GramReport(M, tuple(basis), _omega_id(omega), float(evals[0]), float(evals[-1]),
                      method, T, s, stderr, se_min, evecs[:, 0], tuple(flags))


def _spatial_matrix(omega, basis, method=None, **kw):
    """Spatial Gram matrix with optional stderr and a λ_min stderr callback."""
    d = len(basis[0])
    if isinstance(omega, Set1D):
        if d != 1:
            raise ValueError("a one-dimensional set needs a one-dimensional basis")
        idx = np.array([a[0] for a in basis])
        G = hermite.gram_1d(omega, int(idx.max()))
        return G[np.ix_(idx, idx)], None, None, "gauss-legendre"
    if d != 2:
        raise ValueError("a planar region needs a two-dimensional basis")
    g = hermite.planar_gram(omega, basis, method=method, **kw)
    se_fn = g.lambda_min_stderr if g.method == "montecarlo" else None
    return g.matrix, g.stderr, se_fn, g.method


def spatial_gram(omega, basis, method: str | None = None, tol: float | None = 1e-2, **kw) -> GramReport:
    """``M[α, β] = ∫_ω Ψ_α Ψ_β`` over the given basis.

    Monte Carlo estimates carry entrywise standard errors and a standard error
    for the smallest eigenvalue; exceeding ``tol`` raises a flag, not an error.
    """
    basis = [tuple(int(v) for v in a) for a in basis]
    if not basis:
        raise ValueError("empty basis")
    if len(set(basis)) != len(basis):
        raise ValueError("basis indices must be distinct")
    M, se, se_fn, used = _spatial_matrix(omega, basis, method, **kw)
    return _report(M, basis, omega, used, stderr=se, se_fn=se_fn, tol=tol)


def eigenspace_hautus(omega, N: int, d: int | None = None, **kw) -> tuple[float, GramReport]:
    """Smallest ``||f||_{L²(ω)}`` over unit eigenfunctions of energy level ``N``.

    Returns the value and the underlying Gram report.
    """
    if N < 0:
        raise ValueError("N must be >= 0")
    if d is None:
        d = 1 if isinstance(omega, Set1D) else 2
    rep = spatial_gram(omega, level_basis(N, d), **kw)
    return math.sqrt(max(rep.lambda_min, 0.0)), rep


def time_integral(delta, T: float):
    """``∫_0^T exp(i Δ t) dt`` elementwise."""
    delta = np.asarray(delta, dtype=float)
    out = np.full(delta.shape, T, dtype=complex)
    nz = delta != 0
    out[nz] = np.expm1(1j * delta[nz] * T) / (1j * delta[nz])
    return out


def observability_gramian(omega, T: float, spec: SpectrumSpec, basis=None, n_max: int = 60,
                          method: str | None = None, **kw) -> GramReport:
    """Time-integrated Gramian ``G = M ∘ I(λ_β - λ_α, T)`` on a truncated basis.

    ``basis`` defaults to all ``|α| <= n_max`` in dimension ``spec.d``.
    """
    if not T > 0:
        raise ValueError("T must be positive")
    if basis is None:
        basis = total_degree_basis(n_max, spec.d)
    basis = [tuple(int(v) for v in a) for a in basis]
    M, se, _, used = _spatial_matrix(omega, basis, method, **kw)
    lam = spec.eigenvalue([sum(a) for a in basis])
    G = M * time_integral(lam[None, :] - lam[:, None], T)
    rep = _report(G, basis, omega, used, T=T, s=spec.s)
    if rep.lambda_min <= NOT_OBSERVABLE:
        rep = replace(rep, flags=rep.flags + ("not-observable",))
    return rep


# ---------------------------------------------------------------------------
# HUM


@dataclass(frozen=True)
class HUMResult:
    times: np.ndarray
    control: np.ndarray      # control coefficients, shape (n_steps + 1, basis size)
    adjoint_datum: np.ndarray
    final_state: np.ndarray
    residual: float
    gramian: GramReport

    def control_norm(self) -> float:
        """``L²(0, T)`` norm of the control by the trapezoidal rule."""
        sq = np.sum(np.abs(self.control) ** 2, axis=1)
        return math.sqrt(float(trapezoid(sq, self.times)))

    def rows(self):
        for t, row in zip(self.times, self.control):
            for k, c in enumerate(row):
                yield float(t), k, float(c.real), float(c.imag)


def hum_control(f0: HermiteState, fT: HermiteState, omega, T: float, spec: SpectrumSpec,
                n_steps: int = 512, min_lambda: float = 1e-10, **kw) -> HUMResult:
    """Minimal-norm control steering ``f0`` to ``fT`` for ``∂_t f + iAf = 1_ω u``.

    The control is ``u(t) = 1_ω e^{i(T-t)A} φ`` where ``G φ = fT - e^{-iTA} f0``.
    The residual is measured by integrating the Galerkin system driven by the
    sampled control with the trapezoidal rule on ``n_steps`` intervals.
    """
    if f0.basis != fT.basis:
        raise ValueError("initial and target states must share a basis")
    basis = list(f0.basis)
    M, _, _, _ = _spatial_matrix(omega, basis, **kw)
    lam = spec.eigenvalue(f0.levels)
    G = M * time_integral(lam[None, :] - lam[:, None], T)
    G = 0.5 * (G + G.conj().T)
    evals = linalg.eigvalsh(G)
    rep = _report(G, basis, omega, "closed-form", T=T, s=spec.s)
    if evals[0] <= min_lambda:
        raise NotObservable(float(evals[0]), min_lambda)
    free = np.exp(-1j * T * lam) * f0.coeffs
    phi = linalg.solve(G, fT.coeffs - free, assume_a="her")

    times = np.linspace(0.0, T, n_steps + 1)
    # projected control: M applied to the adjoint flow of phi
    control = (np.exp(1j * np.outer(T - times, lam)) * phi) @ M.T
    # Duhamel term sampled on the grid then integrated by trapezoids
    integrand = np.exp(-1j * np.outer(T - times, lam)) * control
    final = free + trapezoid(integrand, times, axis=0)
    scale = max(np.linalg.norm(fT.coeffs), 1e-300)
    residual = float(np.linalg.norm(final - fT.coeffs) / scale)
    return HUMResult(times, control, phi, final, residual, rep)
